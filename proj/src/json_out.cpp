#include "retorsion/json_out.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace retorsion {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

std::string json_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in JSON output");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void JsonWriter::separate() {
    if (state_.empty()) return;
    char& s = state_.back();
    if (s == 'A') out_ += ',';
    if (s == 'a') s = 'A';
}

JsonWriter& JsonWriter::begin_object() {
    separate();
    out_ += '{';
    state_.push_back('o');
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    if (state_.empty() || (state_.back() != 'o' && state_.back() != 'O'))
        throw std::logic_error("mismatched end_object");
    out_ += '}';
    state_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separate();
    out_ += '[';
    state_.push_back('a');
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    if (state_.empty() || (state_.back() != 'a' && state_.back() != 'A'))
        throw std::logic_error("mismatched end_array");
    out_ += ']';
    state_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    if (state_.empty() || (state_.back() != 'o' && state_.back() != 'O'))
        throw std::logic_error("key outside an object");
    if (state_.back() == 'O') out_ += ',';
    state_.back() = 'O';
    out_ += '"';
    out_ += json_escape(k);
    out_ += "\":";
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separate();
    out_ += json_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    separate();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separate();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
    separate();
    out_ += '"';
    out_ += json_escape(s);
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::raw(const std::string& fragment) {
    separate();
    out_ += fragment;
    return *this;
}

}  // namespace retorsion
