#pragma once

#include <string>
#include <vector>

namespace retorsion {

// Deterministic JSON assembly: keys are emitted in insertion order and
// doubles through %.17g, so identical inputs give identical bytes.
std::string json_escape(const std::string& s);
std::string json_double(double v);

class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& s);
    JsonWriter& value(const char* s);
    JsonWriter& raw(const std::string& fragment);

    const std::string& str() const { return out_; }

private:
    void separate();

    std::string out_;
    std::vector<char> state_;  // 'o' fresh object, 'O' continuing, 'a'/'A' arrays
};

}  // namespace retorsion
