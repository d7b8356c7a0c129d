// Command-line front end. Everything goes through the C interface in
// retorsion.h; this file only parses flags, moves strings around, and writes
// output atomically.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "retorsion.h"

namespace {

std::string jesc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

[[noreturn]] void die(int exit_code, const char* kind, const std::string& message) {
    std::fprintf(stderr, "{\"error\":{\"code\":%d,\"kind\":\"%s\",\"message\":\"%s\"}}\n",
                 exit_code, kind, jesc(message).c_str());
    std::exit(exit_code);
}

[[noreturn]] void die_config(const std::string& message) { die(2, "config", message); }
[[noreturn]] void die_compute(const std::string& message) { die(1, "computation", message); }

// 2 for input/argument problems, 1 for failed computations
[[noreturn]] void die_status(rt_status st) {
    if (st == RT_ERR_COMPUTE) die_compute(rt_last_error());
    die_config(rt_last_error());
}

void check(rt_status st) {
    if (st != RT_OK) die_status(st);
}

// literal value, or @path for file contents
std::string load_arg(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1), std::ios::binary);
    if (!in) die_config("cannot read " + arg.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& payload, const std::string& output_path) {
    if (output_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        if (payload.empty() || payload.back() != '\n') std::fputc('\n', stdout);
        return;
    }
    std::string tmp = output_path + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) die(1, "io", "cannot open " + tmp);
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!out) die(1, "io", "short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), output_path.c_str()) != 0) {
        std::remove(tmp.c_str());
        die(1, "io", "cannot move output into place at " + output_path);
    }
}

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { rt_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

struct OwnedModel {
    rt_model* m = nullptr;
    ~OwnedModel() { rt_model_free(m); }
};

rt_model* make_model(const std::string& geometry_arg, OwnedModel& guard) {
    check(rt_model_from_json(load_arg(geometry_arg).c_str(), &guard.m));
    return guard.m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regularized spectral invariants on model geometries"};
    app.require_subcommand(1);
    app.footer("Geometry arguments take inline JSON or @file. RETORSION_THREADS caps the\n"
               "continuation worker count. Exit codes: 0 ok, 1 computation error, 2 bad "
               "config.");

    std::string geometry, output, format;
    int degree = 0;
    double tolerance = 0.0;

    auto add_common = [&](CLI::App* cmd, const char* default_format) {
        cmd->add_option("--output", output, "write the result to this path (atomic)");
        cmd->add_option("--format", format, std::string("output format, default ") +
                                                default_format);
    };
    auto format_must_be = [&](const char* required) {
        if (!format.empty() && format != required)
            die_config(std::string("this command emits ") + required + " only");
    };

    // torsion
    auto* torsion = app.add_subcommand("torsion", "analytic torsion of one geometry");
    torsion->add_option("--geometry", geometry, "geometry descriptor JSON or @file")
        ->required();
    add_common(torsion, "json");
    torsion->callback([&] {
        format_must_be("json");
        OwnedModel m;
        OwnedString out;
        check(rt_torsion_json(make_model(geometry, m), &out.s));
        emit(out.str(), output);
    });

    // zeta
    auto* zeta = app.add_subcommand("zeta", "spectral zeta data in one degree");
    std::vector<double> s_points;
    zeta->add_option("--geometry", geometry, "geometry descriptor JSON or @file")->required();
    zeta->add_option("--degree", degree, "form degree, default 0");
    zeta->add_option("--tolerance", tolerance, "continuation accuracy, default 1e-8");
    zeta->add_option("--s", s_points, "evaluation points (repeatable)");
    add_common(zeta, "json");
    zeta->callback([&] {
        format_must_be("json");
        OwnedModel m;
        OwnedString out;
        double tol = tolerance > 0.0 ? tolerance : 1e-8;
        check(rt_zeta_report_json(make_model(geometry, m), degree,
                                  s_points.empty() ? nullptr : s_points.data(),
                                  static_cast<int>(s_points.size()), tol, &out.s));
        emit(out.str(), output);
    });

    // heat-trace
    auto* heat = app.add_subcommand("heat-trace", "trace table against the declared expansion");
    double t_min = std::pow(2.0, -10), t_max = 16.0;
    int points = 15;
    std::vector<double> t_explicit;
    heat->add_option("--geometry", geometry, "geometry descriptor JSON or @file")->required();
    heat->add_option("--degree", degree, "form degree, default 0");
    heat->add_option("--t-min", t_min, "geometric grid start, default 2^-10");
    heat->add_option("--t-max", t_max, "geometric grid end, default 16");
    heat->add_option("--points", points, "geometric grid size, default 15");
    heat->add_option("--t", t_explicit, "explicit grid points instead (repeatable)");
    add_common(heat, "csv");
    heat->callback([&] {
        format_must_be("csv");
        std::vector<double> grid = t_explicit;
        if (grid.empty()) {
            if (!(t_min > 0.0) || !(t_max >= t_min)) die_config("need 0 < t-min <= t-max");
            if (points < 1) die_config("need at least one grid point");
            if (points == 1) {
                grid.push_back(t_min);
            } else {
                double q = std::pow(t_max / t_min, 1.0 / (points - 1));
                for (int i = 0; i < points; ++i) grid.push_back(t_min * std::pow(q, i));
            }
        }
        OwnedModel m;
        OwnedString out;
        check(rt_trace_table_csv(make_model(geometry, m), degree, grid.data(),
                                 static_cast<int>(grid.size()), &out.s));
        emit(out.str(), output);
    });

    // regint
    auto* regint = app.add_subcommand("regint", "regularized integral over (0, infinity)");
    std::string request, expr, at_zero, at_infinity;
    double split = 0.0;
    regint->add_option("--request", request, "full request JSON or @file");
    regint->add_option("--expr", expr, "integrand in x");
    regint->add_option("--at-zero", at_zero, "expansion at 0 as JSON or @file");
    regint->add_option("--at-infinity", at_infinity, "expansion at infinity as JSON or @file");
    regint->add_option("--split", split, "split point, default 1");
    regint->add_option("--tolerance", tolerance, "quadrature accuracy, default 1e-12");
    add_common(regint, "json");
    regint->callback([&] {
        format_must_be("json");
        std::string req;
        if (!request.empty()) {
            req = load_arg(request);
        } else {
            if (expr.empty() || at_zero.empty() || at_infinity.empty())
                die_config("need --request, or --expr with --at-zero and --at-infinity");
            std::ostringstream ss;
            ss << "{\"expr\":\"" << jesc(expr) << "\",\"at_zero\":" << load_arg(at_zero)
               << ",\"at_infinity\":" << load_arg(at_infinity);
            if (split > 0.0) ss << ",\"split\":" << split;
            if (tolerance > 0.0) ss << ",\"tolerance\":" << tolerance;
            ss << "}";
            req = ss.str();
        }
        OwnedString out;
        check(rt_regint_run_json(req.c_str(), &out.s));
        emit(out.str(), output);
    });

    // indexset
    auto* indexset = app.add_subcommand("indexset", "index set arithmetic, text in and out");
    std::string op;
    std::vector<std::string> operands;
    indexset->add_option("op", op, "eunion | union | msum | shift | pushforward")->required();
    indexset->add_option("args", operands, "operands")->required();
    indexset->add_option("--output", output, "write the result to this path (atomic)");
    indexset->callback([&] {
        std::vector<const char*> argv_c;
        argv_c.reserve(operands.size());
        for (const auto& a : operands) argv_c.push_back(a.c_str());
        OwnedString out;
        check(rt_indexset_op(op.c_str(), argv_c.data(), static_cast<int>(argv_c.size()),
                             &out.s));
        emit(out.str(), output);
    });

    // glue
    auto* glue = app.add_subcommand("glue", "cut-circle gluing report");
    double length = 0.0;
    glue->add_option("--length", length, "half length L; the glued circle has length 2L")
        ->required();
    glue->add_option("--tolerance", tolerance, "ratio tolerance, default 1e-6");
    add_common(glue, "json");
    glue->callback([&] {
        format_must_be("json");
        OwnedString out;
        check(rt_glue_circle_json(length, tolerance > 0.0 ? tolerance : 1e-6, &out.s));
        emit(out.str(), output);
    });

    // suite
    auto* suite = app.add_subcommand("suite", "run the verification battery");
    add_common(suite, "json");
    suite->callback([&] {
        format_must_be("json");
        OwnedString out;
        int failures = 0;
        check(rt_suite_json(&out.s, &failures));
        emit(out.str(), output);
        if (failures > 0) die_compute(std::to_string(failures) + " criteria failed");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::puts(app.help().c_str());
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        std::puts(app.help("", CLI::AppFormatMode::All).c_str());
        return 0;
    } catch (const CLI::ParseError& e) {
        die_config(e.what());
    }
    return 0;
}
