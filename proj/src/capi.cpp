#include "retorsion.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "retorsion/acceptance.hpp"
#include "retorsion/geometry_json.hpp"
#include "retorsion/gluing.hpp"
#include "retorsion/reports.hpp"
#include "retorsion/spectra.hpp"
#include "retorsion/zeta.hpp"

using namespace retorsion;

struct rt_model {
    GeometryDesc desc;
    ModelPtr model;
};

namespace {

thread_local std::string g_last_error;

rt_status fail(rt_status code, const char* msg) {
    g_last_error = msg;
    return code;
}

// Exceptions -> status codes. parse_input marks calls whose string argument
// is a document, where a bad argument means unparseable input.
template <typename Fn>
rt_status guarded(bool parse_input, Fn&& fn) {
    try {
        fn();
        return RT_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return parse_input ? RT_ERR_PARSE : RT_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return RT_ERR_COMPUTE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RT_ERR_COMPUTE;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* rt_version(void) { return "1.0.0"; }

const char* rt_last_error(void) { return g_last_error.c_str(); }

void rt_string_free(char* s) { std::free(s); }

rt_status rt_model_from_json(const char* geometry_json, rt_model** out) {
    if (!geometry_json || !out) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(true, [&] {
        GeometryDesc d = parse_geometry(geometry_json);
        ModelPtr m = build_model(d);
        *out = new rt_model{std::move(d), std::move(m)};
    });
}

void rt_model_free(rt_model* m) { delete m; }

rt_status rt_model_dim(const rt_model* m, int* out) {
    if (!m || !out) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    *out = m->model->dim();
    return RT_OK;
}

rt_status rt_model_info_json(const rt_model* m, char** out) {
    if (!m || !out) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(false, [&] { *out = dup_string(model_info_json(m->desc, m->model)); });
}

rt_status rt_model_heat_trace(const rt_model* m, int degree, double t, double* out) {
    if (!m || !out) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(false, [&] {
        if (degree < 0 || degree > m->model->dim())
            throw std::invalid_argument("degree out of range");
        if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
        *out = m->model->heat_trace(degree, t);
    });
}

rt_status rt_model_supertrace(const rt_model* m, double t, double* out) {
    if (!m || !out) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(false, [&] {
        if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
        *out = supertrace(*m->model, t);
    });
}

rt_status rt_zeta_eval(const rt_model* m, int degree, double s, double tol, double* out) {
    if (!m || !out) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(false, [&] {
        if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
        ZetaFn z(m->model, degree, tol);
        *out = z.eval(s);
    });
}

rt_status rt_zeta_at_zero(const rt_model* m, int degree, double tol, double* value,
                          double* deriv, double* pole) {
    if (!m) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(false, [&] {
        if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
        ZetaFn z(m->model, degree, tol);
        const ZetaZeroJet& j = z.at_zero();
        if (value) *value = j.value;
        if (deriv) *deriv = j.deriv;
        if (pole) *pole = j.pole;
    });
}

rt_status rt_zeta_report_json(const rt_model* m, int degree, const double* s_values,
                              int n_values, double tol, char** out) {
    if (!m || !out || (n_values > 0 && !s_values))
        return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    if (n_values < 0) return fail(RT_ERR_INVALID_ARGUMENT, "negative count");
    return guarded(false, [&] {
        std::vector<double> s(s_values, s_values + n_values);
        *out = dup_string(zeta_report_json(m->model, degree, s, tol));
    });
}

rt_status rt_torsion_json(const rt_model* m, char** out) {
    if (!m || !out) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(false, [&] { *out = dup_string(torsion_report_json(m->model)); });
}

rt_status rt_trace_table_csv(const rt_model* m, int degree, const double* grid, int n,
                             char** out) {
    if (!m || !out || (n > 0 && !grid)) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    if (n < 0) return fail(RT_ERR_INVALID_ARGUMENT, "negative count");
    return guarded(false, [&] {
        std::vector<double> g(grid, grid + n);
        *out = dup_string(trace_table_csv(m->model, degree, g));
    });
}

rt_status rt_regint_run_json(const char* request_json, char** out) {
    if (!request_json || !out) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(true, [&] { *out = dup_string(regint_run_json(request_json)); });
}

rt_status rt_indexset_op(const char* op, const char* const* args, int nargs, char** out) {
    if (!op || !out || (nargs > 0 && !args))
        return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    if (nargs < 0) return fail(RT_ERR_INVALID_ARGUMENT, "negative count");
    return guarded(true, [&] {
        std::vector<std::string> a;
        for (int i = 0; i < nargs; ++i) {
            if (!args[i]) throw std::invalid_argument("null operand");
            a.emplace_back(args[i]);
        }
        *out = dup_string(indexset_op_text(op, a));
    });
}

rt_status rt_glue_circle_json(double length, double tolerance, char** out) {
    if (!out) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(false, [&] {
        *out = dup_string(glue_report_json(circle_gluing_check(length, tolerance)));
    });
}

rt_status rt_suite_json(char** out, int* failures) {
    if (!out) return fail(RT_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(false, [&] {
        auto results = run_acceptance();
        int failed = 0;
        for (const auto& r : results)
            if (!r.passed) ++failed;
        if (failures) *failures = failed;
        *out = dup_string(suite_report_json(results));
    });
}

}  // extern "C"
