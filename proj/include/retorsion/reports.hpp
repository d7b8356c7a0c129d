#pragma once

#include <string>
#include <vector>

#include "retorsion/acceptance.hpp"
#include "retorsion/geometry_json.hpp"
#include "retorsion/gluing.hpp"
#include "retorsion/zeta.hpp"

namespace retorsion {

// Deterministic machine-readable assemblies behind the shared-library API.
// Every builder emits fixed key order and %.17g numbers, so identical inputs
// give byte-identical output.

std::string model_info_json(const GeometryDesc& d, const ModelPtr& m);
std::string torsion_report_json(const ModelPtr& m);
std::string zeta_report_json(const ModelPtr& m, int degree, const std::vector<double>& s_values,
                             double tol);
std::string glue_report_json(const GluingReport& r);

// Columns t, trace, partial sum of the declared short-time terms, residual.
// The grid must be positive and ascending; empty gives the header only.
std::string trace_table_csv(const ModelPtr& m, int degree, const std::vector<double>& grid);

// Request: {"expr": "...", "at_zero": {"terms": [[alpha,k,c],...],
// "remainder": r, "exp_small": b}, "at_infinity": {...}, "split"?, "tolerance"?}
// with alpha either an integer or a "p/q" string. Result carries value,
// error estimate and the convergence flag.
std::string regint_run_json(const std::string& request_json);

// Battery results without timings, so identical runs emit identical bytes.
std::string suite_report_json(const std::vector<CriterionResult>& results);

// Text-level index set operations: eunion, union, msum (two sets),
// shift (set, rational), pushforward (two triples "E10|E11|E01").
std::string indexset_op_text(const std::string& op, const std::vector<std::string>& args);

}  // namespace retorsion
