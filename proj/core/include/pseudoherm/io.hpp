#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "pseudoherm/antilinear.hpp"
#include "pseudoherm/hermitize.hpp"
#include "pseudoherm/metric.hpp"
#include "pseudoherm/ptmodel.hpp"

namespace pseudoherm::io {

using nlohmann::json;

/// {"n": n, "data": [[re, im], ...]} with n^2 entries in row-major order.
json matrix_to_json(const ComplexMatrix& a);
/// Throws InvalidInput for a malformed object or a data array of the wrong length.
ComplexMatrix matrix_from_json(const json& j);

/// List of square blocks in matrix format, in level order.
json coefficients_to_json(const CoefficientFamily& c);
CoefficientFamily coefficients_from_json(const json& j);

/// Matrix format plus "positive_definite" and optional "factor".
json metric_to_json(const MetricOperator& eta);
MetricOperator metric_from_json(const json& j);

/// {"n", "L", "mass", "v1": "x^2" | [samples], "v2": "x^3" | [samples], "eps"}.
/// String potentials are monomials "0" or "x^k"; eps scales v2 (default 1).
LatticeSpec lattice_from_json(const json& j);

/// {"input", "spectrum_class", "residuals", "certificates", ...}.
json report_to_json(const EquivalenceReport& rep);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace pseudoherm::io
