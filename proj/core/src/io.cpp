#include "pseudoherm/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pseudoherm::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) bad("entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Potential monomial(const std::string& expr) {
  std::string s;
  for (char ch : expr)
    if (ch != ' ') s.push_back(ch);
  if (s == "0") return [](double) { return 0.0; };
  if (s == "x") return [](double x) { return x; };
  if (s.size() > 2 && s.rfind("x^", 0) == 0) {
    int k = 0;
    std::istringstream is(s.substr(2));
    if (is >> k && is.eof() && k >= 0) return [k](double x) { return std::pow(x, k); };
  }
  bad("unsupported potential expression '" + expr + "' (use \"0\", \"x\" or \"x^k\")");
}

Eigen::VectorXd samples_or_expression(const json& j, const Eigen::VectorXd& grid, const char* name) {
  if (j.is_string()) return grid.unaryExpr(monomial(j.get<std::string>()));
  if (!j.is_array()) bad(std::string(name) + " must be an expression string or a sample array");
  if (static_cast<Eigen::Index>(j.size()) != grid.size())
    bad(std::string(name) + " has " + std::to_string(j.size()) + " samples for " + std::to_string(grid.size()) +
        " sites");
  Eigen::VectorXd v(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    if (!j[k].is_number()) bad(std::string(name) + " samples must be numbers");
    v(k) = j[k].get<double>();
  }
  return v;
}

json stage_to_json(const StageResult& s) {
  json out = {{"ok", s.ok}, {"residual", s.residual}};
  if (!s.refusal.empty()) out["refusal"] = s.refusal;
  return out;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix format holds square matrices only");
  json data = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) data.push_back(complex_to_json(a(i, k)));
  return {{"n", a.rows()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("data")) bad("matrix object needs \"n\" and \"data\"");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) bad("\"n\" must be a positive integer");
  const auto n = static_cast<Eigen::Index>(j["n"].get<long long>());
  const json& data = j["data"];
  if (!data.is_array()) bad("\"data\" must be an array");
  if (static_cast<Eigen::Index>(data.size()) != n * n) {
    std::ostringstream os;
    os << "\"data\" has " << data.size() << " entries, expected n^2 = " << n * n;
    bad(os.str());
  }
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) a(i, k) = complex_from_json(data[static_cast<std::size_t>(i * n + k)]);
  if (!all_finite(a)) throw Error(ErrorCode::NonFinite, "matrix has NaN/Inf entries");
  return a;
}

json coefficients_to_json(const CoefficientFamily& c) {
  json out = json::array();
  for (const auto& b : c.blocks) out.push_back(matrix_to_json(b));
  return out;
}

CoefficientFamily coefficients_from_json(const json& j) {
  if (!j.is_array()) bad("coefficient family must be a JSON list of matrices");
  CoefficientFamily c;
  for (const auto& b : j) c.blocks.push_back(matrix_from_json(b));
  return c;
}

json metric_to_json(const MetricOperator& eta) {
  json out = matrix_to_json(eta.eta);
  out["positive_definite"] = eta.positive_definite;
  if (eta.factor) out["factor"] = matrix_to_json(*eta.factor);
  return out;
}

MetricOperator metric_from_json(const json& j) {
  MetricOperator out = make_metric(matrix_from_json(j));
  if (j.contains("factor")) {
    const ComplexMatrix o = matrix_from_json(j["factor"]);
    require_same_dim(o, out.eta, "metric factor");
    if (relative_residual(o * o.adjoint() - out.eta, norm(out.eta)) > 1e-10)
      bad("metric factor does not reproduce eta");
    out.factor = o;
  }
  return out;
}

LatticeSpec lattice_from_json(const json& j) {
  if (!j.is_object()) bad("lattice spec must be a JSON object");
  LatticeSpec spec;
  spec.n_sites = j.value("n", 0);
  spec.half_width = j.value("L", 0.0);
  spec.mass = j.value("mass", 1.0);
  if (spec.n_sites < 3 || spec.n_sites % 2 == 0) bad("lattice \"n\" must be odd and >= 3");
  const Eigen::VectorXd grid = spec.grid();
  spec.v1 = samples_or_expression(j.value("v1", json("0")), grid, "v1");
  spec.v2 = j.value("eps", 1.0) * samples_or_expression(j.value("v2", json("0")), grid, "v2");
  validate(spec);
  return spec;
}

json report_to_json(const EquivalenceReport& rep) {
  json out;
  out["input"] = matrix_to_json(rep.input);
  out["spectrum_class"] = std::string(to_string(rep.spectrum_class));
  json levels = json::array();
  for (std::size_t k = 0; k < rep.energies.size(); ++k)
    levels.push_back({{"energy", complex_to_json(rep.energies[k])}, {"multiplicity", rep.multiplicities[k]}});
  out["levels"] = std::move(levels);

  json residuals = json::object();
  json stages = json::object();
  for (const auto& [name, s] : rep.stages) {
    residuals[name] = s.residual;
    stages[name] = stage_to_json(s);
  }
  out["residuals"] = std::move(residuals);
  out["stages"] = std::move(stages);

  json cert = json::object();
  if (rep.eta) cert["eta"] = metric_to_json(*rep.eta);
  if (rep.tau) cert["tau"] = matrix_to_json(rep.tau->m);
  if (rep.symmetry) cert["X"] = matrix_to_json(rep.symmetry->m);
  if (rep.transform) cert["A"] = matrix_to_json(rep.transform->a);
  if (rep.hermitian_image) cert["H_tilde"] = matrix_to_json(*rep.hermitian_image);
  out["certificates"] = std::move(cert);

  out["characterizations"] = {
      {"pseudo_hermitian", rep.pseudo_hermitian},
      {"antilinear_symmetry", rep.antilinear_symmetry},
      {"exact_symmetry", rep.exact_symmetry ? json(*rep.exact_symmetry) : json(nullptr)},
      {"positive_definite_metric", rep.positive_metric},
      {"hermitizing_transform", rep.hermitizable},
  };
  out["consistent"] = rep.consistent();
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace pseudoherm::io
