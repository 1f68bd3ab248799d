#include "pseudoherm_cli/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pseudoherm/pseudoherm.hpp"

namespace pseudoherm::cli {

namespace {

using io::json;

struct Globals {
  double tol = 1e-10;
  std::optional<double> cluster_gap;
  std::string output = "json";
  std::uint64_t seed = 1;
};

/// What a subcommand produced; `failure` is set when a check did not pass.
struct Outcome {
  json body;
  std::string failure;
};

bool is_verification_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnpairedSpectrum:
    case ErrorCode::SpectrumNotReal:
    case ErrorCode::NotPseudoHermitian:
    case ErrorCode::NotASymmetry:
    case ErrorCode::NotPTSymmetric:
    case ErrorCode::ResultNotHermitian:
      return true;
    default:
      return false;
  }
}

EigensystemOptions eig_options(const Globals& g) {
  EigensystemOptions o;
  o.tol = g.tol;
  o.cluster_gap = g.cluster_gap;
  return o;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json levels_json(const BiorthonormalSystem& sys, const SpectrumClass& cls) {
  json out = json::array();
  for (std::size_t k = 0; k < sys.size(); ++k) {
    json lv = {{"energy", complex_json(sys.level(k).energy)},
               {"multiplicity", sys.level(k).multiplicity()},
               {"real", cls.is_real_level(k)}};
    if (cls.unpaired[k])
      lv["partner"] = nullptr;
    else
      lv["partner"] = cls.pairing[k];
    out.push_back(std::move(lv));
  }
  return out;
}

std::string check_failure(const char* what, double residual, double tol) {
  std::ostringstream os;
  os << what << " residual " << residual << " exceeds tol " << tol;
  return os.str();
}

ComplexMatrix load_matrix(const std::string& path) { return io::matrix_from_json(io::read_json_file(path)); }

Outcome cmd_analyze(const Globals& g, const std::string& file) {
  const ComplexMatrix h = load_matrix(file);
  const auto sys = biorthonormal_eigensystem(h, eig_options(g));
  const auto cls = classify_spectrum(sys);
  const double recon = relative_residual(reconstruct(sys) - h, norm(h));
  Outcome o;
  o.body = {{"n", h.rows()},
            {"spectrum_class", std::string(to_string(cls.tag))},
            {"levels", levels_json(sys, cls)},
            {"cluster_gap", sys.cluster_gap()},
            {"realness_tol", cls.realness_tol},
            {"residuals",
             {{"biorthonormality", sys.biorthonormality_residual()},
              {"eigen", eigen_residual(h, sys)},
              {"reconstruction", recon}}}};
  if (recon > g.tol) o.failure = check_failure("reconstruction", recon, g.tol);
  return o;
}

Outcome cmd_metric(const Globals& g, const std::string& file, const std::string& eta_file) {
  const ComplexMatrix h = load_matrix(file);
  MetricOperator eta;
  if (eta_file.empty()) {
    const auto sys = biorthonormal_eigensystem(h, eig_options(g));
    eta = build_metric(sys, classify_spectrum(sys));
  } else {
    eta = io::metric_from_json(io::read_json_file(eta_file));
  }
  const Check c = is_pseudo_hermitian(h, eta, g.tol);
  Outcome o;
  o.body = {{"eta", io::metric_to_json(eta)},
            {"positive_definite", eta.positive_definite},
            {"min_eigenvalue", min_eigenvalue(eta)},
            {"residuals", {{"pseudo_hermiticity", c.residual}}}};
  if (!c.passed) o.failure = "NotPseudoHermitian: " + check_failure("H^H eta - eta H", c.residual, g.tol);
  return o;
}

Outcome cmd_tau(const Globals& g, const std::string& file, const std::string& coeff_file) {
  const ComplexMatrix h = load_matrix(file);
  const auto sys = biorthonormal_eigensystem(h, eig_options(g));
  const CoefficientFamily c =
      coeff_file.empty() ? CoefficientFamily::identity(sys) : io::coefficients_from_json(io::read_json_file(coeff_file));
  const auto tau = build_tau(sys, c);
  const auto tau_inv = invert_tau(sys, c);
  const Check c_int = is_anti_pseudo_hermitian(h, tau, g.tol);
  const double sym = anti_hermiticity_residual(tau);
  const double inv = max_abs(compose_antilinear(tau, tau_inv) - ComplexMatrix::Identity(h.rows(), h.rows()));
  Outcome o;
  o.body = {{"tau", io::matrix_to_json(tau.m)},
            {"tau_inverse", io::matrix_to_json(tau_inv.m)},
            {"residuals", {{"anti_hermiticity", sym}, {"intertwining", c_int.residual}, {"inverse", inv}}}};
  if (!c_int.passed)
    o.failure = check_failure("H^H tau - tau H", c_int.residual, g.tol);
  else if (sym > g.tol * std::max(1.0, norm(tau.m)))
    o.failure = check_failure("tau symmetry", sym, g.tol);
  return o;
}

Outcome cmd_symmetry(const Globals& g, const std::string& file) {
  const ComplexMatrix h = load_matrix(file);
  const auto sys = biorthonormal_eigensystem(h, eig_options(g));
  const auto cls = classify_spectrum(sys);
  const auto eta = build_metric(sys, cls);
  const auto tau = canonical_tau(sys);
  const auto x = antilinear_symmetry(eta, tau);
  const Check c = commutes_with(h, x, g.tol);
  Outcome o;
  o.body = {{"spectrum_class", std::string(to_string(cls.tag))},
            {"X", io::matrix_to_json(x.m)},
            {"residuals", {{"commutation", c.residual}}}};
  if (!c.passed) {
    o.failure = check_failure("[H, X]", c.residual, g.tol);
    return o;
  }
  const auto induced = induced_symmetries(x, eta, tau);
  const Check ce = commutes_with(h, induced.via_eta, g.tol);
  const Check ct = commutes_with(h, induced.via_tau, g.tol);
  o.body["residuals"]["induced_via_eta"] = ce.residual;
  o.body["residuals"]["induced_via_tau"] = ct.residual;
  o.body["residuals"]["level_leakage"] = level_leakage(sys, x);
  o.body["exact"] = is_exact_symmetry(sys, x, std::max(g.tol, 1e-9));
  if (!ce.passed || !ct.passed)
    o.failure = check_failure("induced symmetry commutation", std::max(ce.residual, ct.residual), g.tol);
  return o;
}

Outcome cmd_hermitize(const Globals& g, const std::string& file) {
  const ComplexMatrix h = load_matrix(file);
  ReportOptions opts;
  opts.eigensystem = eig_options(g);
  opts.tol = std::max(g.tol, 1e-9);
  const auto rep = real_spectrum_equivalence_report(h, opts);
  Outcome o{io::report_to_json(rep), {}};
  if (rep.spectrum_class != SpectrumTag::AllReal)
    o.failure = "SpectrumNotReal: hermitization needs a real spectrum";
  else if (!rep.hermitizable)
    o.failure = check_failure("H_tilde hermiticity", rep.stages.at("hermitization").residual, opts.tol);
  else if (!rep.consistent())
    o.failure = "equivalence report is inconsistent";
  return o;
}

Outcome cmd_evolve(const Globals& g, const std::string& file, double t, const std::string& eta_file) {
  const ComplexMatrix h = load_matrix(file);
  MetricOperator eta;
  if (eta_file.empty()) {
    const auto sys = biorthonormal_eigensystem(h, eig_options(g));
    eta = build_metric(sys, classify_spectrum(sys));
  } else {
    eta = io::metric_from_json(io::read_json_file(eta_file));
  }
  const auto ec = evolution_invariance_check(h, eta, t, std::max(g.tol, 1e-9));
  Outcome o;
  o.body = {{"t", t},
            {"passed", ec.passed},
            {"residuals", {{"invariance", ec.residual}, {"pseudo_hermiticity", ec.pseudo_hermitian.residual}}}};
  if (!ec.pseudo_hermitian.passed)
    o.failure = "NotPseudoHermitian: the metric does not intertwine H";
  else if (!ec.passed)
    o.failure = check_failure("U^H eta U - eta", ec.residual, g.tol);
  return o;
}

struct LatticeArgs {
  std::string spec_file;
  int n = 41;
  double half_width = 10.0;
  double mass = 1.0;
  std::string v1 = "x^2";
  std::string v2 = "x^3";
  double eps = 0.1;
  bool emit_h = false;
};

Outcome cmd_pt_model(const Globals& g, const LatticeArgs& a) {
  const json spec_json = a.spec_file.empty()
                             ? json{{"n", a.n}, {"L", a.half_width}, {"mass", a.mass}, {"v1", a.v1}, {"v2", a.v2},
                                    {"eps", a.eps}}
                             : io::read_json_file(a.spec_file);
  const LatticeSpec spec = io::lattice_from_json(spec_json);
  const ComplexMatrix h = build_pt_hamiltonian(spec);
  const ComplexMatrix p = parity_matrix(spec.n_sites);
  const double structural = std::max(g.tol, 1e-12);
  const Check ph = is_parity_pseudo_hermitian(h, p, structural);
  const Check pt = is_pt_symmetric(h, p, structural);
  const Check th = is_anti_pseudo_hermitian(h, time_reversal(spec.n_sites), structural);

  Outcome o;
  o.body = {{"n", spec.n_sites}, {"L", spec.half_width}, {"mass", spec.mass}, {"spacing", spec.spacing()}};
  o.body["residuals"] = {{"parity_pseudo_hermiticity", ph.residual},
                         {"pt_commutation", pt.residual},
                         {"time_reversal_anti_pseudo_hermiticity", th.residual}};
  if (a.emit_h) o.body["H"] = io::matrix_to_json(h);
  if (!ph.passed || !pt.passed || !th.passed) {
    o.failure = check_failure("lattice structure", std::max({ph.residual, pt.residual, th.residual}), structural);
    return o;
  }

  const auto sys = biorthonormal_eigensystem(h, eig_options(g));
  const auto cls = classify_spectrum(sys);
  o.body["spectrum_class"] = std::string(to_string(cls.tag));
  o.body["levels"] = levels_json(sys, cls);
  if (cls.tag == SpectrumTag::Unpaired) {
    o.failure = "UnpairedSpectrum: PT-symmetric lattice produced unpaired levels";
    return o;
  }
  const double tol = std::max(g.tol, 1e-9);
  const auto adapted = pt_adapted_system(sys, cls, p);
  const auto eta = eta_from_tau_pt(h, canonical_tau(adapted), p, tol);
  o.body["tau_pt_metric"] = {{"positive_definite", eta.positive_definite},
                             {"min_eigenvalue", min_eigenvalue(eta)},
                             {"pseudo_hermiticity", is_pseudo_hermitian(h, eta, tol).residual}};
  if (cls.tag == SpectrumTag::AllReal) {
    const ComplexMatrix ht = apply_transform(hermitizing_transform(sys, cls), h);
    o.body["residuals"]["hermitization"] = relative_residual(ht - ht.adjoint(), norm(ht));
  }
  return o;
}

Outcome cmd_factor(const Globals& g, const std::string& file) {
  const ComplexMatrix c = load_matrix(file);
  const double tol = std::max(g.tol, 1e-10);
  const auto t = takagi(c, tol);
  const ComplexMatrix v = symmetric_factor(c, tol);
  const double r = relative_residual(v * v.transpose() - c, norm(c));
  json sigma = json::array();
  for (Eigen::Index k = 0; k < t.sigma.size(); ++k) sigma.push_back(t.sigma(k));
  Outcome o;
  o.body = {{"sigma", sigma},
            {"u", io::matrix_to_json(t.u)},
            {"v", io::matrix_to_json(v)},
            {"residuals", {{"reconstruction", r}}}};
  if (r > tol) o.failure = check_failure("v v^T - c", r, tol);
  return o;
}

PlantedKind parse_kind(const std::string& s) {
  if (s == "real") return PlantedKind::Real;
  if (s == "paired") return PlantedKind::Paired;
  if (s == "unpaired") return PlantedKind::Unpaired;
  throw Error(ErrorCode::InvalidInput, "kind must be real, paired or unpaired");
}

Outcome cmd_plant(const Globals& g, const std::string& kind, int n, bool degenerate) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "--n must be positive");
  Rng rng(g.seed);
  const auto p = plant_random(parse_kind(kind), n, rng, degenerate);
  return {io::matrix_to_json(p.h), {}};
}

Outcome cmd_ensemble(const Globals& g, int count, int min_dim, int max_dim) {
  if (count < 1 || min_dim < 1 || max_dim < min_dim) throw Error(ErrorCode::InvalidInput, "bad ensemble bounds");
  ReportOptions opts;
  opts.eigensystem = eig_options(g);
  opts.tol = std::max(g.tol, 1e-9);
  std::map<std::string, int> by_class;
  int mismatches = 0;
  for (const auto& p : planted_ensemble(static_cast<std::size_t>(count), g.seed, min_dim, max_dim)) {
    const auto rep = real_spectrum_equivalence_report(p.h, opts);
    ++by_class[std::string(to_string(rep.spectrum_class))];
    if (rep.spectrum_class != p.expected || !rep.consistent()) ++mismatches;
  }
  Outcome o;
  o.body = {{"count", count}, {"seed", g.seed}, {"classes", by_class}, {"mismatches", mismatches}};
  if (mismatches > 0) o.failure = std::to_string(mismatches) + " ensemble members disagree with their planted class";
  return o;
}

bool is_matrix(const json& j) { return j.is_object() && j.contains("n") && j.contains("data"); }

void print_text(const json& j, const std::string& prefix, std::ostream& out) {
  if (is_matrix(j)) {
    out << prefix << ": [" << j["n"] << "x" << j["n"] << " matrix]\n";
  } else if (j.is_object()) {
    for (const auto& [key, value] : j.items()) print_text(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t k = 0; k < j.size(); ++k) print_text(j[k], prefix + "[" + std::to_string(k) + "]", out);
  } else {
    out << prefix << ": " << j.dump() << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudo-Hermitian and antilinear-symmetry analysis of dense complex matrices"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "Tolerance for eigensystem and identity checks")->check(CLI::PositiveNumber);
  app.add_option("--cluster-gap", g.cluster_gap, "Eigenvalue clustering gap (default 1e-8 ||H||)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--output", g.output, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", g.seed, "Seed for planted matrices and ensembles");

  std::string file, extra_file;
  double t = 0.0;

  auto* analyze = app.add_subcommand("analyze", "Eigensystem, spectrum class and residuals");
  analyze->add_option("matrix", file, "Matrix JSON")->required();
  auto* metric = app.add_subcommand("metric", "Canonical metric eta and its pseudo-Hermiticity check");
  metric->add_option("matrix", file, "Matrix JSON")->required();
  metric->add_option("--eta", extra_file, "Check this metric instead of building one");
  auto* tau = app.add_subcommand("tau", "Antilinear tau with H^H = tau H tau^{-1}");
  tau->add_option("matrix", file, "Matrix JSON")->required();
  tau->add_option("--coeffs", extra_file, "Coefficient family (list of symmetric matrices, one per level)");
  auto* symmetry = app.add_subcommand("symmetry", "Antilinear symmetry X = eta^{-1} tau");
  symmetry->add_option("matrix", file, "Matrix JSON")->required();
  auto* hermitize = app.add_subcommand("hermitize", "Hermitizing transform and full equivalence report");
  hermitize->add_option("matrix", file, "Matrix JSON")->required();
  auto* evolve = app.add_subcommand("evolve-check", "Invariance of the metric under exp(-iHt)");
  evolve->add_option("matrix", file, "Matrix JSON")->required();
  evolve->add_option("--t", t, "Time")->required();
  evolve->add_option("--eta", extra_file, "Metric JSON (default: canonical metric)");

  LatticeArgs lat;
  auto* pt = app.add_subcommand("pt-model", "Build and analyze a PT-symmetric lattice Hamiltonian");
  pt->add_option("--spec", lat.spec_file, "Lattice spec JSON (overrides the flags below)");
  pt->add_option("--n", lat.n, "Number of sites (odd)");
  pt->add_option("--L", lat.half_width, "Half width of the grid");
  pt->add_option("--mass", lat.mass, "Mass");
  pt->add_option("--v1", lat.v1, "Even real potential: 0, x or x^k");
  pt->add_option("--v2", lat.v2, "Odd imaginary potential: 0, x or x^k");
  pt->add_option("--eps", lat.eps, "Scale of v2");
  pt->add_flag("--emit-h", lat.emit_h, "Include H in the output");

  auto* factor = app.add_subcommand("factor", "Takagi factorization and symmetric factor of a symmetric matrix");
  factor->add_option("matrix", file, "Symmetric matrix JSON")->required();

  std::string kind = "real";
  int n = 4;
  bool degenerate = false;
  auto* plant_cmd = app.add_subcommand("plant", "Emit a planted matrix S diag(E) S^{-1}");
  plant_cmd->add_option("--kind", kind, "real, paired or unpaired");
  plant_cmd->add_option("--n", n, "Dimension");
  plant_cmd->add_flag("--degenerate", degenerate, "Give one level multiplicity > 1");

  int count = 30, min_dim = 2, max_dim = 12;
  auto* ensemble = app.add_subcommand("ensemble", "Equivalence report over a planted ensemble");
  ensemble->add_option("--count", count, "Number of matrices");
  ensemble->add_option("--min-dim", min_dim, "Smallest dimension");
  ensemble->add_option("--max-dim", max_dim, "Largest dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  Outcome result;
  try {
    if (*analyze) result = cmd_analyze(g, file);
    else if (*metric) result = cmd_metric(g, file, extra_file);
    else if (*tau) result = cmd_tau(g, file, extra_file);
    else if (*symmetry) result = cmd_symmetry(g, file);
    else if (*hermitize) result = cmd_hermitize(g, file);
    else if (*evolve) result = cmd_evolve(g, file, t, extra_file);
    else if (*pt) result = cmd_pt_model(g, lat);
    else if (*factor) result = cmd_factor(g, file);
    else if (*plant_cmd) result = cmd_plant(g, kind, n, degenerate);
    else if (*ensemble) result = cmd_ensemble(g, count, min_dim, max_dim);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_verification_failure(e.code()) ? kVerificationFailed : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (g.output == "text")
    print_text(result.body, "", out);
  else
    out << result.body.dump(2) << '\n';
  if (!result.failure.empty()) {
    err << "verification failed: " << result.failure << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace pseudoherm::cli
