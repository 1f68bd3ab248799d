#include "pseudoherm/hermitize.hpp"

#include <algorithm>

#include "pseudoherm/symmetry.hpp"

namespace pseudoherm {

namespace {

template <class F>
auto staged(const char* stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.with_stage(stage);
  }
}

}  // namespace

PseudoCanonicalTransform hermitizing_transform(const BiorthonormalSystem& sys, const SpectrumClass& cls) {
  if (cls.tag != SpectrumTag::AllReal)
    throw Error(ErrorCode::SpectrumNotReal,
                std::string("spectrum is ") + std::string(to_string(cls.tag)) + "; no hermitizing similarity exists");
  const MetricOperator eta = build_metric(sys, cls);
  return {eta.factor->adjoint(), false};
}

ComplexMatrix apply_transform(const PseudoCanonicalTransform& a, const ComplexMatrix& h) {
  require_same_dim(a.a, h, "apply_transform");
  const ComplexMatrix a_inv = checked_inverse(a.a, kMetricConditionCeiling, ErrorCode::SingularA, "A");
  return a.a * h * a_inv;
}

MetricOperator metric_from_transform(const PseudoCanonicalTransform& a) {
  require_square_finite(a.a, "A");
  if (!(condition_number(a.a) <= kMetricConditionCeiling)) throw Error(ErrorCode::SingularA, "A is singular");
  const ComplexMatrix eta = a.a.adjoint() * a.a;
  return {0.5 * (eta + eta.adjoint()), true, a.a.adjoint()};
}

bool EquivalenceReport::consistent() const {
  switch (spectrum_class) {
    case SpectrumTag::AllReal:
      return pseudo_hermitian && antilinear_symmetry && exact_symmetry.value_or(false) && positive_metric &&
             hermitizable;
    case SpectrumTag::ConjugatePaired:
      return pseudo_hermitian && antilinear_symmetry && !exact_symmetry.value_or(true) && !hermitizable;
    case SpectrumTag::Unpaired:
      return !pseudo_hermitian && !hermitizable;
  }
  return false;
}

EquivalenceReport real_spectrum_equivalence_report(const ComplexMatrix& h, const ReportOptions& opts) {
  EquivalenceReport rep;
  rep.input = h;

  const BiorthonormalSystem sys = staged("eigensystem", [&] { return biorthonormal_eigensystem(h, opts.eigensystem); });
  for (const auto& lv : sys.levels()) {
    rep.energies.push_back(lv.energy);
    rep.multiplicities.push_back(lv.multiplicity());
  }
  rep.stages["eigensystem"] = {true, std::max(sys.biorthonormality_residual(), eigen_residual(h, sys)), {}};
  {
    const double scale = std::max(norm(h), 1e-300);
    const double r = std::max(relative_residual(reconstruct(sys, false) - h, scale),
                              relative_residual(reconstruct(sys, true) - h.adjoint(), scale));
    rep.stages["reconstruction"] = {r <= opts.tol, r, {}};
  }

  const SpectrumClass cls = staged("classification", [&] {
    return opts.realness_tol ? classify_spectrum(sys, *opts.realness_tol) : classify_spectrum(sys);
  });
  rep.spectrum_class = cls.tag;

  rep.tau = staged("tau", [&] { return canonical_tau(sys); });
  {
    const Check c = is_anti_pseudo_hermitian(h, *rep.tau, opts.tol);
    rep.stages["tau"] = {c.passed, c.residual, {}};
  }

  try {
    rep.eta = build_metric(sys, cls);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnpairedSpectrum) throw e.with_stage("metric");
    rep.stages["metric"] = {false, 0.0, std::string(to_string(e.code()))};
    rep.stages["symmetry"] = {false, 0.0, "no metric"};
    rep.stages["hermitization"] = {false, 0.0, "SpectrumNotReal"};
    return rep;
  }
  {
    const Check c = staged("metric", [&] { return is_pseudo_hermitian(h, *rep.eta, opts.tol); });
    rep.stages["metric"] = {c.passed, c.residual, {}};
    rep.pseudo_hermitian = c.passed;
  }

  double evo = 0.0;
  bool evo_ok = true;
  for (double t : opts.evolution_times) {
    const auto ec = staged("evolution", [&] { return evolution_invariance_check(h, *rep.eta, t, opts.tol); });
    evo = std::max(evo, ec.residual);
    evo_ok = evo_ok && ec.passed;
  }
  rep.stages["evolution"] = {evo_ok, evo, {}};

  rep.symmetry = staged("symmetry", [&] { return antilinear_symmetry(*rep.eta, *rep.tau); });
  {
    const Check c = commutes_with(h, *rep.symmetry, opts.tol);
    rep.stages["symmetry"] = {c.passed, c.residual, {}};
    rep.antilinear_symmetry = c.passed;
  }
  if (rep.antilinear_symmetry) {
    rep.exact_symmetry = staged("exactness", [&] { return is_exact_symmetry(sys, *rep.symmetry, opts.tol); });
    rep.stages["exactness"] = {true, level_leakage(sys, *rep.symmetry), {}};
  }

  if (cls.tag != SpectrumTag::AllReal) {
    rep.stages["hermitization"] = {false, 0.0, "SpectrumNotReal"};
    return rep;
  }

  rep.positive_metric = rep.pseudo_hermitian && rep.eta->positive_definite && min_eigenvalue(*rep.eta) > 0.0;
  rep.transform = staged("hermitization", [&] { return hermitizing_transform(sys, cls); });
  rep.hermitian_image = staged("hermitization", [&] { return apply_transform(*rep.transform, h); });
  {
    const ComplexMatrix& ht = *rep.hermitian_image;
    const double r = relative_residual(ht - ht.adjoint(), norm(ht));
    rep.stages["hermitization"] = {r <= opts.tol, r, {}};
    rep.hermitizable = r <= opts.tol;
  }
  return rep;
}

}  // namespace pseudoherm
