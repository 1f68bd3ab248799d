#include "pseudoherm/symmetry.hpp"

#include <algorithm>
#include <sstream>

namespace pseudoherm {

AntilinearOperator antilinear_symmetry(const MetricOperator& eta, const AntilinearOperator& tau) {
  require_same_dim(eta.eta, tau.m, "antilinear_symmetry");
  if (!(condition_number(eta.eta) <= kMetricConditionCeiling)) throw Error(ErrorCode::SingularEta, "eta is singular");
  return {eta.eta.fullPivLu().solve(tau.m)};
}

Check commutes_with(const ComplexMatrix& h, const AntilinearOperator& x, double tol) {
  require_same_dim(h, x.m, "commutes_with");
  const double r = relative_residual(h * x.m - x.m * h.conjugate(), norm(h) * norm(x.m));
  return {r <= tol, r};
}

Check commutes_with(const ComplexMatrix& h, const ComplexMatrix& s, double tol) {
  require_same_dim(h, s, "commutes_with");
  const double r = relative_residual(h * s - s * h, norm(h) * norm(s));
  return {r <= tol, r};
}

AntilinearOperator adjoint(const AntilinearOperator& x) { return {x.m.transpose()}; }

InducedSymmetries induced_symmetries(const AntilinearOperator& x, const MetricOperator& eta,
                                     const AntilinearOperator& tau) {
  require_same_dim(x.m, eta.eta, "induced_symmetries");
  require_same_dim(x.m, tau.m, "induced_symmetries");
  const ComplexMatrix eta_inv = checked_inverse(eta.eta, kMetricConditionCeiling, ErrorCode::SingularEta, "eta");
  const ComplexMatrix m_inv = checked_inverse(tau.m, kMetricConditionCeiling, ErrorCode::SingularTau, "tau");
  const ComplexMatrix xt = x.m.transpose();
  return {{eta_inv * xt * eta.eta.conjugate()}, {m_inv.conjugate() * xt.conjugate() * tau.m}};
}

double level_leakage(const BiorthonormalSystem& sys, const AntilinearOperator& x) {
  if (x.dim() != sys.dim()) throw Error(ErrorCode::DimensionMismatch, "level_leakage: dimension mismatch");
  double worst = 0.0;
  for (const auto& lv : sys.levels()) {
    const ComplexMatrix image = x.m * lv.psi.conjugate();
    const ComplexMatrix outside = image - lv.psi * (lv.phi.adjoint() * image);
    const double scale = image.norm();
    worst = std::max(worst, scale > 0.0 ? outside.norm() / scale : 0.0);
  }
  return worst;
}

bool is_exact_symmetry(const BiorthonormalSystem& sys, const AntilinearOperator& x, double tol) {
  const ComplexMatrix h = reconstruct(sys);
  const Check c = commutes_with(h, x, tol);
  if (!c.passed) {
    std::ostringstream os;
    os << "X does not commute with H (residual " << c.residual << ")";
    throw Error(ErrorCode::NotASymmetry, os.str());
  }
  return level_leakage(sys, x) <= tol;
}

}  // namespace pseudoherm
