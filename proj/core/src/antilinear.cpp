#include "pseudoherm/antilinear.hpp"

#include <sstream>

namespace pseudoherm {

CoefficientFamily CoefficientFamily::identity(const BiorthonormalSystem& sys) {
  CoefficientFamily c;
  c.blocks.reserve(sys.size());
  for (const auto& lv : sys.levels()) {
    const auto d = lv.multiplicity();
    c.blocks.push_back(ComplexMatrix::Identity(d, d));
  }
  return c;
}

ComplexVector apply(const AntilinearOperator& op, const ComplexVector& zeta) {
  if (op.m.cols() != zeta.size()) throw Error(ErrorCode::DimensionMismatch, "apply: operator and vector sizes differ");
  return op.m * zeta.conjugate();
}

ComplexMatrix compose_antilinear(const AntilinearOperator& s, const AntilinearOperator& t) {
  require_same_dim(s.m, t.m, "compose_antilinear");
  return s.m * t.m.conjugate();
}

double anti_hermiticity_residual(const AntilinearOperator& op) {
  return relative_residual(op.m - op.m.transpose(), norm(op.m));
}

void validate_coefficients(const BiorthonormalSystem& sys, const CoefficientFamily& c) {
  if (c.blocks.size() != sys.size()) {
    std::ostringstream os;
    os << "coefficient family has " << c.blocks.size() << " blocks, system has " << sys.size() << " levels";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  for (std::size_t n = 0; n < sys.size(); ++n) {
    const auto& b = c.blocks[n];
    const auto d = sys.level(n).multiplicity();
    if (b.rows() != d || b.cols() != d) {
      std::ostringstream os;
      os << "block " << n << " is " << b.rows() << "x" << b.cols() << ", level multiplicity is " << d;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    if (!all_finite(b)) throw Error(ErrorCode::NonFinite, "coefficient block has NaN/Inf entries");
    if (relative_residual(b - b.transpose(), norm(b)) > sys.tol()) {
      std::ostringstream os;
      os << "block " << n << " is not symmetric";
      throw Error(ErrorCode::AsymmetricCoefficients, os.str());
    }
    if (!(condition_number(b) <= kDefaultConditionCeiling)) {
      std::ostringstream os;
      os << "block " << n << " is singular";
      throw Error(ErrorCode::SingularCoefficients, os.str());
    }
  }
}

AntilinearOperator build_tau(const BiorthonormalSystem& sys, const CoefficientFamily& c) {
  validate_coefficients(sys, c);
  const auto n = sys.dim();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const auto& phi = sys.level(k).phi;
    m.noalias() += phi * c.blocks[k] * phi.transpose();
  }
  return {std::move(m)};
}

AntilinearOperator canonical_tau(const BiorthonormalSystem& sys) {
  return build_tau(sys, CoefficientFamily::identity(sys));
}

AntilinearOperator invert_tau(const BiorthonormalSystem& sys, const CoefficientFamily& c) {
  validate_coefficients(sys, c);
  const auto n = sys.dim();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const auto& psi = sys.level(k).psi;
    const ComplexMatrix inv = c.blocks[k].fullPivLu().inverse();
    m.noalias() += psi * inv.conjugate() * psi.transpose();
  }
  return {std::move(m)};
}

Check is_anti_pseudo_hermitian(const ComplexMatrix& h, const AntilinearOperator& tau, double tol) {
  require_same_dim(h, tau.m, "is_anti_pseudo_hermitian");
  const ComplexMatrix diff = h.adjoint() * tau.m - tau.m * h.conjugate();
  const double r = relative_residual(diff, norm(h) * norm(tau.m));
  return {r <= tol, r};
}

CoefficientFamily recover_coefficients(const BiorthonormalSystem& sys, const AntilinearOperator& tau) {
  if (tau.dim() != sys.dim()) throw Error(ErrorCode::DimensionMismatch, "recover_coefficients: dimension mismatch");
  CoefficientFamily c;
  for (const auto& lv : sys.levels()) c.blocks.push_back(lv.psi.adjoint() * tau.m * lv.psi.conjugate());
  return c;
}

CoefficientFamily recover_inverse_coefficients(const BiorthonormalSystem& sys, const AntilinearOperator& tau_inv) {
  if (tau_inv.dim() != sys.dim())
    throw Error(ErrorCode::DimensionMismatch, "recover_inverse_coefficients: dimension mismatch");
  CoefficientFamily c;
  for (const auto& lv : sys.levels()) c.blocks.push_back((lv.phi.adjoint() * tau_inv.m * lv.phi.conjugate()).conjugate());
  return c;
}

}  // namespace pseudoherm
