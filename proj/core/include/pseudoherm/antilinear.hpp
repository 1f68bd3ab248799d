#pragma once

#include <vector>

#include "pseudoherm/eigensystem.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm {

/// Antilinear map zeta -> m * conj(zeta).
///
/// With this representation the anti-Hermiticity condition
/// <zeta|tau|xi> = <xi|tau|zeta> is exactly m == m^T.
struct AntilinearOperator {
  ComplexMatrix m;

  Eigen::Index dim() const noexcept { return m.rows(); }
  static AntilinearOperator conjugation(Eigen::Index n) { return {ComplexMatrix::Identity(n, n)}; }
};

/// One symmetric invertible d_n x d_n block per eigen-level, in level order.
struct CoefficientFamily {
  std::vector<ComplexMatrix> blocks;

  static CoefficientFamily identity(const BiorthonormalSystem& sys);
};

ComplexVector apply(const AntilinearOperator& op, const ComplexVector& zeta);

/// The linear map s o t; its matrix is s.m * conj(t.m).
ComplexMatrix compose_antilinear(const AntilinearOperator& s, const AntilinearOperator& t);

/// ||m - m^T||_max / ||m||.
double anti_hermiticity_residual(const AntilinearOperator& op);

/// Checks that `c` is aligned with `sys` and every block is symmetric and
/// invertible (within `sys.tol()`); throws DimensionMismatch,
/// AsymmetricCoefficients or SingularCoefficients.
void validate_coefficients(const BiorthonormalSystem& sys, const CoefficientFamily& c);

/// tau|zeta> = sum_n sum_ab c^(n)_ab <zeta|phi_{n,a}> |phi_{n,b}>, i.e.
/// m = sum_n Phi_n c^(n) Phi_n^T.
AntilinearOperator build_tau(const BiorthonormalSystem& sys, const CoefficientFamily& c);

/// build_tau with every c^(n) = 1.
AntilinearOperator canonical_tau(const BiorthonormalSystem& sys);

/// tau^{-1}: m' = sum_n Psi_n conj((c^(n))^{-1}) Psi_n^T.
AntilinearOperator invert_tau(const BiorthonormalSystem& sys, const CoefficientFamily& c);

/// H^H tau = tau H, checked as ||H^H m - m conj(H)||_max <= tol ||H|| ||m||.
Check is_anti_pseudo_hermitian(const ComplexMatrix& h, const AntilinearOperator& tau, double tol);

/// c^(n)_ba = <psi_{n,b}|tau|psi_{n,a}>, read back from an operator.
CoefficientFamily recover_coefficients(const BiorthonormalSystem& sys, const AntilinearOperator& tau);

/// (c^(n)^{-1})_ab = <phi_{n,a}|tau^{-1}|phi_{n,b}>^*, read back from the inverse operator.
CoefficientFamily recover_inverse_coefficients(const BiorthonormalSystem& sys, const AntilinearOperator& tau_inv);

}  // namespace pseudoherm
