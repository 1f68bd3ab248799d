#pragma once

#include <optional>

#include "pseudoherm/eigensystem.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm {

/// Linear Hermitian automorphism eta. When `positive_definite` is set,
/// `factor` holds O with eta = O O^H.
struct MetricOperator {
  ComplexMatrix eta;
  bool positive_definite = false;
  std::optional<ComplexMatrix> factor;

  Eigen::Index dim() const noexcept { return eta.rows(); }
};

/// Metrics whose condition number exceeds this are treated as singular.
inline constexpr double kMetricConditionCeiling = 1e14;

/// Wraps an externally supplied eta: checks Hermiticity (NonHermitianEta) and
/// invertibility (SingularEta), detects positive-definiteness and, if so,
/// stores the Cholesky factor as O.
MetricOperator make_metric(const ComplexMatrix& eta, double tol = 1e-10);

/// Smallest eigenvalue of the Hermitian part of eta.
double min_eigenvalue(const MetricOperator& eta);

/// H is eta-pseudo-Hermitian: ||H^H eta - eta H||_max <= tol ||H|| ||eta||.
/// Throws NonHermitianEta if eta itself is not Hermitian within tol.
Check is_pseudo_hermitian(const ComplexMatrix& h, const MetricOperator& eta, double tol);

/// Canonical metric from a biorthonormal system: phi_n phi_n^H on real levels
/// and phi_n phi_m^H + phi_m phi_n^H on each conjugate pair (n, m), matching
/// degeneracy columns in order. For an AllReal spectrum this is Phi Phi^H with
/// O = Phi. Throws UnpairedSpectrum when no Hermitian metric exists.
MetricOperator build_metric(const BiorthonormalSystem& sys, const SpectrumClass& cls);

/// H# = eta^{-1} H^H eta.
ComplexMatrix pseudo_adjoint(const ComplexMatrix& h, const MetricOperator& eta);

/// <<xi|zeta>> = xi^H eta zeta.
Complex indefinite_inner_product(const MetricOperator& eta, const ComplexVector& xi, const ComplexVector& zeta);

/// exp(a) by scaling and squaring with a degree-13 Pade approximant.
ComplexMatrix matrix_exponential(const ComplexMatrix& a);

enum class EvolutionPrecondition {
  /// Return passed = false when H is not eta-pseudo-Hermitian.
  Report,
  /// Throw NotPseudoHermitian instead.
  Enforce,
};

struct EvolutionCheck {
  bool passed = false;
  /// ||U^H eta U - eta||_max / ||eta|| with U = exp(-i H t).
  double residual = 0.0;
  Check pseudo_hermitian;

  explicit operator bool() const noexcept { return passed; }
};

/// Conservation of <<.|.>> under U = exp(-i H t). `passed` requires both the
/// invariance residual and the pseudo-Hermiticity precondition to be within tol.
EvolutionCheck evolution_invariance_check(const ComplexMatrix& h, const MetricOperator& eta, double t, double tol,
                                          EvolutionPrecondition precondition = EvolutionPrecondition::Report);

/// eta1^{-1} eta2, a linear symmetry of H whenever H is pseudo-Hermitian with
/// respect to both metrics.
ComplexMatrix metric_ratio(const MetricOperator& eta1, const MetricOperator& eta2);

}  // namespace pseudoherm
