#pragma once

#include <utility>

#include "pseudoherm/antilinear.hpp"
#include "pseudoherm/eigensystem.hpp"
#include "pseudoherm/metric.hpp"

namespace pseudoherm {

/// X = eta^{-1} tau, with matrix eta^{-1} m.
AntilinearOperator antilinear_symmetry(const MetricOperator& eta, const AntilinearOperator& tau);

/// [H, X] = 0 for antilinear X: ||H x - x conj(H)||_max <= tol ||H|| ||x||.
Check commutes_with(const ComplexMatrix& h, const AntilinearOperator& x, double tol);

/// [H, S] = 0 for a linear S: ||H S - S H||_max <= tol ||H|| ||S||.
Check commutes_with(const ComplexMatrix& h, const ComplexMatrix& s, double tol);

/// Adjoint of an antilinear operator: x -> x^T.
AntilinearOperator adjoint(const AntilinearOperator& x);

struct InducedSymmetries {
  /// eta^{-1} X^H eta, matrix eta^{-1} x^T conj(eta).
  AntilinearOperator via_eta;
  /// tau^{-1} X^H tau, matrix conj(m^{-1}) conj(x^T) m.
  AntilinearOperator via_tau;
};

/// The pseudo-adjoints of X with respect to eta and tau. Both commute with H
/// whenever X does and H^H = eta H eta^{-1} = tau H tau^{-1}.
InducedSymmetries induced_symmetries(const AntilinearOperator& x, const MetricOperator& eta,
                                     const AntilinearOperator& tau);

/// Per-level leakage of X out of each eigenspace: for level n,
/// ||(1 - Psi_n Phi_n^H) x conj(Psi_n)|| / ||x conj(Psi_n)||. The largest value is returned.
double level_leakage(const BiorthonormalSystem& sys, const AntilinearOperator& x);

/// X is exact when it maps every eigen-level into itself (leakage <= tol).
/// Throws NotASymmetry unless X commutes with the H the system reconstructs.
bool is_exact_symmetry(const BiorthonormalSystem& sys, const AntilinearOperator& x, double tol);

}  // namespace pseudoherm
