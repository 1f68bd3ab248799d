#pragma once

#include <vector>

#include "pseudoherm/antilinear.hpp"
#include "pseudoherm/eigensystem.hpp"

namespace pseudoherm {

/// c = U diag(sigma) U^T with U unitary and sigma descending.
struct TakagiFactorization {
  ComplexMatrix u;
  Eigen::VectorXd sigma;
};

/// Takagi factorization of an invertible complex symmetric matrix.
///
/// Computed from the real symmetric 2n x 2n matrix [[Re c, Im c], [Im c, -Re c]],
/// whose positive eigenpairs (sigma_k, (x_k; y_k)) give Takagi vectors
/// u_k = x_k + i y_k satisfying c conj(u_k) = sigma_k u_k. Each u_k is only
/// determined up to sign; the sign is fixed so the first significant entry has
/// positive real part (positive imaginary part if its real part vanishes).
TakagiFactorization takagi(const ComplexMatrix& c, double tol = 1e-10);

/// Invertible v with v v^T = c, namely U diag(sqrt(sigma)).
/// Throws NotSymmetric or SingularInput.
ComplexMatrix symmetric_factor(const ComplexMatrix& c, double tol = 1e-10);

/// psi_n -> psi_n u_n and phi_n -> phi_n (u_n^{-1})^H, level by level.
/// The tolerance of the result is scaled by the largest cond(u_n).
BiorthonormalSystem basis_change(const BiorthonormalSystem& sys, const std::vector<ComplexMatrix>& u_blocks);

/// c^(n) -> u_n^H c^(n) conj(u_n), the coefficient family describing the same tau
/// in the basis produced by basis_change with the same blocks.
CoefficientFamily coefficient_transform(const CoefficientFamily& c, const std::vector<ComplexMatrix>& u_blocks);

struct CanonicalForm {
  BiorthonormalSystem system;
  AntilinearOperator tau;
};

/// Moves to the eigenbasis in which tau(sys, c) has identity coefficients:
/// v_n = symmetric_factor(c^(n)), u_n = (v_n^H)^{-1}.
CanonicalForm canonicalize_tau(const BiorthonormalSystem& sys, const CoefficientFamily& c);

}  // namespace pseudoherm
