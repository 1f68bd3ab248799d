#pragma once

#include <functional>

#include "pseudoherm/antilinear.hpp"
#include "pseudoherm/eigensystem.hpp"
#include "pseudoherm/metric.hpp"

namespace pseudoherm {

/// Uniform grid x_k = (k - (n-1)/2) h on [-L, L] with an odd number of sites,
/// so the parity centre is a grid point and x_{n-1-k} = -x_k exactly.
struct LatticeSpec {
  Eigen::Index n_sites = 0;
  double half_width = 0.0;
  double mass = 1.0;
  /// Real potential samples; v1 must be even and v2 odd about the centre.
  Eigen::VectorXd v1;
  Eigen::VectorXd v2;

  double spacing() const { return 2.0 * half_width / static_cast<double>(n_sites - 1); }
  Eigen::VectorXd grid() const;
};

using Potential = std::function<double(double)>;

/// Samples v1 and eps * v2 on the grid.
LatticeSpec make_lattice(Eigen::Index n_sites, double half_width, double mass, const Potential& v1,
                         const Potential& v2, double eps = 1.0);

/// Throws InvalidInput for a bad grid or mass and AsymmetricPotential when the
/// parity of v1 / v2 is violated (relative tolerance 1e-12).
void validate(const LatticeSpec& spec);

/// H = K + diag(v1) + i diag(v2) with the central-difference kinetic term
/// K = -1/(2 m h^2) tridiag(1, -2, 1) and Dirichlet boundaries.
ComplexMatrix build_pt_hamiltonian(const LatticeSpec& spec);

/// Site reversal; P = P^H = P^{-1}.
ComplexMatrix parity_matrix(Eigen::Index n);

/// Complex conjugation in the position basis.
AntilinearOperator time_reversal(Eigen::Index n);

/// P-pseudo-Hermiticity in intertwining form: ||H^H P - P H||_max / ||H||.
Check is_parity_pseudo_hermitian(const ComplexMatrix& h, const ComplexMatrix& p, double tol);

/// [PT, H] = 0 in matrix form: ||H P - P conj(H)||_max / ||H||.
Check is_pt_symmetric(const ComplexMatrix& h, const ComplexMatrix& p, double tol);

/// eta = tau PT, the linear map with matrix m conj(P).
///
/// Throws NotPTSymmetric if H does not commute with PT, ResultNotHermitian if
/// the product is not Hermitian and NotPseudoHermitian if H fails to be
/// eta-pseudo-Hermitian (tau does not belong to H).
MetricOperator eta_from_tau_pt(const ComplexMatrix& h, const AntilinearOperator& tau, const ComplexMatrix& p,
                               double tol);

/// Re-gauges the eigenbasis so that PT psi_{n,a} = psi_{pair(n),a}: real levels
/// get PT-invariant columns, and the partner of each conjugate pair is defined
/// as the PT image of the first member. In this basis the canonical tau gives a
/// Hermitian tau PT. Throws NotPTSymmetric if some level is not mapped as expected.
BiorthonormalSystem pt_adapted_system(const BiorthonormalSystem& sys, const SpectrumClass& cls,
                                      const ComplexMatrix& p);

}  // namespace pseudoherm
