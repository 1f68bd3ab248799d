#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pseudoherm/linalg.hpp"

namespace pseudoherm {

/// One eigen-level E_n with its right (psi) and left (phi) eigenvector blocks,
/// stored as n x d_n column blocks.
struct EigenLevel {
  Complex energy;
  ComplexMatrix psi;
  ComplexMatrix phi;

  Eigen::Index multiplicity() const noexcept { return psi.cols(); }
};

struct EigensystemOptions {
  double tol = 1e-10;
  /// Raw eigenvalues closer than this join one level. Defaults to 1e-8 * ||H||.
  std::optional<double> cluster_gap;
  /// Eigenvector matrices with a larger condition number are rejected as defective.
  double cond_ceiling = kDefaultConditionCeiling;
};

/// Complete biorthonormal eigensystem {(psi_{n,a}, phi_{n,a})}.
///
/// The constructor checks the structural invariants (block shapes, total
/// multiplicity) and that the stacked blocks satisfy Phi^H Psi = 1 and
/// Psi Phi^H = 1 within `tol`; it throws NotDiagonalizable otherwise.
class BiorthonormalSystem {
 public:
  BiorthonormalSystem(std::vector<EigenLevel> levels, double tol, double cluster_gap, double scale);

  Eigen::Index dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return levels_.size(); }
  const std::vector<EigenLevel>& levels() const noexcept { return levels_; }
  const EigenLevel& level(std::size_t n) const { return levels_.at(n); }

  double tol() const noexcept { return tol_; }
  double cluster_gap() const noexcept { return cluster_gap_; }
  /// ||H|| of the matrix the system was built from.
  double scale() const noexcept { return scale_; }

  /// Stacked right / left eigenvector matrices, columns in level order.
  ComplexMatrix psi() const;
  ComplexMatrix phi() const;
  /// Eigenvalue of each stacked column.
  ComplexVector column_energies() const;

  /// max(||Phi^H Psi - 1||_max, ||Psi Phi^H - 1||_max).
  double biorthonormality_residual() const noexcept { return biorth_residual_; }

 private:
  std::vector<EigenLevel> levels_;
  Eigen::Index dim_ = 0;
  double tol_ = 0.0;
  double cluster_gap_ = 0.0;
  double scale_ = 0.0;
  double biorth_residual_ = 0.0;
};

/// Diagonalizes H into a biorthonormal system.
///
/// Raw eigenvalues are grouped by the cluster-gap rule and levels are ordered
/// by Re E, real parts within the gap by Im E. Each level's psi block is an
/// orthonormal basis of ker(H - E) in a fixed gauge (a single eigenvector has its largest entry real
/// and positive); the phi blocks are the matching columns of (Psi^{-1})^H.
BiorthonormalSystem biorthonormal_eigensystem(const ComplexMatrix& h, const EigensystemOptions& opts = {});

/// Builds a system from energies and right-eigenvector blocks, deriving the
/// phi blocks from (Psi^{-1})^H. Throws NotDiagonalizable if Psi is singular.
BiorthonormalSystem from_right_eigenvectors(const std::vector<Complex>& energies,
                                            const std::vector<ComplexMatrix>& psi_blocks, double tol,
                                            double cluster_gap, double scale,
                                            double cond_ceiling = kDefaultConditionCeiling);

enum class SpectrumTag { AllReal, ConjugatePaired, Unpaired };

std::string_view to_string(SpectrumTag tag) noexcept;

struct SpectrumClass {
  SpectrumTag tag = SpectrumTag::AllReal;
  /// pairing[n] is the level carrying conj(E_n); identity on real and unpaired levels.
  std::vector<std::size_t> pairing;
  /// Non-real levels without a conjugate partner.
  std::vector<bool> unpaired;
  double realness_tol = 0.0;

  bool is_real_level(std::size_t n) const { return pairing.at(n) == n && !unpaired.at(n); }
};

/// Realness tolerance used when none is given: the system's cluster gap.
double default_realness_tol(const BiorthonormalSystem& sys) noexcept;

/// Throws AmbiguousPairing when a non-real level has more than one
/// conjugate candidate within `realness_tol`.
SpectrumClass classify_spectrum(const BiorthonormalSystem& sys, double realness_tol);
SpectrumClass classify_spectrum(const BiorthonormalSystem& sys);

/// sum E_n psi phi^H (= H), or with `conjugate` sum E_n^* phi psi^H (= H^H).
ComplexMatrix reconstruct(const BiorthonormalSystem& sys, bool conjugate = false);

/// Largest column backward error: ||H psi - E psi||_max / (||H|| ||psi||) and
/// ||H^H phi - E^* phi||_max / (||H|| ||phi||) over all columns.
double eigen_residual(const ComplexMatrix& h, const BiorthonormalSystem& sys);

}  // namespace pseudoherm
