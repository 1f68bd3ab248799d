#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pseudoherm/eigensystem.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm {

using Rng = std::mt19937_64;

struct PlantedLevel {
  Complex energy;
  Eigen::Index multiplicity = 1;
};

/// H = S diag(E) S^{-1} with a known similarity S and spectrum.
struct PlantedMatrix {
  ComplexMatrix h;
  ComplexMatrix s;
  std::vector<PlantedLevel> levels;
  SpectrumTag expected = SpectrumTag::AllReal;

  /// Planted eigenvalues with multiplicity, sorted by (Re, Im).
  std::vector<Complex> sorted_eigenvalues() const;
};

enum class PlantedKind { Real, Paired, Unpaired };

std::string_view to_string(PlantedKind kind) noexcept;

/// Entries with i.i.d. standard normal real and imaginary parts.
ComplexMatrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// Random invertible matrix with 2-norm condition number at most max_cond.
ComplexMatrix random_invertible(Eigen::Index n, Rng& rng, double max_cond = 50.0);
ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng);
/// B + B^T for random B, redrawn until well conditioned.
ComplexMatrix random_symmetric_invertible(Eigen::Index n, Rng& rng, double max_cond = 1e3);

/// S diag(levels) S^{-1} with a random well-conditioned S.
PlantedMatrix plant(const std::vector<PlantedLevel>& levels, Rng& rng, double max_cond = 50.0);

/// Random spectrum of the given kind on n sites. Distinct levels stay at least
/// ~0.3 apart; with `degenerate`, one level (or conjugate pair) gets
/// multiplicity 2 or 3 when n allows it. There are always at least two
/// distinct levels when n >= 2.
PlantedMatrix plant_random(PlantedKind kind, Eigen::Index n, Rng& rng, bool degenerate = false);

/// Deterministic mixed ensemble: kinds cycle Real, Paired, Unpaired, dims
/// cycle through [min_dim, max_dim], every other member has a degenerate level.
std::vector<PlantedMatrix> planted_ensemble(std::size_t count, std::uint64_t seed, Eigen::Index min_dim = 2,
                                            Eigen::Index max_dim = 12);

}  // namespace pseudoherm
