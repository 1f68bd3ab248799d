#include "pseudoherm/planted.hpp"

#include <algorithm>
#include <numeric>

namespace pseudoherm {

namespace {

bool energy_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Real parts come from distinct slots 0.7 apart with +-0.1 jitter, so distinct
// levels never collide.
std::vector<double> distinct_reals(std::size_t count, Rng& rng) {
  std::vector<int> slots(std::max<std::size_t>(count + 4, 16));
  std::iota(slots.begin(), slots.end(), -static_cast<int>(slots.size() / 2));
  std::shuffle(slots.begin(), slots.end(), rng);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = 0.7 * slots[i] + jitter(rng);
  return out;
}

}  // namespace

std::vector<Complex> PlantedMatrix::sorted_eigenvalues() const {
  std::vector<Complex> out;
  for (const auto& lv : levels)
    for (Eigen::Index a = 0; a < lv.multiplicity; ++a) out.push_back(lv.energy);
  std::sort(out.begin(), out.end(), energy_less);
  return out;
}

std::string_view to_string(PlantedKind kind) noexcept {
  switch (kind) {
    case PlantedKind::Real: return "real";
    case PlantedKind::Paired: return "paired";
    case PlantedKind::Unpaired: return "unpaired";
  }
  return "unknown";
}

ComplexMatrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = Complex(g(rng), g(rng));
  return out;
}

ComplexMatrix random_invertible(Eigen::Index n, Rng& rng, double max_cond) {
  for (;;) {
    ComplexMatrix s = random_complex(n, n, rng);
    if (condition_number(s) <= max_cond) return s;
  }
}

ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  const ComplexMatrix b = random_complex(n, n, rng);
  return 0.5 * (b + b.adjoint());
}

ComplexMatrix random_symmetric_invertible(Eigen::Index n, Rng& rng, double max_cond) {
  for (;;) {
    const ComplexMatrix b = random_complex(n, n, rng);
    ComplexMatrix c = b + b.transpose();
    if (condition_number(c) <= max_cond) return c;
  }
}

PlantedMatrix plant(const std::vector<PlantedLevel>& levels, Rng& rng, double max_cond) {
  Eigen::Index n = 0;
  for (const auto& lv : levels) n += lv.multiplicity;
  if (n < 1) throw Error(ErrorCode::InvalidInput, "planted spectrum is empty");

  ComplexVector diag(n);
  Eigen::Index col = 0;
  for (const auto& lv : levels)
    for (Eigen::Index a = 0; a < lv.multiplicity; ++a) diag(col++) = lv.energy;

  PlantedMatrix out;
  out.s = random_invertible(n, rng, max_cond);
  out.h = out.s * diag.asDiagonal() * out.s.fullPivLu().inverse();
  out.levels = levels;

  bool any_pair = false;
  bool any_unpaired = false;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].energy.imag() == 0.0) continue;
    const bool partnered = std::any_of(levels.begin(), levels.end(), [&](const PlantedLevel& o) {
      return o.energy == std::conj(levels[i].energy) && o.multiplicity == levels[i].multiplicity;
    });
    (partnered ? any_pair : any_unpaired) = true;
  }
  out.expected = any_unpaired ? SpectrumTag::Unpaired : (any_pair ? SpectrumTag::ConjugatePaired : SpectrumTag::AllReal);
  return out;
}

PlantedMatrix plant_random(PlantedKind kind, Eigen::Index n, Rng& rng, bool degenerate) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "dimension must be >= 1");
  if (kind == PlantedKind::Paired && n < 2) throw Error(ErrorCode::InvalidInput, "a conjugate pair needs n >= 2");

  std::uniform_real_distribution<double> imag_part(0.3, 1.5);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<PlantedLevel> levels;
  Eigen::Index remaining = n;
  auto reals = distinct_reals(static_cast<std::size_t>(n), rng);
  std::size_t next_real = 0;

  // The "special" level set first: a pair for Paired, a lone complex level for Unpaired.
  // A degenerate Real or Unpaired level leaves room for one more level, so the
  // matrix never collapses to E * 1.
  Eigen::Index mult = 1;
  if (degenerate) {
    const Eigen::Index copies = kind == PlantedKind::Paired ? 2 : 1;
    const Eigen::Index spare = kind == PlantedKind::Paired ? 0 : 1;
    if (remaining >= 3 * copies + spare && coin(rng)) mult = 3;
    else if (remaining >= 2 * copies + spare) mult = 2;
  }
  if (kind == PlantedKind::Paired) {
    const Complex e(reals[next_real++], imag_part(rng));
    levels.push_back({e, mult});
    levels.push_back({std::conj(e), mult});
    remaining -= 2 * mult;
  } else if (kind == PlantedKind::Unpaired) {
    levels.push_back({Complex(reals[next_real++], imag_part(rng)), mult});
    remaining -= mult;
  } else {
    levels.push_back({Complex(reals[next_real++], 0.0), mult});
    remaining -= mult;
  }

  // Fill up: real levels, plus extra conjugate pairs for Paired / Unpaired kinds.
  while (remaining > 0) {
    if (kind != PlantedKind::Real && remaining >= 2 && coin(rng)) {
      const Complex e(reals[next_real++], imag_part(rng));
      levels.push_back({e, 1});
      levels.push_back({std::conj(e), 1});
      remaining -= 2;
    } else {
      levels.push_back({Complex(reals[next_real++], 0.0), 1});
      remaining -= 1;
    }
  }
  return plant(levels, rng);
}

std::vector<PlantedMatrix> planted_ensemble(std::size_t count, std::uint64_t seed, Eigen::Index min_dim,
                                            Eigen::Index max_dim) {
  Rng rng(seed);
  std::vector<PlantedMatrix> out;
  out.reserve(count);
  const PlantedKind kinds[] = {PlantedKind::Real, PlantedKind::Paired, PlantedKind::Unpaired};
  const Eigen::Index span = max_dim - min_dim + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const PlantedKind kind = kinds[i % 3];
    Eigen::Index n = min_dim + static_cast<Eigen::Index>((i / 3) % static_cast<std::size_t>(span));
    if (kind == PlantedKind::Paired) n = std::max<Eigen::Index>(n, 2);
    out.push_back(plant_random(kind, n, rng, i % 2 == 1));
  }
  return out;
}

}  // namespace pseudoherm
