#include "pseudoherm/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pseudoherm {

namespace {

bool energy_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct Cluster {
  Complex energy;
  Eigen::Index size;
  std::size_t first;  // index of one raw eigenvalue in the cluster
};

// Single-linkage grouping: two raw eigenvalues share a level iff a chain of
// neighbours within `gap` connects them.
std::vector<Cluster> cluster_eigenvalues(const ComplexVector& raw, double gap) {
  const auto n = static_cast<std::size_t>(raw.size());
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(raw(i) - raw(j)) <= gap) sets.join(i, j);

  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[sets.find(i)].push_back(i);

  std::vector<Cluster> out;
  for (auto& g : groups) {
    if (g.empty()) continue;
    Complex sum{};
    for (std::size_t i : g) sum += raw(static_cast<Eigen::Index>(i));
    out.push_back({sum / static_cast<double>(g.size()), static_cast<Eigen::Index>(g.size()), g.front()});
  }
  // Runs of real parts within `gap` are ordered by imaginary part, so rounding
  // in Re E cannot flip a conjugate pair.
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) { return energy_less(a.energy, b.energy); });
  for (std::size_t lo = 0; lo < out.size();) {
    std::size_t hi = lo + 1;
    while (hi < out.size() && out[hi].energy.real() - out[hi - 1].energy.real() <= gap) ++hi;
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(lo), out.begin() + static_cast<std::ptrdiff_t>(hi),
              [](const Cluster& a, const Cluster& b) { return a.energy.imag() < b.energy.imag(); });
    lo = hi;
  }
  return out;
}

// Deterministic orthonormal basis of span(q) for an orthonormal n x d block q.
// The d rows where q is largest become pivots; q is re-expressed so that its
// pivot rows form the identity, then orthonormalized by Gram-Schmidt with a
// positive real diagonal. A single column ends up with its largest entry real
// and positive.
ComplexMatrix canonical_basis(const ComplexMatrix& q) {
  const auto d = q.cols();
  Eigen::ColPivHouseholderQR<ComplexMatrix> pivoting(q.adjoint());
  std::vector<Eigen::Index> rows(static_cast<std::size_t>(d));
  for (Eigen::Index a = 0; a < d; ++a) rows[static_cast<std::size_t>(a)] = pivoting.colsPermutation().indices()(a);
  std::sort(rows.begin(), rows.end());

  ComplexMatrix pivot_block(d, d);
  for (Eigen::Index a = 0; a < d; ++a) pivot_block.row(a) = q.row(rows[static_cast<std::size_t>(a)]);
  ComplexMatrix b = q * pivot_block.fullPivLu().inverse();

  for (Eigen::Index a = 0; a < d; ++a) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index c = 0; c < a; ++c) b.col(a) -= b.col(c).dot(b.col(a)) * b.col(c);
    b.col(a) /= b.col(a).norm();
  }
  return b;
}

}  // namespace

BiorthonormalSystem::BiorthonormalSystem(std::vector<EigenLevel> levels, double tol, double cluster_gap,
                                         double scale)
    : levels_(std::move(levels)), tol_(tol), cluster_gap_(cluster_gap), scale_(scale) {
  if (levels_.empty()) throw Error(ErrorCode::InvalidInput, "biorthonormal system needs at least one level");
  dim_ = levels_.front().psi.rows();
  Eigen::Index total = 0;
  for (const auto& lv : levels_) {
    if (lv.psi.rows() != dim_ || lv.phi.rows() != dim_ || lv.phi.cols() != lv.psi.cols() || lv.psi.cols() < 1)
      throw Error(ErrorCode::DimensionMismatch, "eigen-level blocks have inconsistent shapes");
    total += lv.multiplicity();
  }
  if (total != dim_) {
    std::ostringstream os;
    os << "multiplicities sum to " << total << ", dimension is " << dim_;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }

  const ComplexMatrix ps = psi();
  const ComplexMatrix ph = phi();
  const ComplexMatrix id = ComplexMatrix::Identity(dim_, dim_);
  biorth_residual_ = std::max(max_abs(ph.adjoint() * ps - id), max_abs(ps * ph.adjoint() - id));
  if (!(biorth_residual_ <= tol_)) {
    std::ostringstream os;
    os << "biorthonormality residual " << biorth_residual_ << " exceeds tol " << tol_;
    throw Error(ErrorCode::NotDiagonalizable, os.str());
  }
}

ComplexMatrix BiorthonormalSystem::psi() const {
  ComplexMatrix out(dim_, dim_);
  Eigen::Index col = 0;
  for (const auto& lv : levels_) {
    out.middleCols(col, lv.multiplicity()) = lv.psi;
    col += lv.multiplicity();
  }
  return out;
}

ComplexMatrix BiorthonormalSystem::phi() const {
  ComplexMatrix out(dim_, dim_);
  Eigen::Index col = 0;
  for (const auto& lv : levels_) {
    out.middleCols(col, lv.multiplicity()) = lv.phi;
    col += lv.multiplicity();
  }
  return out;
}

ComplexVector BiorthonormalSystem::column_energies() const {
  ComplexVector out(dim_);
  Eigen::Index col = 0;
  for (const auto& lv : levels_)
    for (Eigen::Index a = 0; a < lv.multiplicity(); ++a) out(col++) = lv.energy;
  return out;
}

BiorthonormalSystem biorthonormal_eigensystem(const ComplexMatrix& h, const EigensystemOptions& opts) {
  require_square_finite(h, "H");
  const Eigen::Index n = h.rows();
  const double scale = norm(h);
  const double gap = opts.cluster_gap.value_or(1e-8 * scale);

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(h, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NotDiagonalizable, "eigenvalue iteration did not converge");
  const auto clusters = cluster_eigenvalues(solver.eigenvalues(), gap);

  // Simple levels take the Schur eigenvector, which stays backward stable when
  // the eigenvalue is ill-conditioned. Degenerate levels take the right
  // singular vectors of H - E for the d smallest singular values, since the
  // Schur vectors of a repeated eigenvalue need not span its eigenspace.
  ComplexMatrix psi(n, n);
  std::vector<Eigen::Index> offsets;
  Eigen::Index col = 0;
  for (const auto& c : clusters) {
    if (c.size == 1) {
      const ComplexVector v = solver.eigenvectors().col(static_cast<Eigen::Index>(c.first));
      psi.col(col) = canonical_basis(v / v.norm());
    } else {
      const ComplexMatrix shifted = h - c.energy * ComplexMatrix::Identity(n, n);
      Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
      psi.middleCols(col, c.size) = canonical_basis(svd.matrixV().rightCols(c.size));
    }
    offsets.push_back(col);
    col += c.size;
  }

  const double cond = condition_number(psi);
  if (!(cond <= opts.cond_ceiling)) {
    std::ostringstream os;
    os << "eigenvector matrix condition number " << cond << " exceeds " << opts.cond_ceiling;
    throw Error(ErrorCode::NotDiagonalizable, os.str());
  }
  const ComplexMatrix phi = psi.fullPivLu().inverse().adjoint();

  std::vector<EigenLevel> levels;
  levels.reserve(clusters.size());
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    const auto d = clusters[k].size;
    EigenLevel lv;
    lv.psi = psi.middleCols(offsets[k], d);
    lv.phi = phi.middleCols(offsets[k], d);
    lv.energy = (lv.phi.adjoint() * h * lv.psi).trace() / static_cast<double>(d);
    levels.push_back(std::move(lv));
  }

  BiorthonormalSystem sys(std::move(levels), opts.tol, gap, scale);
  const double res = eigen_residual(h, sys);
  if (!(res <= opts.tol)) {
    std::size_t worst = 0;
    double worst_res = -1.0;
    for (std::size_t k = 0; k < sys.size(); ++k) {
      const auto& lv = sys.level(k);
      const double r = std::max(max_abs(h * lv.psi - lv.energy * lv.psi) / lv.psi.norm(),
                                max_abs(h.adjoint() * lv.phi - std::conj(lv.energy) * lv.phi) / lv.phi.norm());
      if (r > worst_res) {
        worst = k;
        worst_res = r;
      }
    }
    const auto& lv = sys.level(worst);
    std::ostringstream os;
    os << "eigenvector residual " << res << " exceeds tol " << opts.tol << " at level E = " << lv.energy
       << " (d = " << lv.multiplicity() << ")";
    if (lv.multiplicity() > 1)
      os << "; eigenvalues merged by the cluster gap " << gap << " are not degenerate, or H is near-defective";
    else
      os << "; H is defective or near-defective";
    throw Error(ErrorCode::NotDiagonalizable, os.str());
  }
  return sys;
}

BiorthonormalSystem from_right_eigenvectors(const std::vector<Complex>& energies,
                                            const std::vector<ComplexMatrix>& psi_blocks, double tol,
                                            double cluster_gap, double scale, double cond_ceiling) {
  if (energies.size() != psi_blocks.size() || psi_blocks.empty())
    throw Error(ErrorCode::DimensionMismatch, "energies and eigenvector blocks differ in count");
  const auto n = psi_blocks.front().rows();
  Eigen::Index total = 0;
  for (const auto& b : psi_blocks) {
    if (b.rows() != n) throw Error(ErrorCode::DimensionMismatch, "eigenvector blocks differ in row count");
    total += b.cols();
  }
  if (total != n) throw Error(ErrorCode::DimensionMismatch, "eigenvector blocks do not form a square matrix");

  ComplexMatrix psi(n, n);
  Eigen::Index col = 0;
  for (const auto& b : psi_blocks) {
    psi.middleCols(col, b.cols()) = b;
    col += b.cols();
  }
  const double cond = condition_number(psi);
  if (!(cond <= cond_ceiling)) {
    std::ostringstream os;
    os << "eigenvector matrix condition number " << cond << " exceeds " << cond_ceiling;
    throw Error(ErrorCode::NotDiagonalizable, os.str());
  }
  const ComplexMatrix phi = psi.fullPivLu().inverse().adjoint();

  std::vector<EigenLevel> levels;
  col = 0;
  for (std::size_t k = 0; k < psi_blocks.size(); ++k) {
    const auto d = psi_blocks[k].cols();
    levels.push_back({energies[k], psi_blocks[k], phi.middleCols(col, d)});
    col += d;
  }
  return BiorthonormalSystem(std::move(levels), tol, cluster_gap, scale);
}

std::string_view to_string(SpectrumTag tag) noexcept {
  switch (tag) {
    case SpectrumTag::AllReal: return "AllReal";
    case SpectrumTag::ConjugatePaired: return "ConjugatePaired";
    case SpectrumTag::Unpaired: return "Unpaired";
  }
  return "Unknown";
}

double default_realness_tol(const BiorthonormalSystem& sys) noexcept {
  return sys.cluster_gap() > 0.0 ? sys.cluster_gap() : 1e-8;
}

SpectrumClass classify_spectrum(const BiorthonormalSystem& sys) {
  return classify_spectrum(sys, default_realness_tol(sys));
}

SpectrumClass classify_spectrum(const BiorthonormalSystem& sys, double realness_tol) {
  const std::size_t count = sys.size();
  SpectrumClass out;
  out.realness_tol = realness_tol;
  out.pairing.resize(count);
  std::iota(out.pairing.begin(), out.pairing.end(), 0);
  out.unpaired.assign(count, false);

  bool any_pair = false;
  bool any_unpaired = false;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& li = sys.level(i);
    if (std::abs(li.energy.imag()) <= realness_tol) continue;

    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < count; ++j) {
      if (j == i) continue;
      const auto& lj = sys.level(j);
      if (std::abs(lj.energy.imag()) <= realness_tol) continue;
      if (std::abs(lj.energy - std::conj(li.energy)) <= realness_tol) candidates.push_back(j);
    }
    if (candidates.size() > 1) {
      std::ostringstream os;
      os << "level " << i << " (E = " << li.energy << ") has " << candidates.size()
         << " conjugate candidates within " << realness_tol;
      throw Error(ErrorCode::AmbiguousPairing, os.str());
    }
    if (candidates.empty() || sys.level(candidates.front()).multiplicity() != li.multiplicity()) {
      out.unpaired[i] = true;
      any_unpaired = true;
      continue;
    }
    out.pairing[i] = candidates.front();
    any_pair = true;
  }

  // Candidate relations are symmetric, but a degeneracy mismatch on one side
  // must leave both sides unpaired.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = out.pairing[i];
    if (j != i && out.pairing[j] != i) {
      out.pairing[i] = i;
      out.unpaired[i] = true;
      any_unpaired = true;
    }
  }

  out.tag = any_unpaired ? SpectrumTag::Unpaired : (any_pair ? SpectrumTag::ConjugatePaired : SpectrumTag::AllReal);
  return out;
}

ComplexMatrix reconstruct(const BiorthonormalSystem& sys, bool conjugate) {
  const auto n = sys.dim();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& lv : sys.levels()) {
    if (conjugate)
      out.noalias() += std::conj(lv.energy) * lv.phi * lv.psi.adjoint();
    else
      out.noalias() += lv.energy * lv.psi * lv.phi.adjoint();
  }
  return out;
}

double eigen_residual(const ComplexMatrix& h, const BiorthonormalSystem& sys) {
  if (h.rows() != sys.dim() || h.cols() != sys.dim())
    throw Error(ErrorCode::DimensionMismatch, "eigen_residual: H and system dimensions differ");
  const ComplexMatrix ps = sys.psi();
  const ComplexMatrix ph = sys.phi();
  const ComplexVector e = sys.column_energies();
  const double scale = std::max(norm(h), 1e-300);
  const ComplexMatrix right = h * ps - ps * e.asDiagonal();
  const ComplexMatrix left = h.adjoint() * ph - ph * e.conjugate().asDiagonal();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < sys.dim(); ++k) {
    worst = std::max(worst, right.col(k).cwiseAbs().maxCoeff() / (scale * ps.col(k).norm()));
    worst = std::max(worst, left.col(k).cwiseAbs().maxCoeff() / (scale * ph.col(k).norm()));
  }
  return worst;
}

}  // namespace pseudoherm
