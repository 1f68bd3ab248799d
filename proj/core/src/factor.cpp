#include "pseudoherm/factor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pseudoherm {

namespace {

void require_blocks(const BiorthonormalSystem& sys, const std::vector<ComplexMatrix>& u_blocks) {
  if (u_blocks.size() != sys.size()) {
    std::ostringstream os;
    os << u_blocks.size() << " basis blocks for " << sys.size() << " levels";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  for (std::size_t n = 0; n < sys.size(); ++n) {
    const auto d = sys.level(n).multiplicity();
    if (u_blocks[n].rows() != d || u_blocks[n].cols() != d)
      throw Error(ErrorCode::DimensionMismatch, "basis block does not match level multiplicity");
  }
}

void fix_sign(Eigen::Ref<ComplexVector> u) {
  const double cutoff = 1e-8 * u.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u(i)) <= cutoff) continue;
    const double key = std::abs(u(i).real()) > cutoff ? u(i).real() : u(i).imag();
    if (key < 0.0) u = -u;
    return;
  }
}

}  // namespace

TakagiFactorization takagi(const ComplexMatrix& c, double tol) {
  require_square_finite(c, "c");
  const double scale = norm(c);
  if (relative_residual(c - c.transpose(), scale) > tol)
    throw Error(ErrorCode::NotSymmetric, "matrix is not complex symmetric");

  const auto n = c.rows();
  const ComplexMatrix sym = 0.5 * (c + c.transpose());
  Eigen::MatrixXd embed(2 * n, 2 * n);
  embed << sym.real(), sym.imag(), sym.imag(), -sym.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(embed);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::SingularInput, "eigen-solver failed on Takagi embedding");

  // Eigenvalues are ascending and come in +/- pairs; the top n are the singular values.
  const auto& evals = es.eigenvalues();
  const double smax = std::max(evals(2 * n - 1), 0.0);
  const double smin = evals(n);
  if (!(smin > 0.0) || !(smax / smin <= kDefaultConditionCeiling))
    throw Error(ErrorCode::SingularInput, "symmetric matrix is singular");

  TakagiFactorization out{ComplexMatrix(n, n), Eigen::VectorXd(n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = 2 * n - 1 - k;
    out.sigma(k) = evals(src);
    const auto v = es.eigenvectors().col(src);
    for (Eigen::Index i = 0; i < n; ++i) out.u(i, k) = Complex(v(i), v(n + i));
    fix_sign(out.u.col(k));
  }
  return out;
}

ComplexMatrix symmetric_factor(const ComplexMatrix& c, double tol) {
  const auto t = takagi(c, tol);
  return t.u * t.sigma.cwiseSqrt().cast<Complex>().asDiagonal();
}

BiorthonormalSystem basis_change(const BiorthonormalSystem& sys, const std::vector<ComplexMatrix>& u_blocks) {
  require_blocks(sys, u_blocks);
  std::vector<EigenLevel> levels;
  levels.reserve(sys.size());
  double worst_cond = 1.0;
  for (std::size_t n = 0; n < sys.size(); ++n) {
    const auto& lv = sys.level(n);
    const double cond = condition_number(u_blocks[n]);
    if (!(cond <= kDefaultConditionCeiling)) {
      std::ostringstream os;
      os << "basis block " << n << " is singular (condition number " << cond << ")";
      throw Error(ErrorCode::SingularBlock, os.str());
    }
    worst_cond = std::max(worst_cond, cond);
    const ComplexMatrix u_inv = u_blocks[n].fullPivLu().inverse();
    levels.push_back({lv.energy, lv.psi * u_blocks[n], lv.phi * u_inv.adjoint()});
  }
  return BiorthonormalSystem(std::move(levels), sys.tol() * worst_cond, sys.cluster_gap(), sys.scale());
}

CoefficientFamily coefficient_transform(const CoefficientFamily& c, const std::vector<ComplexMatrix>& u_blocks) {
  if (c.blocks.size() != u_blocks.size())
    throw Error(ErrorCode::DimensionMismatch, "coefficient family and basis blocks differ in length");
  CoefficientFamily out;
  out.blocks.reserve(c.blocks.size());
  for (std::size_t n = 0; n < c.blocks.size(); ++n) {
    const auto& u = u_blocks[n];
    if (u.rows() != c.blocks[n].rows() || u.cols() != c.blocks[n].cols())
      throw Error(ErrorCode::DimensionMismatch, "basis block does not match coefficient block");
    if (!(condition_number(u) <= kDefaultConditionCeiling))
      throw Error(ErrorCode::SingularBlock, "basis block is singular");
    out.blocks.push_back(u.adjoint() * c.blocks[n] * u.conjugate());
  }
  return out;
}

CanonicalForm canonicalize_tau(const BiorthonormalSystem& sys, const CoefficientFamily& c) {
  validate_coefficients(sys, c);
  std::vector<ComplexMatrix> u_blocks;
  u_blocks.reserve(c.blocks.size());
  for (const auto& block : c.blocks) {
    const ComplexMatrix v = symmetric_factor(block, sys.tol());
    u_blocks.push_back(v.adjoint().fullPivLu().inverse());
  }
  BiorthonormalSystem canonical = basis_change(sys, u_blocks);
  AntilinearOperator tau = canonical_tau(canonical);
  return {std::move(canonical), std::move(tau)};
}

}  // namespace pseudoherm
