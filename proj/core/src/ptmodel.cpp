#include "pseudoherm/ptmodel.hpp"

#include <cmath>
#include <sstream>

#include "pseudoherm/factor.hpp"

namespace pseudoherm {

namespace {

bool has_parity(const Eigen::VectorXd& v, double sign) {
  const auto n = v.size();
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < n; ++k)
    if (std::abs(v(k) - sign * v(n - 1 - k)) > 1e-12 * scale) return false;
  return true;
}

ComplexMatrix orthonormal_basis(const ComplexMatrix& block) {
  Eigen::HouseholderQR<ComplexMatrix> qr(block);
  return qr.householderQ() * ComplexMatrix::Identity(block.rows(), block.cols());
}

}  // namespace

Eigen::VectorXd LatticeSpec::grid() const {
  Eigen::VectorXd x(n_sites);
  const double h = spacing();
  const Eigen::Index centre = (n_sites - 1) / 2;
  for (Eigen::Index k = 0; k < n_sites; ++k) x(k) = static_cast<double>(k - centre) * h;
  return x;
}

LatticeSpec make_lattice(Eigen::Index n_sites, double half_width, double mass, const Potential& v1,
                         const Potential& v2, double eps) {
  LatticeSpec spec{n_sites, half_width, mass, {}, {}};
  if (n_sites < 3 || n_sites % 2 == 0)
    throw Error(ErrorCode::InvalidInput, "lattice needs an odd number of sites >= 3");
  const Eigen::VectorXd x = spec.grid();
  spec.v1 = x.unaryExpr(v1);
  spec.v2 = eps * x.unaryExpr(v2);
  return spec;
}

void validate(const LatticeSpec& spec) {
  if (spec.n_sites < 3 || spec.n_sites % 2 == 0)
    throw Error(ErrorCode::InvalidInput, "lattice needs an odd number of sites >= 3");
  if (!(spec.half_width > 0.0) || !std::isfinite(spec.half_width))
    throw Error(ErrorCode::InvalidInput, "half-width L must be positive");
  if (!(spec.mass > 0.0) || !std::isfinite(spec.mass)) throw Error(ErrorCode::InvalidInput, "mass must be positive");
  if (spec.v1.size() != spec.n_sites || spec.v2.size() != spec.n_sites)
    throw Error(ErrorCode::DimensionMismatch, "potential samples must have one value per site");
  if (!spec.v1.allFinite() || !spec.v2.allFinite())
    throw Error(ErrorCode::NonFinite, "potential samples have NaN/Inf entries");
  if (!has_parity(spec.v1, 1.0)) throw Error(ErrorCode::AsymmetricPotential, "v1 is not even about x = 0");
  if (!has_parity(spec.v2, -1.0)) throw Error(ErrorCode::AsymmetricPotential, "v2 is not odd about x = 0");
}

ComplexMatrix build_pt_hamiltonian(const LatticeSpec& spec) {
  validate(spec);
  const auto n = spec.n_sites;
  const double h = spec.spacing();
  const double hop = -1.0 / (2.0 * spec.mass * h * h);

  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out(k, k) = Complex(-2.0 * hop + spec.v1(k), spec.v2(k));
    if (k + 1 < n) out(k, k + 1) = out(k + 1, k) = hop;
  }
  return out;
}

ComplexMatrix parity_matrix(Eigen::Index n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "parity matrix needs n >= 1");
  return ComplexMatrix::Identity(n, n).rowwise().reverse();
}

AntilinearOperator time_reversal(Eigen::Index n) { return AntilinearOperator::conjugation(n); }

Check is_parity_pseudo_hermitian(const ComplexMatrix& h, const ComplexMatrix& p, double tol) {
  require_same_dim(h, p, "is_parity_pseudo_hermitian");
  const double r = relative_residual(h.adjoint() * p - p * h, norm(h));
  return {r <= tol, r};
}

Check is_pt_symmetric(const ComplexMatrix& h, const ComplexMatrix& p, double tol) {
  require_same_dim(h, p, "is_pt_symmetric");
  const double r = relative_residual(h * p - p * h.conjugate(), norm(h));
  return {r <= tol, r};
}

MetricOperator eta_from_tau_pt(const ComplexMatrix& h, const AntilinearOperator& tau, const ComplexMatrix& p,
                               double tol) {
  require_square_finite(h, "H");
  require_same_dim(h, tau.m, "eta_from_tau_pt");
  require_same_dim(h, p, "eta_from_tau_pt");
  if (const Check pt = is_pt_symmetric(h, p, tol); !pt.passed) {
    std::ostringstream os;
    os << "H does not commute with PT (residual " << pt.residual << ")";
    throw Error(ErrorCode::NotPTSymmetric, os.str());
  }

  const ComplexMatrix eta = tau.m * p.conjugate();
  const double herm = relative_residual(eta - eta.adjoint(), norm(eta));
  if (herm > tol) {
    std::ostringstream os;
    os << "tau PT is not Hermitian (residual " << herm << "); tau is not adapted to H and PT";
    throw Error(ErrorCode::ResultNotHermitian, os.str());
  }
  MetricOperator out = make_metric(eta, tol);
  if (const Check ph = is_pseudo_hermitian(h, out, tol); !ph.passed) {
    std::ostringstream os;
    os << "H is not pseudo-Hermitian with respect to tau PT (residual " << ph.residual << ")";
    throw Error(ErrorCode::NotPseudoHermitian, os.str());
  }
  return out;
}

BiorthonormalSystem pt_adapted_system(const BiorthonormalSystem& sys, const SpectrumClass& cls,
                                      const ComplexMatrix& p) {
  if (cls.tag == SpectrumTag::Unpaired)
    throw Error(ErrorCode::NotPTSymmetric, "a PT-symmetric spectrum cannot contain unpaired levels");
  if (cls.pairing.size() != sys.size() || p.rows() != sys.dim())
    throw Error(ErrorCode::DimensionMismatch, "pt_adapted_system: inputs do not match");

  const double tol = std::max(1e-8, 100.0 * sys.tol());
  std::vector<ComplexMatrix> blocks(sys.size());
  std::vector<Complex> energies(sys.size());
  for (std::size_t k = 0; k < sys.size(); ++k) {
    energies[k] = sys.level(k).energy;
    const std::size_t partner = cls.pairing[k];
    if (partner < k) continue;

    const ComplexMatrix q = orthonormal_basis(sys.level(k).psi);
    const ComplexMatrix image = p * q.conjugate();
    if (partner == k) {
      // PT restricted to a real level is q -> q W with W unitary and symmetric;
      // W = v v^T with v unitary gives PT-invariant columns q v.
      const ComplexMatrix w = q.adjoint() * image;
      if (max_abs(image - q * w) > tol) throw Error(ErrorCode::NotPTSymmetric, "PT does not preserve a real level");
      blocks[k] = q * symmetric_factor(w, tol);
    } else {
      const auto& target = sys.level(partner);
      const ComplexMatrix proj = target.psi * (target.phi.adjoint() * image);
      if (max_abs(image - proj) > tol)
        throw Error(ErrorCode::NotPTSymmetric, "PT does not map a level onto its conjugate partner");
      blocks[k] = q;
      blocks[partner] = image;
    }
  }
  return from_right_eigenvectors(energies, blocks, sys.tol(), sys.cluster_gap(), sys.scale());
}

}  // namespace pseudoherm
