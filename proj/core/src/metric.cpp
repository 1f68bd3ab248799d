#include "pseudoherm/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pseudoherm {

namespace {

void require_hermitian(const ComplexMatrix& eta, double tol) {
  require_square_finite(eta, "eta");
  const double r = relative_residual(eta - eta.adjoint(), norm(eta));
  if (r > tol) {
    std::ostringstream os;
    os << "eta is not Hermitian (residual " << r << ")";
    throw Error(ErrorCode::NonHermitianEta, os.str());
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

}  // namespace

MetricOperator make_metric(const ComplexMatrix& eta, double tol) {
  require_hermitian(eta, tol);
  if (!(condition_number(eta) <= kMetricConditionCeiling)) throw Error(ErrorCode::SingularEta, "eta is singular");

  MetricOperator out{hermitian_part(eta), false, std::nullopt};
  Eigen::LLT<ComplexMatrix> llt(out.eta);
  if (llt.info() == Eigen::Success && min_eigenvalue(out) > 0.0) {
    out.positive_definite = true;
    out.factor = llt.matrixL().toDenseMatrix();
  }
  return out;
}

double min_eigenvalue(const MetricOperator& eta) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(eta.eta), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Check is_pseudo_hermitian(const ComplexMatrix& h, const MetricOperator& eta, double tol) {
  require_same_dim(h, eta.eta, "is_pseudo_hermitian");
  require_hermitian(eta.eta, tol);
  const ComplexMatrix diff = h.adjoint() * eta.eta - eta.eta * h;
  const double r = relative_residual(diff, norm(h) * norm(eta.eta));
  return {r <= tol, r};
}

MetricOperator build_metric(const BiorthonormalSystem& sys, const SpectrumClass& cls) {
  if (cls.tag == SpectrumTag::Unpaired)
    throw Error(ErrorCode::UnpairedSpectrum,
                "a non-real eigenvalue has no conjugate partner; no Hermitian metric exists");
  if (cls.pairing.size() != sys.size())
    throw Error(ErrorCode::DimensionMismatch, "spectrum class does not match the system");

  const auto n = sys.dim();
  if (cls.tag == SpectrumTag::AllReal) {
    const ComplexMatrix phi = sys.phi();
    MetricOperator out{hermitian_part(phi * phi.adjoint()), true, phi};
    return out;
  }

  ComplexMatrix eta = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const std::size_t partner = cls.pairing[k];
    const auto& phi = sys.level(k).phi;
    if (partner == k) {
      eta.noalias() += phi * phi.adjoint();
    } else if (k < partner) {
      const auto& phi_bar = sys.level(partner).phi;
      eta.noalias() += phi * phi_bar.adjoint() + phi_bar * phi.adjoint();
    }
  }
  MetricOperator out{hermitian_part(eta), false, std::nullopt};
  out.positive_definite = min_eigenvalue(out) > 0.0;
  if (out.positive_definite) out.factor = Eigen::LLT<ComplexMatrix>(out.eta).matrixL().toDenseMatrix();
  return out;
}

ComplexMatrix pseudo_adjoint(const ComplexMatrix& h, const MetricOperator& eta) {
  require_same_dim(h, eta.eta, "pseudo_adjoint");
  if (!(condition_number(eta.eta) <= kMetricConditionCeiling)) throw Error(ErrorCode::SingularEta, "eta is singular");
  return eta.eta.fullPivLu().solve(h.adjoint() * eta.eta);
}

Complex indefinite_inner_product(const MetricOperator& eta, const ComplexVector& xi, const ComplexVector& zeta) {
  if (xi.size() != eta.dim() || zeta.size() != eta.dim())
    throw Error(ErrorCode::DimensionMismatch, "indefinite_inner_product: vector sizes differ from eta");
  return xi.dot(eta.eta * zeta);
}

ComplexMatrix matrix_exponential(const ComplexMatrix& a) {
  require_square_finite(a, "exponent");
  // Higham (2005) degree-13 coefficients and theta_13.
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const auto n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
  const ComplexMatrix x = a / std::ldexp(1.0, squarings);

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix x2 = x * x;
  const ComplexMatrix x4 = x2 * x2;
  const ComplexMatrix x6 = x4 * x2;
  const ComplexMatrix u = x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
  const ComplexMatrix v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = (r * r).eval();
  return r;
}

EvolutionCheck evolution_invariance_check(const ComplexMatrix& h, const MetricOperator& eta, double t, double tol,
                                          EvolutionPrecondition precondition) {
  EvolutionCheck out;
  out.pseudo_hermitian = is_pseudo_hermitian(h, eta, tol);
  if (!out.pseudo_hermitian.passed && precondition == EvolutionPrecondition::Enforce) {
    std::ostringstream os;
    os << "H is not eta-pseudo-Hermitian (residual " << out.pseudo_hermitian.residual << ")";
    throw Error(ErrorCode::NotPseudoHermitian, os.str());
  }
  const ComplexMatrix u = matrix_exponential(Complex(0.0, -t) * h);
  out.residual = relative_residual(u.adjoint() * eta.eta * u - eta.eta, norm(eta.eta));
  out.passed = out.pseudo_hermitian.passed && out.residual <= tol;
  return out;
}

ComplexMatrix metric_ratio(const MetricOperator& eta1, const MetricOperator& eta2) {
  require_same_dim(eta1.eta, eta2.eta, "metric_ratio");
  if (!(condition_number(eta1.eta) <= kMetricConditionCeiling)) throw Error(ErrorCode::SingularEta, "eta1 is singular");
  return eta1.eta.fullPivLu().solve(eta2.eta);
}

}  // namespace pseudoherm
