#include "pseudoherm/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace pseudoherm {

namespace {

constexpr std::string_view kCodeNames[] = {
    "NonFinite",          "DimensionMismatch",      "InvalidInput",
    "NotDiagonalizable",  "AmbiguousPairing",       "AsymmetricCoefficients",
    "SingularCoefficients", "NonHermitianEta",      "SingularEta",
    "SingularTau",        "UnpairedSpectrum",       "NotPseudoHermitian",
    "NotASymmetry",       "SpectrumNotReal",        "SingularA",
    "NotSymmetric",       "SingularInput",          "SingularBlock",
    "AsymmetricPotential", "NotPTSymmetric",        "ResultNotHermitian",
};

std::string compose(ErrorCode code, const std::string& message, const std::string& stage) {
  std::string out;
  if (!stage.empty()) out += "[" + stage + "] ";
  out += std::string(to_string(code));
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  const auto i = static_cast<std::size_t>(code);
  return i < std::size(kCodeNames) ? kCodeNames[i] : std::string_view{"Unknown"};
}

Error::Error(ErrorCode code, const std::string& message, std::string stage)
    : std::runtime_error(compose(code, message, stage)),
      code_(code),
      stage_(std::move(stage)),
      detail_(message) {}

Error Error::with_stage(std::string stage) const { return Error(code_, detail_, std::move(stage)); }

double norm(const ComplexMatrix& a) { return a.norm(); }

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double relative_residual(const ComplexMatrix& diff, double scale) {
  if (!(scale > 0.0)) scale = 1.0;
  return max_abs(diff) / scale;
}

double condition_number(const ComplexMatrix& a) {
  if (a.size() == 0) return 1.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_square_finite(const ComplexMatrix& a, const char* what) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    std::ostringstream os;
    os << what << " must be square with n >= 1, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (!all_finite(a)) throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN/Inf entries");
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

ComplexMatrix checked_inverse(const ComplexMatrix& a, double cond_ceiling, ErrorCode code,
                              const char* what) {
  const double cond = condition_number(a);
  if (!(cond <= cond_ceiling)) {
    std::ostringstream os;
    os << what << " is numerically singular (condition number " << cond << " > " << cond_ceiling << ")";
    throw Error(code, os.str());
  }
  return a.fullPivLu().inverse();
}

}  // namespace pseudoherm
