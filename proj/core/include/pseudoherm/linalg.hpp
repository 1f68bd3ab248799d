#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "pseudoherm/error.hpp"

namespace pseudoherm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Outcome of a numerical identity check. `residual` is already divided by
/// the scale the check is normalized against, so `passed == residual <= tol`.
struct Check {
  bool passed = false;
  double residual = 0.0;

  explicit operator bool() const noexcept { return passed; }
};

/// Frobenius norm. Used for every scale factor in relative residuals.
double norm(const ComplexMatrix& a);

/// Largest entry modulus.
double max_abs(const ComplexMatrix& a);

/// max_abs(diff) / scale, with a zero scale treated as 1.
double relative_residual(const ComplexMatrix& diff, double scale);

/// 2-norm condition number from singular values; +inf when singular.
double condition_number(const ComplexMatrix& a);

bool all_finite(const ComplexMatrix& a);

/// Throws NonFinite / DimensionMismatch unless `a` is a finite square matrix with n >= 1.
void require_square_finite(const ComplexMatrix& a, const char* what);

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);

inline constexpr double kDefaultConditionCeiling = 1e8;

/// Inverse through a full-pivot LU; throws `code` when the matrix is numerically
/// singular, i.e. its condition number exceeds `cond_ceiling`.
ComplexMatrix checked_inverse(const ComplexMatrix& a, double cond_ceiling, ErrorCode code,
                              const char* what);

/// Entrywise-conjugated copy.
inline ComplexMatrix conj(const ComplexMatrix& a) { return a.conjugate(); }

}  // namespace pseudoherm
