#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pseudoherm {

enum class ErrorCode {
  NonFinite,
  DimensionMismatch,
  InvalidInput,
  NotDiagonalizable,
  AmbiguousPairing,
  AsymmetricCoefficients,
  SingularCoefficients,
  NonHermitianEta,
  SingularEta,
  SingularTau,
  UnpairedSpectrum,
  NotPseudoHermitian,
  NotASymmetry,
  SpectrumNotReal,
  SingularA,
  NotSymmetric,
  SingularInput,
  SingularBlock,
  AsymmetricPotential,
  NotPTSymmetric,
  ResultNotHermitian,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `stage()` is empty unless the error
/// was re-raised by a pipeline that labels where it happened.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string stage = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }
  const std::string& detail() const noexcept { return detail_; }

  Error with_stage(std::string stage) const;

 private:
  ErrorCode code_;
  std::string stage_;
  std::string detail_;
};

}  // namespace pseudoherm
