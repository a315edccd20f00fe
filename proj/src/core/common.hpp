#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace stokeskit {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// omega = exp(2 pi i / 5); every identity on the Stokes coefficients uses this one value.
inline const cplx kOmega{std::cos(2.0 * kPi / 5.0), std::sin(2.0 * kPi / 5.0)};

inline cplx omega_pow(int k) {
  int m = ((k % 5) + 5) % 5;
  return std::polar(1.0, 2.0 * kPi * m / 5.0);
}

enum class ErrorCode {
  kPreconditionViolation = 1,
  kStepUnderflow,
  kNonFiniteState,
  kMismatchedEvaluationPoint,
  kBranchCutViolation,
  kSeedInsufficient,
  kDegenerateWronskian,
  kZeroOnContour,
  kPhaseJumpUnresolved,
  kNoZeroEnclosed,
  kNewtonStalled,
  kSectorViolation,
  kEvaluationOutsideSubdominantMargin,
  kKVanishes,
  kGridTooCoarse,
  kInequalityFailsAtAllTau,
  kOriginSingular,
  kDomainViolation,
  kSampleExhausted,
  kIo,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace stokeskit
