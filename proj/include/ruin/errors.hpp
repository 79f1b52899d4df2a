#pragma once

#include <stdexcept>
#include <string>

namespace ruin {

/// Failure categories surfaced by the library.  The CLI maps each one to a
/// distinct process exit code so scripted callers can branch on the cause.
enum class errc : int {
  generic = 1,
  no_drift = 2,
  infinite_moment = 3,
  no_certificate = 4,
  residual_too_large = 5,
  validation_failed = 6,
  no_lundberg_coefficient = 7,
  tolerance_not_met = 8,
  singular_system = 9,
  grid_too_coarse = 10,
  non_convergent = 11,
  positive_mass_at_zero_premium = 12,
  no_density = 13,
  config_error = 64,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  errc code_;
};

#define RUIN_DEFINE_ERROR(Name, Code)              \
  class Name : public Error {                      \
   public:                                         \
    explicit Name(const std::string& what)         \
        : Error(Code, what) {}                     \
  };

RUIN_DEFINE_ERROR(NoDrift, errc::no_drift)
RUIN_DEFINE_ERROR(InfiniteMoment, errc::infinite_moment)
RUIN_DEFINE_ERROR(NoCertificate, errc::no_certificate)
RUIN_DEFINE_ERROR(ResidualTooLarge, errc::residual_too_large)
RUIN_DEFINE_ERROR(ValidationFailed, errc::validation_failed)
RUIN_DEFINE_ERROR(NoLundbergCoefficient, errc::no_lundberg_coefficient)
RUIN_DEFINE_ERROR(ToleranceNotMet, errc::tolerance_not_met)
RUIN_DEFINE_ERROR(SingularSystem, errc::singular_system)
RUIN_DEFINE_ERROR(GridTooCoarse, errc::grid_too_coarse)
RUIN_DEFINE_ERROR(NonConvergent, errc::non_convergent)
RUIN_DEFINE_ERROR(PositiveMassAtZeroPremium, errc::positive_mass_at_zero_premium)
RUIN_DEFINE_ERROR(NoDensity, errc::no_density)
RUIN_DEFINE_ERROR(ConfigError, errc::config_error)

#undef RUIN_DEFINE_ERROR

}  // namespace ruin
