#ifndef WORKLAB_ERRORS_HPP
#define WORKLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace worklab {

// Base class for all numerical-gate and precondition failures.
// The CLI maps these to exit code 3 (numerical gate) or 2 (config).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct GridTooSmall : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct DegenerateTemperature : Error { using Error::Error; };
struct TruncationFailure : Error { using Error::Error; };
struct NonUnitaryMask : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct AliasingError : Error { using Error::Error; };
struct NonRealDistribution : Error { using Error::Error; };
struct ZeroFocalLength : Error { using Error::Error; };
struct WrapAroundError : Error { using Error::Error; };
struct BasisDeficit : Error { using Error::Error; };
struct StepTooCoarse : Error { using Error::Error; };
struct NormalizationFailure : Error { using Error::Error; };
struct CompletenessViolation : Error { using Error::Error; };
struct NonRealGamma : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace worklab

#endif
