#pragma once

#include <stdexcept>
#include <string>

namespace trps {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid or out-of-range configuration input.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// A physical/numerical invariant (trace, Hermiticity, positivity,
// spectrum non-negativity, ...) was violated beyond tolerance.
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg) : Error(msg) {}
};

// |gamma_plus - gamma_minus| below threshold; closed forms need the
// confluent limit evaluator.
struct DegenerateRates : Error {
    explicit DegenerateRates(const std::string& msg) : Error(msg) {}
};

// Requested correlation anchor time lies outside the trajectory range.
struct OutOfTrajectory : Error {
    explicit OutOfTrajectory(const std::string& msg) : Error(msg) {}
};

// Trajectory step exceeds the sampling rule for spectrum assembly.
struct TrajectoryTooCoarse : Error {
    explicit TrajectoryTooCoarse(const std::string& msg) : Error(msg) {}
};

// Frequency grid does not span the band required for energy integration.
struct GridTooNarrow : Error {
    explicit GridTooNarrow(const std::string& msg) : Error(msg) {}
};

// Time integration horizon does not satisfy the tail criterion.
struct NotConverged : Error {
    explicit NotConverged(const std::string& msg) : Error(msg) {}
};

// Peak analysis found no peaks above the prominence threshold.
struct NoPeaks : Error {
    explicit NoPeaks(const std::string& msg) : Error(msg) {}
};

}  // namespace trps
