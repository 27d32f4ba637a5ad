#pragma once

#include <cstdint>
#include <optional>

#include "strictfeas/quadext.hpp"

namespace strictfeas {

inline constexpr double kReconstructTolerance = 1e-6;
inline constexpr std::int64_t kDefaultMaxDenominator = 1'000'000;

/// Best continued-fraction convergent (or semiconvergent) of x with denominator
/// at most max_den; nullopt when it misses x by more than 1e-6.
/// Throws std::domain_error for non-finite x, std::invalid_argument for max_den < 1.
std::optional<Rational> reconstruct_rational(double x, std::int64_t max_den = kDefaultMaxDenominator);

/// Small-height a + b*sqrt5 within 1e-6 of x, searching b over convergents of
/// (x - a)/sqrt5. Pure rationals are preferred when they match.
std::optional<QuadExt> reconstruct_quadext(double x, std::int64_t max_den = kDefaultMaxDenominator);

/// Rational with the smallest denominator in [x - tol, x + tol] (smallest numerator
/// magnitude among those). Throws std::domain_error for non-finite x or negative tol.
Rational simplest_rational_within(double x, double tol);

}  // namespace strictfeas
