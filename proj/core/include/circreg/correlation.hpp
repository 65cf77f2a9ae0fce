#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "circreg/angle.hpp"

namespace circreg {

struct CorrelationResult {
    double coefficient = 0.0;
    double p_value = 1.0;
    double z = 0.0;  ///< asymptotic standard-normal test statistic
};

/// Jammalamadaka-Sarma circular correlation coefficient with the two-sided
/// large-sample normal test of zero correlation.
///
/// Throws std::invalid_argument for mismatched lengths or n < 3 and
/// DegenerateSample when either sample has no spread about its mean
/// direction.
CorrelationResult circular_correlation(std::span<const Angle> a, std::span<const Angle> b);

struct LagCorrelation {
    std::size_t lag = 0;
    CorrelationResult result;
};

/// Correlation of series[i] with series[i + lag] for lag = 0 .. max_lag.
std::vector<LagCorrelation> circular_autocorrelation(std::span<const Angle> series, std::size_t max_lag);

}  // namespace circreg
