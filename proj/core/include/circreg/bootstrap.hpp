#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "circreg/alternatives.hpp"
#include "circreg/gof.hpp"
#include "circreg/regression.hpp"
#include "circreg/wrapped_cauchy.hpp"

namespace circreg {

struct BootstrapConfig {
    std::size_t B = 10000;
    std::uint64_t seed = 1;
    std::vector<StatisticSpec> statistics = default_statistics();
    /// Worker threads for the replicates; 0 means hardware concurrency.
    unsigned threads = 1;
};

/// Result of the parametric bootstrap test of wrapped Cauchy errors.
struct TestReport {
    std::vector<StatisticSpec> statistics;
    std::vector<double> observed;                     ///< one per statistic
    std::vector<std::vector<double>> replicates;      ///< [statistic][replicate], B each
    std::vector<double> p_values;                     ///< one per statistic
    FitResult fit;
    std::size_t B = 0;
    std::uint64_t seed = 0;
    std::size_t redrawn = 0;  ///< replicates whose first refit failed and were redrawn
};

/// (1 + #{replicates >= observed}) / (B + 1).
double bootstrap_p_value(double observed, std::span<const double> replicates);

/// Empirical quantile with linear interpolation between order statistics
/// (R's default, type 7). `sorted` must be ascending and non-empty.
double empirical_quantile(std::span<const double> sorted, double prob);

/// Classical parametric bootstrap: fit, compute the observed statistics, then
/// for each replicate simulate responses from the fitted model with WC(delta_hat)
/// errors, refit, and recompute. Throws FitFailure when a replicate cannot be
/// fitted twice in a row.
TestReport classical_bootstrap(const PairedSample& data, const BootstrapConfig& config);

/// Error law of a simulated scenario: the null wrapped Cauchy or an alternative.
using InnovationLaw = std::variant<WCParams, AlternativeSpec>;

std::string innovation_label(const InnovationLaw& law);
/// Parses "WC(0.5)", "WN(0.7)", "VM(5)", "Ca(0.3)", "CW(1)", "JP(2,1)", "Ba(3,0.5)".
InnovationLaw parse_innovation(const std::string& text);

struct ScenarioConfig {
    Angle beta0;
    double beta1_r = 0.0;
    Angle beta1_theta;
    std::size_t n = 50;
    InnovationLaw innovation = WCParams(0.5);
    std::size_t B = 10000;
    std::vector<double> alphas{0.05};
    std::uint64_t seed = 1;
    std::vector<StatisticSpec> statistics = default_statistics();
    unsigned threads = 1;
};

struct PowerResult {
    std::vector<StatisticSpec> statistics;
    std::vector<double> alphas;
    /// rejection_rate[statistic][alpha]
    std::vector<std::vector<double>> rejection_rate;
    std::vector<std::vector<double>> sample_values;     ///< [statistic][iteration]
    std::vector<std::vector<double>> bootstrap_values;  ///< [statistic][iteration]
    std::size_t redrawn = 0;
};

/// Warp-speed Monte Carlo: each of B iterations simulates a data set under the
/// scenario (covariates U(0, 2pi)), fits and computes the statistics, then
/// draws a single bootstrap sample from the fitted null and recomputes them.
/// Sample j is rejected when its statistic is >= the (1 - alpha) quantile of
/// the B bootstrap statistics.
PowerResult warp_speed_power(const ScenarioConfig& scenario);

}  // namespace circreg
