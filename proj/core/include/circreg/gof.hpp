#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "circreg/angle.hpp"

namespace circreg {

/// Poisson(lambda) weights omega(t) for the characteristic-function statistic,
/// truncated at the smallest T whose tail mass P(N > T) is below
/// tail_mass_tol (never beyond kMaxTerms).
struct WeightSpec {
    double lambda = 0.5;
    double tail_mass_tol = 1e-12;

    static constexpr std::size_t kMaxTerms = 500;

    /// Throws std::invalid_argument unless lambda > 0 and tail_mass_tol >= 0.
    void validate() const;
    std::size_t truncation() const;
    /// omega(0), ..., omega(truncation()).
    std::vector<double> weights() const;
};

/// Default Poisson means for the characteristic-function statistic.
inline constexpr double kDefaultLambdas[] = {0.3, 0.5, 1.0};

/// T_n = n sum_t |phi_n(t) - delta_hat^t|^2 omega(t), with phi_n the empirical
/// characteristic function of the residual angles.
double tn_statistic(std::span<const Angle> residuals, double delta_hat, const WeightSpec& weight);

/// U_j = F_WC(theta_j; delta_hat), sorted ascending.
std::vector<double> pit_transform(std::span<const Angle> residuals, double delta_hat);

/// Kuiper's V on sorted uniforms: max{U_(j) - (j-1)/n} + max{j/n - U_(j)}.
double kuiper_from_sorted(std::span<const double> u);
/// Watson's U^2 on sorted uniforms.
double watson_from_sorted(std::span<const double> u);

double kuiper_statistic(std::span<const Angle> residuals, double delta_hat);
double watson_statistic(std::span<const Angle> residuals, double delta_hat);

/// One test statistic: T_n for a given Poisson mean, Kuiper or Watson.
struct StatisticSpec {
    enum class Kind { Tn, Kuiper, Watson };
    Kind kind = Kind::Tn;
    double lambda = 0.0;  ///< used by Tn only

    static StatisticSpec tn(double lambda) { return {Kind::Tn, lambda}; }
    static StatisticSpec kuiper() { return {Kind::Kuiper, 0.0}; }
    static StatisticSpec watson() { return {Kind::Watson, 0.0}; }

    /// "Tn(0.3)", "Kn", "Wn".
    std::string label() const;
    /// Inverse of label(); throws std::invalid_argument.
    static StatisticSpec parse(const std::string& text);

    friend bool operator==(const StatisticSpec&, const StatisticSpec&) = default;
};

/// Tn at each default lambda, then Kn and Wn.
std::vector<StatisticSpec> default_statistics();

/// Values of `specs` in order. The PIT is computed once and shared by Kn and Wn.
std::vector<double> compute_statistics(std::span<const Angle> residuals, double delta_hat,
                                       std::span<const StatisticSpec> specs);

}  // namespace circreg
