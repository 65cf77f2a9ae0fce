#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "circreg/angle.hpp"
#include "circreg/rng.hpp"

namespace circreg {

/// Parameters v = (theta0, theta1, r, delta) of the Moebius regression
///     Y = beta0 (x + beta1) / (1 + conj(beta1) x) * eps,   eps ~ WC(0, delta)
/// with beta0 = e^{i theta0} and beta1 = r e^{i theta1}.
class ModelParams {
public:
    /// Throws InvalidShape unless r >= 0 and 0 <= delta < 1.
    ModelParams(Angle theta0, Angle theta1, double r, double delta);
    ModelParams(double theta0, double theta1, double r, double delta)
        : ModelParams(Angle(theta0), Angle(theta1), r, delta) {}

    Angle theta0() const noexcept { return theta0_; }
    Angle theta1() const noexcept { return theta1_; }
    double r() const noexcept { return r_; }
    double delta() const noexcept { return delta_; }

    std::complex<double> beta0() const noexcept { return theta0_.unit_complex(); }
    std::complex<double> beta1() const noexcept { return std::polar(r_, theta1_.radians()); }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    Angle theta0_;
    Angle theta1_;
    double r_;
    double delta_;
};

/// Aligned covariate/response angles.
class PairedSample {
public:
    /// Throws DegenerateData for unequal lengths or an empty sample.
    PairedSample(std::vector<Angle> x, std::vector<Angle> y);

    std::size_t size() const noexcept { return x_.size(); }
    std::span<const Angle> x() const noexcept { return x_; }
    std::span<const Angle> y() const noexcept { return y_; }

private:
    std::vector<Angle> x_;
    std::vector<Angle> y_;
};

/// arg(beta0 (x + beta1) / (1 + conj(beta1) x)). Throws SingularMap when the
/// denominator vanishes (r = 1 and x = theta1 + pi).
Angle mobius_apply(const ModelParams& params, Angle x);

/// Circular mean of Y | x; the same map as mobius_apply.
inline Angle conditional_mean(const ModelParams& params, Angle x) { return mobius_apply(params, x); }

/// Inverse of mobius_apply; defined when the map is a bijection (r != 1).
Angle mobius_inverse(const ModelParams& params, Angle y);

/// Full log density sum_j log f_WC(theta_yj - mobius(x_j); delta),
/// including the -n log(2 pi) constant.
double log_likelihood(const ModelParams& params, const PairedSample& data);

/// Gradient of log_likelihood with respect to (theta0, theta1, r, delta).
std::array<double, 4> log_likelihood_gradient(const ModelParams& params, const PairedSample& data);

std::vector<Angle> fitted_angles(const PairedSample& data, const ModelParams& params);

/// theta_eps_j = (theta_yj - mobius_apply(params, x_j)) mod 2 pi.
std::vector<Angle> residual_angles(const PairedSample& data, const ModelParams& params);

enum class Optimizer { NelderMead, Bfgs };

struct FitConfig {
    Optimizer optimizer = Optimizer::NelderMead;
    /// Local searches run from this many of the best-scoring starting points
    /// (ranked by log-likelihood); 0 runs every start.
    std::size_t polish_top = 0;
    /// Extra starting point tried before the grid, e.g. a previous optimum.
    std::optional<ModelParams> warm_start;
    int max_iterations = 2000;
    /// Simplex diameter (Nelder-Mead) in the unconstrained coordinates.
    double tolerance = 1e-8;
};

struct FitResult {
    ModelParams params{0.0, 0.0, 0.0, 0.0};
    double loglik = 0.0;
    bool converged = false;
    std::size_t n_restarts_used = 0;
    std::vector<Angle> fitted;
    std::vector<Angle> residuals;
};

/// The 3 x 3 x 3 x 3 multistart grid (theta0, theta1, r, delta).
std::vector<ModelParams> multistart_grid();

/// Maximum-likelihood fit. Throws DegenerateData when n < 4.
FitResult fit_mle(const PairedSample& data, const FitConfig& config = {});

/// Draws n error angles.
using ErrorSampler = std::function<std::vector<Angle>(std::size_t n, RngStream& rng)>;

/// y_j = mobius_apply(params, x_j) + eps_j with eps drawn from `errors`.
std::vector<Angle> simulate_model(const ModelParams& params, std::span<const Angle> x, const ErrorSampler& errors,
                                  RngStream& rng);

}  // namespace circreg
