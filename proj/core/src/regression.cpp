#include "circreg/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "circreg/error.hpp"
#include "circreg/optimize.hpp"
#include "circreg/wrapped_cauchy.hpp"

namespace circreg {

namespace {

constexpr double kSingularTolerance = 1e-14;
constexpr double kMinR = 1e-12;
constexpr double kMinDelta = 1e-12;
constexpr double kMaxDelta = 1.0 - 1e-12;
constexpr double kTieTolerance = 1e-9;
constexpr std::size_t kLogBatch = 8;

double logistic(double u) noexcept { return 1.0 / (1.0 + std::exp(-u)); }
double logit(double p) noexcept { return std::log(p / (1.0 - p)); }

const double kMinLogR = std::log(kMinR);
const double kMinLogitDelta = logit(kMinDelta);
const double kMaxLogitDelta = logit(kMaxDelta);

// Unconstrained coordinates (theta0, theta1, log r, logit delta).
std::vector<double> to_free(const ModelParams& p) {
    return {p.theta0().radians(), p.theta1().radians(), std::log(std::max(p.r(), kMinR)),
            logit(std::clamp(p.delta(), kMinDelta, kMaxDelta))};
}

ModelParams from_free(std::span<const double> v) {
    return ModelParams(Angle(v[0]), Angle(v[1]), std::exp(std::max(v[2], kMinLogR)),
                       logistic(std::clamp(v[3], kMinLogitDelta, kMaxLogitDelta)));
}

// Log-likelihood over a fixed sample with per-point trigonometry hoisted out.
// Residual phases come from e^{i e_j} = e^{i(y_j - x_j)} e^{-i theta0} (1 + r e^{i w_j})^2 / |1 + r e^{i w_j}|^2,
// w_j = x_j - theta1, which avoids any atan2 in the inner loop.
class LikelihoodKernel {
public:
    explicit LikelihoodKernel(const PairedSample& data) {
        const std::size_t n = data.size();
        cos_x_.resize(n);
        sin_x_.resize(n);
        cos_d_.resize(n);
        sin_d_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double x = data.x()[j].radians();
            const double d = data.y()[j].radians() - x;
            cos_x_[j] = std::cos(x);
            sin_x_[j] = std::sin(x);
            cos_d_[j] = std::cos(d);
            sin_d_[j] = std::sin(d);
        }
    }

    // Value-only path in blocks of kLogBatch so the inner loop vectorizes.
    double negative_value(std::span<const double> v) const {
        const double r = std::exp(std::max(v[2], kMinLogR));
        const double delta = logistic(std::clamp(v[3], kMinLogitDelta, kMaxLogitDelta));
        const double c0 = std::cos(v[0]);
        const double s0 = std::sin(v[0]);
        const double c1 = std::cos(v[1]);
        const double s1 = std::sin(v[1]);
        const double two_delta = 2.0 * delta;
        const double d2 = delta * delta;
        const std::size_t n = cos_x_.size();
        const double* cx = cos_x_.data();
        const double* sx = sin_x_.data();
        const double* cd = cos_d_.data();
        const double* sd = sin_d_.data();

        auto factor = [&](std::size_t j) {
            const double cw = cx[j] * c1 + sx[j] * s1;
            const double sw = sx[j] * c1 - cx[j] * s1;
            const double m = 1.0 + r * cw;
            const double q = r * sw;
            const double br = cd[j] * c0 + sd[j] * s0;
            const double bi = sd[j] * c0 - cd[j] * s0;
            const double ce = (br * (m * m - q * q) - bi * (2.0 * m * q)) / (m * m + q * q);
            return 1.0 - two_delta * ce + d2;
        };
        double sum_log = 0.0;
        std::size_t j = 0;
        for (; j + kLogBatch <= n; j += kLogBatch) {
            double block[kLogBatch];
            for (std::size_t k = 0; k < kLogBatch; ++k) {
                block[k] = factor(j + k);
            }
            double prod = 1.0;
            for (std::size_t k = 0; k < kLogBatch; ++k) {
                prod *= block[k];
            }
            sum_log += std::log(prod);
        }
        double prod = 1.0;
        for (; j < n; ++j) {
            prod *= factor(j);
        }
        sum_log += std::log(prod);
        const double nd = static_cast<double>(n);
        return -(nd * std::log1p(-d2) - sum_log - nd * std::log(kTwoPi));
    }

    // Negative log-likelihood in free coordinates; fills grad when non-empty.
    double negative(std::span<const double> v, std::span<double> grad) const {
        if (grad.empty()) {
            return negative_value(v);
        }
        const double t0 = v[0];
        const double t1 = v[1];
        const bool r_clamped = v[2] < kMinLogR;
        const double r = std::exp(r_clamped ? kMinLogR : v[2]);
        const double u = std::clamp(v[3], kMinLogitDelta, kMaxLogitDelta);
        const bool d_clamped = u != v[3];
        const double delta = logistic(u);

        const double c0 = std::cos(t0);
        const double s0 = std::sin(t0);
        const double c1 = std::cos(t1);
        const double s1 = std::sin(t1);
        const double d2 = delta * delta;
        const std::size_t n = cos_x_.size();

        double sum_log = 0.0;
        double g_e0 = 0.0;  // d/dtheta0 of sum log D
        double g_t1 = 0.0;
        double g_r = 0.0;
        double g_d = 0.0;
        const bool want_grad = !grad.empty();
        double prod = 1.0;
        std::size_t in_prod = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double cw = cos_x_[j] * c1 + sin_x_[j] * s1;
            const double sw = sin_x_[j] * c1 - cos_x_[j] * s1;
            const double m = 1.0 + r * cw;
            const double q = r * sw;
            const double den = m * m + q * q;
            // (m + iq)^2 / den
            const double inv_den = 1.0 / den;
            const double zr = m * m - q * q;
            const double zi = 2.0 * m * q;
            // e^{i(y - x)} e^{-i theta0}
            const double br = cos_d_[j] * c0 + sin_d_[j] * s0;
            const double bi = sin_d_[j] * c0 - cos_d_[j] * s0;
            const double ce = (br * zr - bi * zi) * inv_den;
            const double dd = 1.0 - 2.0 * delta * ce + d2;
            // Each factor lies in [(1 - delta)^2, 4], so eight of them stay in range.
            prod *= dd;
            if (++in_prod == kLogBatch) {
                sum_log += std::log(prod);
                prod = 1.0;
                in_prod = 0;
            }
            if (want_grad) {
                // d log D / d e = 2 delta sin e / D
                const double se = (br * zi + bi * zr) * inv_den;
                const double h = 2.0 * delta * se / dd;
                g_e0 -= h;                                 // de/dtheta0 = -1
                g_t1 -= h * 2.0 * (r * r + r * cw) * inv_den;  // de/dtheta1
                g_r += h * 2.0 * sw * inv_den;                 // de/dr
                g_d += (2.0 * delta - 2.0 * ce) / dd;
            }
        }
        sum_log += std::log(prod);
        const double nd = static_cast<double>(n);
        const double loglik = nd * std::log1p(-d2) - sum_log - nd * std::log(kTwoPi);
        if (want_grad) {
            // Gradient of -loglik.
            grad[0] = g_e0;
            grad[1] = g_t1;
            grad[2] = r_clamped ? 0.0 : g_r * r;
            const double dl_ddelta = -2.0 * nd * delta / (1.0 - d2) - g_d;
            grad[3] = d_clamped ? 0.0 : -dl_ddelta * delta * (1.0 - delta);
        }
        return -loglik;
    }

private:
    std::vector<double> cos_x_;
    std::vector<double> sin_x_;
    std::vector<double> cos_d_;
    std::vector<double> sin_d_;
};

struct Candidate {
    ModelParams params;
    double loglik;
    bool converged;
};

// a replaces b: strictly higher likelihood, or a tie with smaller r.
bool better_candidate(const Candidate& a, const Candidate& b) {
    if (a.loglik > b.loglik + kTieTolerance) {
        return true;
    }
    if (a.loglik < b.loglik - kTieTolerance) {
        return false;
    }
    return a.params.r() < b.params.r();
}


optim::LocalResult polish_bfgs(const LikelihoodKernel& kernel, std::vector<double> start, int max_iterations) {
    optim::BfgsOptions opts;
    opts.max_iterations = max_iterations;
    return optim::bfgs([&](std::span<const double> v, std::span<double> g) { return kernel.negative(v, g); },
                       std::move(start), opts);
}

}  // namespace

ModelParams::ModelParams(Angle theta0, Angle theta1, double r, double delta)
    : theta0_(theta0), theta1_(theta1), r_(r), delta_(delta) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw InvalidShape("regression parameter r must be finite and non-negative, got " + std::to_string(r));
    }
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw InvalidShape("regression parameter delta must lie in [0, 1), got " + std::to_string(delta));
    }
}

PairedSample::PairedSample(std::vector<Angle> x, std::vector<Angle> y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) {
        throw DegenerateData("paired sample: " + std::to_string(x_.size()) + " covariates but " +
                             std::to_string(y_.size()) + " responses");
    }
    if (x_.empty()) {
        throw DegenerateData("paired sample is empty");
    }
}

Angle mobius_apply(const ModelParams& params, Angle x) {
    const double r = params.r();
    const double w = x.radians() - params.theta1().radians();
    const double m = 1.0 + r * std::cos(w);
    const double q = r * std::sin(w);
    if (std::hypot(m, q) < kSingularTolerance) {
        throw SingularMap("Moebius map is singular at x = " + std::to_string(x.radians()));
    }
    // arg(x + beta1) - arg(1 + conj(beta1) x) = theta_x - 2 arg(1 + r e^{i w})
    return Angle(params.theta0().radians() + x.radians() - 2.0 * std::atan2(q, m));
}

Angle mobius_inverse(const ModelParams& params, Angle y) {
    const std::complex<double> z = y.unit_complex();
    const std::complex<double> b0 = params.beta0();
    const std::complex<double> b1 = params.beta1();
    const std::complex<double> den = b0 - z * std::conj(b1);
    if (std::abs(den) < kSingularTolerance) {
        throw SingularMap("inverse Moebius map is singular at y = " + std::to_string(y.radians()));
    }
    return Angle::from_complex((z - b0 * b1) / den);
}

double log_likelihood(const ModelParams& params, const PairedSample& data) {
    const double delta = params.delta();
    double sum = 0.0;
    for (std::size_t j = 0; j < data.size(); ++j) {
        const double w = data.x()[j].radians() - params.theta1().radians();
        const double a = std::atan2(params.r() * std::sin(w), 1.0 + params.r() * std::cos(w));
        const double e = data.y()[j].radians() - params.theta0().radians() - data.x()[j].radians() + 2.0 * a;
        sum += wc_log_density(e, delta);
    }
    return sum;
}

std::array<double, 4> log_likelihood_gradient(const ModelParams& params, const PairedSample& data) {
    const LikelihoodKernel kernel(data);
    const double r = params.r();
    const double delta = params.delta();
    // Evaluate in free coordinates and undo the chain rule.
    std::vector<double> v{params.theta0().radians(), params.theta1().radians(), std::log(r), logit(delta)};
    std::array<double, 4> g{};
    if (r > 0.0 && delta > 0.0) {
        kernel.negative(v, g);
        return {-g[0], -g[1], -g[2] / r, -g[3] / (delta * (1.0 - delta))};
    }
    // Boundary: fall back to central differences in the natural coordinates.
    auto at = [&](int k, double h) {
        double t0 = params.theta0().radians();
        double t1 = params.theta1().radians();
        double rr = r;
        double dd = delta;
        (k == 0 ? t0 : k == 1 ? t1 : k == 2 ? rr : dd) += h;
        return log_likelihood(ModelParams(Angle(t0), Angle(t1), std::max(rr, 0.0), std::max(dd, 0.0)), data);
    };
    for (int k = 0; k < 4; ++k) {
        const double h = 1e-6;
        g[static_cast<std::size_t>(k)] = (at(k, h) - at(k, 0.0)) / h;
    }
    return g;
}

std::vector<Angle> fitted_angles(const PairedSample& data, const ModelParams& params) {
    std::vector<Angle> out;
    out.reserve(data.size());
    for (Angle x : data.x()) {
        out.push_back(mobius_apply(params, x));
    }
    return out;
}

std::vector<Angle> residual_angles(const PairedSample& data, const ModelParams& params) {
    std::vector<Angle> out;
    out.reserve(data.size());
    for (std::size_t j = 0; j < data.size(); ++j) {
        out.push_back(data.y()[j] - mobius_apply(params, data.x()[j]));
    }
    return out;
}

std::vector<ModelParams> multistart_grid() {
    const double angles[] = {0.0, kTwoPi / 3.0, 2.0 * kTwoPi / 3.0};
    const double radii[] = {0.1, 0.5, 2.0};
    const double deltas[] = {0.2, 0.5, 0.8};
    std::vector<ModelParams> grid;
    grid.reserve(81);
    for (double t0 : angles) {
        for (double t1 : angles) {
            for (double r : radii) {
                for (double d : deltas) {
                    grid.emplace_back(t0, t1, r, d);
                }
            }
        }
    }
    return grid;
}

FitResult fit_mle(const PairedSample& data, const FitConfig& config) {
    if (data.size() < 4) {
        throw DegenerateData("fit_mle needs at least 4 observations for 4 parameters, got " +
                             std::to_string(data.size()));
    }
    const LikelihoodKernel kernel(data);

    std::vector<ModelParams> starts;
    if (config.warm_start) {
        starts.push_back(*config.warm_start);
    }
    std::vector<ModelParams> grid = multistart_grid();
    if (config.polish_top > 0 && config.polish_top < grid.size()) {
        std::vector<double> score(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            score[i] = kernel.negative(to_free(grid[i]), {});
        }
        std::vector<std::size_t> order(grid.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
        for (std::size_t k = 0; k < config.polish_top; ++k) {
            starts.push_back(grid[order[k]]);
        }
    } else {
        starts.insert(starts.end(), grid.begin(), grid.end());
    }
    std::vector<Candidate> candidates;
    for (const ModelParams& start : starts) {
        optim::LocalResult local;
        if (config.optimizer == Optimizer::NelderMead) {
            optim::NelderMeadOptions opts;
            opts.max_iterations = config.max_iterations;
            opts.diameter_tolerance = config.tolerance;
            local = optim::nelder_mead([&](std::span<const double> v) { return kernel.negative(v, {}); },
                                       to_free(start), opts);
        } else {
            local = polish_bfgs(kernel, to_free(start), config.max_iterations);
        }
        if (std::isfinite(local.value)) {
            candidates.push_back({from_free(local.x), -local.value, local.converged});
        }
    }

    std::optional<Candidate> best;
    bool any_converged = false;
    for (const Candidate& cand : candidates) {
        any_converged = any_converged || cand.converged;
        if (!best || better_candidate(cand, *best)) {
            best = cand;
        }
    }
    if (!best) {
        throw FitFailure("fit_mle: every restart produced a non-finite likelihood");
    }

    FitResult result;
    result.params = best->params;
    result.loglik = log_likelihood(best->params, data);
    result.converged = any_converged;
    result.n_restarts_used = starts.size();
    result.fitted = fitted_angles(data, best->params);
    result.residuals = residual_angles(data, best->params);
    return result;
}

std::vector<Angle> simulate_model(const ModelParams& params, std::span<const Angle> x, const ErrorSampler& errors,
                                  RngStream& rng) {
    std::vector<Angle> eps = errors(x.size(), rng);
    std::vector<Angle> y;
    y.reserve(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        y.push_back(mobius_apply(params, x[j]) + eps[j]);
    }
    return y;
}

}  // namespace circreg
