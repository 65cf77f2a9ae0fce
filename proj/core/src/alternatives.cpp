#include "circreg/alternatives.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "circreg/error.hpp"

namespace circreg {

namespace {

constexpr double kJonesPewseyVonMisesCutoff = 1e-6;
constexpr double kVonMisesUniformCutoff = 1e-8;
constexpr double kWrappedNormalTermCutoff = 1e-16;
constexpr std::size_t kPeriodicNodes = 2048;

struct GaussLegendre {
    static constexpr int kOrder = 10;
    std::array<double, kOrder> nodes{};
    std::array<double, kOrder> weights{};

    GaussLegendre() {
        // Newton iteration on P_n from the Chebyshev-like initial guesses.
        for (int i = 0; i < kOrder; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (kOrder + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= kOrder; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

const GaussLegendre& gauss_legendre() {
    static const GaussLegendre rule;
    return rule;
}

// Trapezoid rule on a full period; exponentially accurate for smooth periodic integrands.
template <typename F>
double periodic_integral(F&& f) {
    const double h = kTwoPi / static_cast<double>(kPeriodicNodes);
    double sum = 0.0;
    for (std::size_t i = 0; i < kPeriodicNodes; ++i) {
        sum += f(h * static_cast<double>(i));
    }
    return sum * h;
}

bool jp_is_von_mises(const AlternativeSpec& spec) {
    return spec.family() == Family::JonesPewsey && std::abs(spec.shape2()) < kJonesPewseyVonMisesCutoff;
}

std::string format_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string_view family_tag(Family f) noexcept {
    switch (f) {
        case Family::WrappedNormal: return "WN";
        case Family::VonMises: return "VM";
        case Family::Cardioid: return "Ca";
        case Family::Cartwright: return "CW";
        case Family::JonesPewsey: return "JP";
        case Family::Batschelet: return "Ba";
    }
    return "?";
}

AlternativeSpec::AlternativeSpec(Family family, double shape1, double shape2, Angle mu)
    : family_(family), shape1_(shape1), shape2_(shape2), mu_(mu) {
    auto fail = [&](const char* what) {
        throw InvalidShape(std::string(family_tag(family)) + ": " + what + " (got " + label() + ")");
    };
    if (!std::isfinite(shape1) || !std::isfinite(shape2)) {
        fail("shape parameters must be finite");
    }
    switch (family) {
        case Family::WrappedNormal:
            if (!(shape1 > 0.0 && shape1 < 1.0)) fail("rho must lie in (0, 1)");
            break;
        case Family::VonMises:
            if (!(shape1 > 0.0)) fail("kappa must be positive");
            break;
        case Family::Cardioid:
            if (!(std::abs(shape1) < 0.5)) fail("|rho| must be below 1/2");
            break;
        case Family::Cartwright:
            if (!(shape1 > 0.0)) fail("zeta must be positive");
            break;
        case Family::JonesPewsey:
            if (!(shape1 >= 0.0)) fail("kappa must be non-negative");
            break;
        case Family::Batschelet:
            if (!(shape1 >= 0.0)) fail("kappa must be non-negative");
            if (!(shape2 >= -1.0 && shape2 <= 1.0)) fail("nu must lie in [-1, 1]");
            break;
    }
}

std::string AlternativeSpec::label() const {
    std::string out(family_tag(family_));
    out += "(" + format_number(shape1_);
    if (family_ == Family::JonesPewsey || family_ == Family::Batschelet) {
        out += "," + format_number(shape2_);
    }
    out += ")";
    return out;
}

AlternativeDistribution::AlternativeDistribution(const AlternativeSpec& spec) : spec_(spec) {
    const double s1 = spec.shape1();
    switch (spec.family()) {
        case Family::WrappedNormal:
            for (int k = 1;; ++k) {
                const double term = std::pow(s1, static_cast<double>(k) * k);
                if (term < kWrappedNormalTermCutoff) {
                    break;
                }
                wn_weights_.push_back(2.0 * term);
            }
            break;
        case Family::VonMises:
            log_norm_ = std::log(kTwoPi * std::cyl_bessel_i(0.0, s1));
            break;
        case Family::Cardioid:
            break;
        case Family::Cartwright: {
            const double inv = 1.0 / s1;
            // Divisor of (1 + cos x)^{1/zeta}.
            log_norm_ = std::log(kPi) + std::lgamma(2.0 * inv + 1.0) - (inv - 1.0) * std::log(2.0) -
                        2.0 * std::lgamma(inv + 1.0);
            break;
        }
        case Family::JonesPewsey:
            if (jp_is_von_mises(spec)) {
                log_norm_ = s1 > 0.0 ? std::log(kTwoPi * std::cyl_bessel_i(0.0, s1)) : std::log(kTwoPi);
            } else {
                // 2 pi P_{1/psi}(cosh(kappa psi)) via Laplace's integral for the Legendre function.
                log_norm_ = std::log(periodic_integral([this](double x) { return unnormalized(x); }));
            }
            break;
        case Family::Batschelet:
            // B_0(kappa, nu) = int_0^{2pi} exp(kappa cos(t + nu sin t)) dt.
            log_norm_ = std::log(periodic_integral([this](double x) { return unnormalized(x); }));
            break;
    }

    cdf_table_.resize(kTableCells + 1);
    cdf_table_[0] = 0.0;
    const double h = kTwoPi / static_cast<double>(kTableCells);
    for (std::size_t k = 0; k < kTableCells; ++k) {
        cdf_table_[k + 1] = cdf_table_[k] + cell_integral(h * static_cast<double>(k), h * static_cast<double>(k + 1));
    }
}

double AlternativeDistribution::unnormalized(double x) const noexcept {
    const double s1 = spec_.shape1();
    const double s2 = spec_.shape2();
    switch (spec_.family()) {
        case Family::JonesPewsey: {
            if (jp_is_von_mises(spec_)) {
                return std::exp(s1 * std::cos(x));
            }
            const double kp = s1 * s2;
            return std::pow(std::cosh(kp) + std::sinh(kp) * std::cos(x), 1.0 / s2);
        }
        case Family::Batschelet:
            return std::exp(s1 * std::cos(x + s2 * std::sin(x)));
        default:
            return centered_density(x);
    }
}

double AlternativeDistribution::centered_density(double x) const noexcept {
    const double s1 = spec_.shape1();
    switch (spec_.family()) {
        case Family::WrappedNormal: {
            double sum = 1.0;
            for (std::size_t k = 0; k < wn_weights_.size(); ++k) {
                sum += wn_weights_[k] * std::cos(static_cast<double>(k + 1) * x);
            }
            return std::max(sum, 0.0) / kTwoPi;
        }
        case Family::VonMises:
            return std::exp(s1 * std::cos(x) - log_norm_);
        case Family::Cardioid:
            return (1.0 + 2.0 * s1 * std::cos(x)) / kTwoPi;
        case Family::Cartwright: {
            const double base = 1.0 + std::cos(x);
            if (base <= 0.0) {
                return 0.0;
            }
            return std::exp(std::log(base) / s1 - log_norm_);
        }
        case Family::JonesPewsey:
        case Family::Batschelet:
            return unnormalized(x) * std::exp(-log_norm_);
    }
    return 0.0;
}

double AlternativeDistribution::density(Angle theta) const noexcept {
    return centered_density(wrap_angle(theta.radians() - spec_.mu().radians()));
}

double AlternativeDistribution::cell_integral(double a, double b) const noexcept {
    const auto& gl = gauss_legendre();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < GaussLegendre::kOrder; ++i) {
        sum += gl.weights[i] * centered_density(mid + half * gl.nodes[i]);
    }
    return sum * half;
}

double AlternativeDistribution::cdf(Angle theta_minus_mu) const {
    const double x = theta_minus_mu.radians();
    const double h = kTwoPi / static_cast<double>(kTableCells);
    const auto k = std::min(static_cast<std::size_t>(x / h), kTableCells - 1);
    const double lo = h * static_cast<double>(k);
    const double value = (cdf_table_[k] + cell_integral(lo, x)) / cdf_table_.back();
    return std::clamp(value, 0.0, 1.0);
}

double AlternativeDistribution::inverse_cdf(double u) const {
    const double h = kTwoPi / static_cast<double>(kTableCells);
    const double target = u * cdf_table_.back();
    auto it = std::upper_bound(cdf_table_.begin(), cdf_table_.end(), target);
    std::size_t k = it == cdf_table_.begin() ? 0 : static_cast<std::size_t>(it - cdf_table_.begin()) - 1;
    k = std::min(k, kTableCells - 1);

    const double edge = h * static_cast<double>(k);
    const double base = cdf_table_[k];
    const double mass = cdf_table_[k + 1] - base;
    double lo = edge;
    double hi = edge + h;
    double x = mass > 0.0 ? edge + h * (target - base) / mass : edge + 0.5 * h;

    // Safeguarded Newton: the cell bracket shrinks every step and a bisection
    // step replaces any Newton step that would leave it.
    for (int iter = 0; iter < 100 && hi - lo > 1e-12; ++iter) {
        const double resid = base + cell_integral(edge, x) - target;
        if (resid > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        const double f = centered_density(x);
        double next = f > 0.0 ? x - resid / f : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double step = std::abs(next - x);
        x = next;
        if (step < 1e-10) {
            break;
        }
    }
    return x;
}

double AlternativeDistribution::sample_von_mises(RngStream& rng) const {
    const double kappa = spec_.shape1();
    if (kappa < kVonMisesUniformCutoff) {
        return kTwoPi * rng.uniform();
    }
    // Best & Fisher (1979) rejection sampler.
    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
    const double r = (1.0 + rho * rho) / (2.0 * rho);
    while (true) {
        const double u1 = rng.uniform();
        const double u2 = rng.uniform_open();
        const double u3 = rng.uniform();
        const double z = std::cos(kPi * u1);
        const double f = (1.0 + r * z) / (r + z);
        const double c = kappa * (r - f);
        if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
            const double a = std::acos(std::clamp(f, -1.0, 1.0));
            return u3 > 0.5 ? a : -a;
        }
    }
}

std::vector<Angle> AlternativeDistribution::sample(std::size_t n, RngStream& rng) const {
    std::vector<Angle> out;
    out.reserve(n);
    const double mu = spec_.mu().radians();
    switch (spec_.family()) {
        case Family::WrappedNormal: {
            const double sigma = std::sqrt(-2.0 * std::log(spec_.shape1()));
            for (std::size_t i = 0; i < n; ++i) {
                out.emplace_back(mu + sigma * rng.normal());
            }
            break;
        }
        case Family::VonMises:
            for (std::size_t i = 0; i < n; ++i) {
                out.emplace_back(mu + sample_von_mises(rng));
            }
            break;
        case Family::JonesPewsey:
            if (jp_is_von_mises(spec_)) {
                for (std::size_t i = 0; i < n; ++i) {
                    out.emplace_back(mu + sample_von_mises(rng));
                }
                break;
            }
            [[fallthrough]];
        case Family::Cardioid:
        case Family::Cartwright:
        case Family::Batschelet:
            for (std::size_t i = 0; i < n; ++i) {
                out.emplace_back(mu + inverse_cdf(rng.uniform()));
            }
            break;
    }
    return out;
}

double alt_density(const AlternativeSpec& spec, Angle theta) { return AlternativeDistribution(spec).density(theta); }

std::vector<Angle> alt_sample(const AlternativeSpec& spec, std::size_t n, RngStream& rng) {
    return AlternativeDistribution(spec).sample(n, rng);
}

}  // namespace circreg
