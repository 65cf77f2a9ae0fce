#include "circreg/wrapped_cauchy.hpp"

#include <cmath>
#include <string>

#include "circreg/error.hpp"

namespace circreg {

WCParams::WCParams(Angle mu, double delta) : mu_(mu), delta_(delta) {
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw InvalidShape("wrapped Cauchy concentration must lie in [0, 1), got " + std::to_string(delta));
    }
}

double wc_density(Angle theta, const WCParams& params) noexcept {
    const double d = params.delta();
    const double c = std::cos(theta.radians() - params.mu().radians());
    return (1.0 - d * d) / (kTwoPi * (1.0 - 2.0 * d * c + d * d));
}

double wc_log_density(double theta_minus_mu, double delta) noexcept {
    const double d2 = delta * delta;
    return std::log1p(-d2) - std::log(1.0 - 2.0 * delta * std::cos(theta_minus_mu) + d2) - std::log(kTwoPi);
}

double wc_cdf(Angle theta, double delta) noexcept {
    // F(theta) = (1/pi) atan(((1+d)/(1-d)) tan(theta/2)) on [0, pi), continued by
    // adding 1 on (pi, 2pi). With theta/2 in [0, pi) the sine is non-negative, so the
    // two-argument arctangent yields the continued branch in [0, pi] directly.
    const double half = 0.5 * theta.radians();
    const double v = std::atan2((1.0 + delta) * std::sin(half), (1.0 - delta) * std::cos(half)) / kPi;
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

double wc_charfn(unsigned t, double delta) noexcept {
    if (t == 0) {
        return 1.0;
    }
    return std::pow(delta, static_cast<double>(t));
}

std::vector<Angle> wc_sample(const WCParams& params, std::size_t n, RngStream& rng) {
    std::vector<Angle> out;
    out.reserve(n);
    if (params.delta() == 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            out.emplace_back(kTwoPi * rng.uniform());
        }
        return out;
    }
    const double scale = -std::log(params.delta());
    const double mu = params.mu().radians();
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(mu + scale * rng.cauchy());
    }
    return out;
}

}  // namespace circreg
