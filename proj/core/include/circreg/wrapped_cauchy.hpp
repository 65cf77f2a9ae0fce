#pragma once

#include <cstddef>
#include <vector>

#include "circreg/angle.hpp"
#include "circreg/rng.hpp"

namespace circreg {

/// Wrapped Cauchy WC(mu, delta) with real concentration 0 <= delta < 1.
/// delta = 0 is the uniform distribution on the circle.
class WCParams {
public:
    /// Throws InvalidShape unless 0 <= delta < 1.
    WCParams(Angle mu, double delta);
    explicit WCParams(double delta) : WCParams(Angle(), delta) {}

    Angle mu() const noexcept { return mu_; }
    double delta() const noexcept { return delta_; }

private:
    Angle mu_;
    double delta_;
};

/// (1/2pi) (1 - delta^2) / (1 - 2 delta cos(theta - mu) + delta^2).
double wc_density(Angle theta, const WCParams& params) noexcept;

/// Log of wc_density, evaluated without forming the ratio.
double wc_log_density(double theta_minus_mu, double delta) noexcept;

/// Distribution function of WC(0, delta) on [0, 2pi), F(0) = 0.
double wc_cdf(Angle theta, double delta) noexcept;

/// Trigonometric moment E[cos(t theta)] of WC(0, delta), i.e. delta^t.
double wc_charfn(unsigned t, double delta) noexcept;

/// n i.i.d. draws obtained by wrapping Cauchy(mu, -ln delta) onto [0, 2pi).
std::vector<Angle> wc_sample(const WCParams& params, std::size_t n, RngStream& rng);

}  // namespace circreg
