#include "circreg/angle.hpp"

#include <cmath>

namespace circreg {

double wrap_angle(double radians) noexcept {
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a tiny negative value plus 2*pi can round up to exactly 2*pi.
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

double deg_to_rad(double degrees) noexcept { return degrees * (kPi / 180.0); }

double rad_to_deg(double radians) noexcept { return radians * (180.0 / kPi); }

Angle Angle::from_complex(std::complex<double> z) noexcept { return Angle(std::arg(z)); }

Angle& Angle::operator+=(Angle other) noexcept {
    value_ = wrap_angle(value_ + other.value_);
    return *this;
}

Angle& Angle::operator-=(Angle other) noexcept {
    value_ = wrap_angle(value_ - other.value_);
    return *this;
}

double signed_difference(Angle a, Angle b) noexcept {
    double d = a.radians() - b.radians();
    if (d > kPi) {
        d -= kTwoPi;
    } else if (d <= -kPi) {
        d += kTwoPi;
    }
    return d;
}

std::vector<Angle> to_angles(std::span<const double> radians) {
    std::vector<Angle> out;
    out.reserve(radians.size());
    for (double r : radians) {
        out.emplace_back(r);
    }
    return out;
}

std::vector<double> to_radians(std::span<const Angle> angles) {
    std::vector<double> out;
    out.reserve(angles.size());
    for (Angle a : angles) {
        out.push_back(a.radians());
    }
    return out;
}

Angle circular_mean(std::span<const Angle> angles) noexcept {
    double s = 0.0;
    double c = 0.0;
    for (Angle a : angles) {
        s += std::sin(a.radians());
        c += std::cos(a.radians());
    }
    return Angle(std::atan2(s, c));
}

double mean_resultant_length(std::span<const Angle> angles) noexcept {
    if (angles.empty()) {
        return 0.0;
    }
    double s = 0.0;
    double c = 0.0;
    for (Angle a : angles) {
        s += std::sin(a.radians());
        c += std::cos(a.radians());
    }
    return std::hypot(s, c) / static_cast<double>(angles.size());
}

}  // namespace circreg
