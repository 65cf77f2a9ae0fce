#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace circreg {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an arbitrary real to [0, 2*pi).
double wrap_angle(double radians) noexcept;

double deg_to_rad(double degrees) noexcept;
double rad_to_deg(double radians) noexcept;

/// A direction on the unit circle, stored in radians and always canonical in [0, 2*pi).
class Angle {
public:
    constexpr Angle() noexcept = default;
    explicit Angle(double radians) noexcept : value_(wrap_angle(radians)) {}

    static Angle from_degrees(double degrees) noexcept { return Angle(deg_to_rad(degrees)); }
    static Angle from_complex(std::complex<double> z) noexcept;

    double radians() const noexcept { return value_; }
    double degrees() const noexcept { return rad_to_deg(value_); }
    std::complex<double> unit_complex() const noexcept { return std::polar(1.0, value_); }

    Angle operator-() const noexcept { return Angle(-value_); }
    Angle& operator+=(Angle other) noexcept;
    Angle& operator-=(Angle other) noexcept;

    friend Angle operator+(Angle a, Angle b) noexcept { return a += b; }
    friend Angle operator-(Angle a, Angle b) noexcept { return a -= b; }
    friend bool operator==(Angle a, Angle b) noexcept = default;

private:
    double value_ = 0.0;
};

/// Signed shortest rotation from b to a, in (-pi, pi].
double signed_difference(Angle a, Angle b) noexcept;

std::vector<Angle> to_angles(std::span<const double> radians);
std::vector<double> to_radians(std::span<const Angle> angles);

/// Mean direction atan2(sum sin, sum cos); zero for an empty input.
Angle circular_mean(std::span<const Angle> angles) noexcept;

/// Mean resultant length |(1/n) sum e^{i theta}|.
double mean_resultant_length(std::span<const Angle> angles) noexcept;

}  // namespace circreg
