#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "circreg/angle.hpp"
#include "circreg/rng.hpp"

namespace circreg {

/// Error laws used as alternatives to the wrapped Cauchy in power studies.
enum class Family { WrappedNormal, VonMises, Cardioid, Cartwright, JonesPewsey, Batschelet };

std::string_view family_tag(Family f) noexcept;

/// One member of an alternative family. shape1/shape2 mean:
///   WrappedNormal  rho (0 < rho < 1)
///   VonMises       kappa (> 0)
///   Cardioid       rho (|rho| < 1/2)
///   Cartwright     zeta (> 0)
///   JonesPewsey    kappa (>= 0), psi (any real)
///   Batschelet     kappa (>= 0), nu (-1 <= nu <= 1)
/// Construction validates the shape and throws InvalidShape.
class AlternativeSpec {
public:
    AlternativeSpec(Family family, double shape1, double shape2 = 0.0, Angle mu = Angle());

    static AlternativeSpec wrapped_normal(double rho, Angle mu = Angle()) { return {Family::WrappedNormal, rho, 0.0, mu}; }
    static AlternativeSpec von_mises(double kappa, Angle mu = Angle()) { return {Family::VonMises, kappa, 0.0, mu}; }
    static AlternativeSpec cardioid(double rho, Angle mu = Angle()) { return {Family::Cardioid, rho, 0.0, mu}; }
    static AlternativeSpec cartwright(double zeta, Angle mu = Angle()) { return {Family::Cartwright, zeta, 0.0, mu}; }
    static AlternativeSpec jones_pewsey(double kappa, double psi, Angle mu = Angle()) {
        return {Family::JonesPewsey, kappa, psi, mu};
    }
    static AlternativeSpec batschelet(double kappa, double nu, Angle mu = Angle()) {
        return {Family::Batschelet, kappa, nu, mu};
    }

    Family family() const noexcept { return family_; }
    double shape1() const noexcept { return shape1_; }
    double shape2() const noexcept { return shape2_; }
    Angle mu() const noexcept { return mu_; }

    /// Short label such as "WN(0.7)" or "JP(2,1.5)".
    std::string label() const;

private:
    Family family_;
    double shape1_;
    double shape2_;
    Angle mu_;
};

/// Density plus sampler for one AlternativeSpec. Normalizing constants and,
/// for families without a direct sampler, the inverse-CDF table are computed
/// in the constructor; the object is immutable afterwards and safe to share
/// between threads.
class AlternativeDistribution {
public:
    explicit AlternativeDistribution(const AlternativeSpec& spec);

    const AlternativeSpec& spec() const noexcept { return spec_; }

    double density(Angle theta) const noexcept;
    /// Distribution function of theta - mu on [0, 2pi).
    double cdf(Angle theta_minus_mu) const;
    std::vector<Angle> sample(std::size_t n, RngStream& rng) const;

    static constexpr std::size_t kTableCells = 2048;

private:
    double centered_density(double x) const noexcept;
    double unnormalized(double x) const noexcept;
    double cell_integral(double a, double b) const noexcept;
    double inverse_cdf(double u) const;
    double sample_von_mises(RngStream& rng) const;

    AlternativeSpec spec_;
    double log_norm_ = 0.0;           // log of the normalizing divisor where applicable
    std::vector<double> wn_weights_;  // 2 rho^{k^2}, k = 1..K
    std::vector<double> cdf_table_;   // cumulative mass at cell edges, size kTableCells + 1
};

double alt_density(const AlternativeSpec& spec, Angle theta);
std::vector<Angle> alt_sample(const AlternativeSpec& spec, std::size_t n, RngStream& rng);

}  // namespace circreg
