#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <vector>

#include "circreg/alternatives.hpp"
#include "circreg/error.hpp"
#include "oracles.hpp"

using namespace circreg;

namespace {

// Every alternative that appears in the size and power tables.
std::vector<AlternativeSpec> table_alternatives() {
    return {
        AlternativeSpec::wrapped_normal(0.5), AlternativeSpec::wrapped_normal(0.7),
        AlternativeSpec::wrapped_normal(0.9), AlternativeSpec::von_mises(0.9),
        AlternativeSpec::von_mises(2.0),      AlternativeSpec::von_mises(5.0),
        AlternativeSpec::von_mises(7.0),      AlternativeSpec::cardioid(0.3),
        AlternativeSpec::cartwright(0.5),     AlternativeSpec::cartwright(1.0),
        AlternativeSpec::jones_pewsey(2, 0),  AlternativeSpec::jones_pewsey(2, 1),
        AlternativeSpec::jones_pewsey(2, 1.5), AlternativeSpec::batschelet(3, 0.5),
        AlternativeSpec::batschelet(3, 1),
    };
}

double mean_cos(const std::vector<Angle>& xs) {
    double s = 0.0;
    for (Angle a : xs) {
        s += std::cos(a.radians());
    }
    return s / static_cast<double>(xs.size());
}

}  // namespace

TEST(Alternatives, ShapeValidation) {
    EXPECT_THROW(AlternativeSpec::cardioid(0.5), InvalidShape);
    EXPECT_THROW(AlternativeSpec::cardioid(-0.5), InvalidShape);
    EXPECT_THROW(AlternativeSpec::wrapped_normal(1.0), InvalidShape);
    EXPECT_THROW(AlternativeSpec::wrapped_normal(0.0), InvalidShape);
    EXPECT_THROW(AlternativeSpec::von_mises(-1.0), InvalidShape);
    EXPECT_THROW(AlternativeSpec::cartwright(0.0), InvalidShape);
    EXPECT_THROW(AlternativeSpec::batschelet(3, 1.5), InvalidShape);
    EXPECT_NO_THROW(AlternativeSpec::cardioid(0.49));
}

TEST(Alternatives, Labels) {
    EXPECT_EQ(AlternativeSpec::wrapped_normal(0.7).label(), "WN(0.7)");
    EXPECT_EQ(AlternativeSpec::jones_pewsey(2, 1.5).label(), "JP(2,1.5)");
    EXPECT_EQ(AlternativeSpec::batschelet(3, 1).label(), "Ba(3,1)");
}

TEST(Alternatives, CardioidPlugIn) {
    EXPECT_NEAR(alt_density(AlternativeSpec::cardioid(0.3), Angle(0.0)), 1.6 / oracle::kPi / 2.0, 1e-15);
    EXPECT_NEAR(alt_density(AlternativeSpec::cardioid(0.3), Angle(0.0)), 0.254648, 1e-6);
}

TEST(Alternatives, VonMisesUniformLimit) {
    for (double t : {0.0, 1.0, 3.0, 5.0}) {
        EXPECT_NEAR(alt_density(AlternativeSpec::von_mises(1e-9), Angle(t)), 1.0 / (2.0 * oracle::kPi), 1e-6);
    }
}

TEST(Alternatives, NormalizeAtTableParameters) {
    for (const AlternativeSpec& spec : table_alternatives()) {
        const AlternativeDistribution dist(spec);
        const double mass = oracle::integrate([&](double t) { return dist.density(Angle(t)); }, 0.0, 2.0 * oracle::kPi);
        EXPECT_NEAR(mass, 1.0, 1e-8) << spec.label();
    }
}

TEST(Alternatives, NonNegative) {
    for (const AlternativeSpec& spec : table_alternatives()) {
        const AlternativeDistribution dist(spec);
        for (int k = 0; k < 720; ++k) {
            ASSERT_GE(dist.density(Angle(k * oracle::kPi / 360.0)), 0.0) << spec.label();
        }
    }
}

TEST(Alternatives, Symmetric) {
    for (const AlternativeSpec& base : table_alternatives()) {
        const AlternativeSpec spec(base.family(), base.shape1(), base.shape2(), Angle(1.1));
        const AlternativeDistribution dist(spec);
        for (double x : {0.1, 0.7, 1.9, 3.0}) {
            EXPECT_NEAR(dist.density(Angle(1.1 + x)), dist.density(Angle(1.1 - x)), 1e-12) << spec.label();
        }
    }
}

TEST(Alternatives, WrappedNormalMoment) {
    RngStream rng(21, 1);
    EXPECT_NEAR(mean_cos(alt_sample(AlternativeSpec::wrapped_normal(0.9), 100000, rng)), 0.9, 0.01);
}

TEST(Alternatives, VonMisesMoment) {
    RngStream rng(22, 1);
    const double a = boost::math::cyl_bessel_i(1, 2.0) / boost::math::cyl_bessel_i(0, 2.0);
    EXPECT_NEAR(mean_cos(alt_sample(AlternativeSpec::von_mises(2.0), 100000, rng)), a, 0.01);
}

TEST(Alternatives, MomentsMatchQuadrature) {
    for (const AlternativeSpec& spec : table_alternatives()) {
        const AlternativeDistribution dist(spec);
        const double m = oracle::integrate(
            [&](double t) { return std::cos(t) * dist.density(Angle(t)); }, 0.0, 2.0 * oracle::kPi);
        RngStream rng(23, 1);
        EXPECT_NEAR(mean_cos(dist.sample(100000, rng)), m, 0.01) << spec.label();
    }
}

TEST(Alternatives, SamplerKolmogorovDistance) {
    for (const AlternativeSpec& spec : table_alternatives()) {
        const AlternativeDistribution dist(spec);
        RngStream rng(24, 1);
        std::vector<double> xs;
        for (Angle a : dist.sample(100000, rng)) {
            xs.push_back(a.radians());
        }
        // dist.cdf is checked against quadrature in CdfMatchesQuadrature.
        const auto cdf = [&](double t) { return dist.cdf(Angle(t)); };
        EXPECT_LT(oracle::ks_distance(xs, cdf), 0.01) << spec.label();
    }
}

TEST(Alternatives, CdfMatchesQuadrature) {
    for (const AlternativeSpec& spec : table_alternatives()) {
        const AlternativeDistribution dist(spec);
        for (double t : {0.5, 2.0, 3.5, 6.0}) {
            const double q = oracle::integrate([&](double s) { return dist.density(Angle(s)); }, 0.0, t);
            EXPECT_NEAR(dist.cdf(Angle(t)), q, 1e-7) << spec.label() << " " << t;
        }
    }
}

TEST(Alternatives, SamplesShiftWithMu) {
    const AlternativeSpec spec = AlternativeSpec::von_mises(5.0, Angle(2.0));
    RngStream rng(25, 1);
    const auto xs = alt_sample(spec, 50000, rng);
    EXPECT_NEAR(signed_difference(circular_mean(xs), Angle(2.0)), 0.0, 0.01);
}
