#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "circreg/gof.hpp"
#include "circreg/rng.hpp"
#include "circreg/wrapped_cauchy.hpp"
#include "oracles.hpp"

using namespace circreg;

namespace {

const std::vector<double> kFive = {0.1, 1.2, 2.3, 4.0, 5.5};

std::vector<Angle> five_angles() { return to_angles(kFive); }

std::vector<double> shifted_mod_one(std::vector<double> u, double c) {
    for (double& v : u) {
        v = std::fmod(v + c, 1.0);
    }
    std::sort(u.begin(), u.end());
    return u;
}

// Kuiper's V written out as max over j of the two one-sided discrepancies.
double kuiper_direct(std::vector<double> u) {
    std::sort(u.begin(), u.end());
    const double n = static_cast<double>(u.size());
    double dp = -1.0;
    double dm = -1.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        dp = std::max(dp, (static_cast<double>(j) + 1.0) / n - u[j]);
        dm = std::max(dm, u[j] - static_cast<double>(j) / n);
    }
    return dp + dm;
}

}  // namespace

TEST(Weights, Validation) {
    EXPECT_THROW(WeightSpec{0.0}.validate(), std::invalid_argument);
    EXPECT_THROW((WeightSpec{0.5, -1.0}.validate()), std::invalid_argument);
}

TEST(Weights, PoissonMassAndTruncation) {
    for (double lambda : kDefaultLambdas) {
        const WeightSpec w{lambda};
        const auto omega = w.weights();
        EXPECT_NEAR(omega[0], std::exp(-lambda), 1e-15);
        double mass = 0.0;
        for (double v : omega) {
            mass += v;
        }
        EXPECT_GT(mass, 1.0 - 1e-12);
        EXPECT_LT(w.truncation(), WeightSpec::kMaxTerms);
    }
    EXPECT_EQ((WeightSpec{0.5, 0.0}.truncation()), WeightSpec::kMaxTerms);
}

TEST(Tn, SinglePointClosedForm) {
    for (double lambda : kDefaultLambdas) {
        const std::vector<Angle> one{Angle(0.0)};
        EXPECT_NEAR(tn_statistic(one, 0.0, WeightSpec{lambda}), 1.0 - std::exp(-lambda), 1e-12);
    }
}

TEST(Tn, ZeroWhenMomentsMatch) {
    // The empirical moments of an n-point lattice vanish for 0 < t < n, matching delta_hat = 0.
    std::vector<Angle> lattice;
    for (int k = 0; k < 600; ++k) {
        lattice.emplace_back(kTwoPi * k / 600.0);
    }
    EXPECT_NEAR(tn_statistic(lattice, 0.0, WeightSpec{1.0}), 0.0, 1e-12);
}

TEST(Tn, FiveResidualsAgainstBruteForce) {
    const double brute = oracle::tn_brute(kFive, 0.5, 0.5, 200);
    EXPECT_NEAR(tn_statistic(five_angles(), 0.5, WeightSpec{0.5}), brute, 1e-10);
    EXPECT_NEAR(tn_statistic(five_angles(), 0.5, WeightSpec{0.5, 0.0}), brute, 1e-10);
}

TEST(Tn, TruncationAcrossGrid) {
    RngStream rng(41, 1);
    for (double d : {0.0, 0.1, 0.5, 0.9, 0.99}) {
        for (double lambda : kDefaultLambdas) {
            for (std::size_t n : {10u, 100u}) {
                const auto res = wc_sample(WCParams(d), n, rng);
                const auto rad = to_radians(res);
                const double brute = oracle::tn_brute(rad, d, lambda, 500);
                EXPECT_NEAR(tn_statistic(res, d, WeightSpec{lambda}), brute, 1e-9 * static_cast<double>(n))
                    << d << " " << lambda << " " << n;
            }
        }
    }
}

TEST(Tn, PermutationInvariant) {
    auto res = five_angles();
    const double a = tn_statistic(res, 0.3, WeightSpec{1.0});
    std::reverse(res.begin(), res.end());
    std::rotate(res.begin(), res.begin() + 2, res.end());
    EXPECT_EQ(tn_statistic(res, 0.3, WeightSpec{1.0}), a);
}

TEST(Tn, NullMeanIsStable) {
    for (double lambda : kDefaultLambdas) {
        double small = 0.0;
        double large = 0.0;
        RngStream rng(42, 1);
        for (int rep = 0; rep < 200; ++rep) {
            small += tn_statistic(wc_sample(WCParams(0.5), 50, rng), 0.5, WeightSpec{lambda});
            large += tn_statistic(wc_sample(WCParams(0.5), 400, rng), 0.5, WeightSpec{lambda});
        }
        small /= 200;
        large /= 200;
        EXPECT_TRUE(std::isfinite(large));
        EXPECT_NEAR(large / small, 1.0, 0.3) << lambda;
    }
}

TEST(Pit, UniformCaseAndOrigin) {
    const auto u = pit_transform(five_angles(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        EXPECT_NEAR(u[i], kFive[i] / kTwoPi, 1e-15);
    }
    const std::vector<Angle> with_zero{Angle(2.0), Angle(0.0)};
    const auto v = pit_transform(with_zero, 0.7);
    EXPECT_EQ(v.front(), 0.0);
    EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
}

TEST(Kuiper, Examples) {
    const std::vector<double> half{0.5};
    EXPECT_DOUBLE_EQ(kuiper_from_sorted(half), 1.0);
    const std::vector<double> lattice{0.0, 0.25, 0.5, 0.75};
    EXPECT_DOUBLE_EQ(kuiper_from_sorted(lattice), 0.25);
}

TEST(Kuiper, MatchesDirectFormula) {
    RngStream rng(43, 1);
    std::vector<double> u(37);
    for (double& v : u) {
        v = rng.uniform();
    }
    std::sort(u.begin(), u.end());
    EXPECT_NEAR(kuiper_from_sorted(u), kuiper_direct(u), 1e-15);
}

TEST(Watson, Examples) {
    const std::vector<double> half{0.5};
    EXPECT_NEAR(watson_from_sorted(half), 1.0 / 12.0, 1e-15);
    for (int n : {3, 10, 50}) {
        std::vector<double> lattice;
        for (int j = 0; j < n; ++j) {
            lattice.push_back((2.0 * j + 1.0) / (2.0 * n));
        }
        EXPECT_NEAR(watson_from_sorted(lattice), 1.0 / (12.0 * n), 1e-14) << n;
    }
}

TEST(Watson, FiveResidualsAgainstDirectFormula) {
    const auto u = pit_transform(five_angles(), 0.5);
    EXPECT_NEAR(watson_statistic(five_angles(), 0.5), oracle::watson_direct(u), 1e-14);
    EXPECT_NEAR(kuiper_statistic(five_angles(), 0.5), kuiper_direct(u), 1e-15);
}

TEST(Circular, OriginInvariance) {
    RngStream rng(44, 1);
    std::vector<double> u(25);
    for (double& v : u) {
        v = rng.uniform();
    }
    std::sort(u.begin(), u.end());
    const double k = kuiper_from_sorted(u);
    const double w = watson_from_sorted(u);
    for (double c : {0.01, 0.3, 0.5, 0.77, 0.999}) {
        const auto s = shifted_mod_one(u, c);
        EXPECT_NEAR(kuiper_from_sorted(s), k, 1e-10) << c;
        EXPECT_NEAR(watson_from_sorted(s), w, 1e-10) << c;
    }
}

TEST(Statistics, LabelsRoundTrip) {
    for (const StatisticSpec& s : default_statistics()) {
        EXPECT_EQ(StatisticSpec::parse(s.label()), s);
    }
    EXPECT_EQ(StatisticSpec::tn(0.3).label(), "Tn(0.3)");
    EXPECT_EQ(StatisticSpec::kuiper().label(), "Kn");
    EXPECT_EQ(StatisticSpec::watson().label(), "Wn");
    EXPECT_THROW(StatisticSpec::parse("Zn"), std::invalid_argument);
    EXPECT_EQ(default_statistics().size(), 5u);
}

TEST(Statistics, ComputeMatchesIndividual) {
    const auto res = five_angles();
    const auto specs = default_statistics();
    const auto v = compute_statistics(res, 0.4, specs);
    ASSERT_EQ(v.size(), 5u);
    EXPECT_EQ(v[0], tn_statistic(res, 0.4, WeightSpec{0.3}));
    EXPECT_EQ(v[1], tn_statistic(res, 0.4, WeightSpec{0.5}));
    EXPECT_EQ(v[2], tn_statistic(res, 0.4, WeightSpec{1.0}));
    EXPECT_EQ(v[3], kuiper_statistic(res, 0.4));
    EXPECT_EQ(v[4], watson_statistic(res, 0.4));
}

TEST(Statistics, PermutationInvariant) {
    auto res = five_angles();
    const auto specs = default_statistics();
    const auto a = compute_statistics(res, 0.6, specs);
    std::swap(res[0], res[3]);
    std::swap(res[1], res[4]);
    const auto b = compute_statistics(res, 0.6, specs);
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k], b[k]) << k;
    }
}
