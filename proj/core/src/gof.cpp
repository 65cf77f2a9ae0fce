#include "circreg/gof.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "circreg/wrapped_cauchy.hpp"

namespace circreg {

void WeightSpec::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("Poisson weight mean must be positive");
    }
    if (!(tail_mass_tol >= 0.0)) {
        throw std::invalid_argument("tail mass tolerance must be non-negative");
    }
}

namespace {

std::vector<double> poisson_pmf(double lambda, std::size_t last) {
    std::vector<double> pmf(last + 1);
    // Log space keeps large-lambda terms finite.
    for (std::size_t t = 0; t <= last; ++t) {
        const double td = static_cast<double>(t);
        pmf[t] = std::exp(td * std::log(lambda) - lambda - std::lgamma(td + 1.0));
    }
    return pmf;
}

}  // namespace

std::size_t WeightSpec::truncation() const {
    validate();
    const std::vector<double> pmf = poisson_pmf(lambda, kMaxTerms);
    // tail[T] = P(N > T), accumulated from the far end to avoid cancellation in 1 - cdf.
    double tail = 0.0;
    std::vector<double> tails(kMaxTerms + 1);
    for (std::size_t t = kMaxTerms + 1; t-- > 0;) {
        tails[t] = tail;
        tail += pmf[t];
    }
    for (std::size_t t = 0; t <= kMaxTerms; ++t) {
        if (tails[t] < tail_mass_tol) {
            return t;
        }
    }
    return kMaxTerms;
}

std::vector<double> WeightSpec::weights() const { return poisson_pmf(lambda, truncation()); }

double tn_statistic(std::span<const Angle> residuals, double delta_hat, const WeightSpec& weight) {
    const std::vector<double> omega = weight.weights();
    const std::size_t n = residuals.size();
    if (n == 0) {
        return 0.0;
    }
    const double nd = static_cast<double>(n);
    // Summing in sorted order makes the value exactly permutation invariant.
    std::vector<double> sorted = to_radians(residuals);
    std::sort(sorted.begin(), sorted.end());
    double total = 0.0;
    double delta_pow = 1.0;
    for (std::size_t t = 0; t < omega.size(); ++t) {
        double re = 0.0;
        double im = 0.0;
        const double td = static_cast<double>(t);
        for (double a : sorted) {
            re += std::cos(td * a);
            im += std::sin(td * a);
        }
        re = re / nd - delta_pow;
        im /= nd;
        total += (re * re + im * im) * omega[t];
        delta_pow *= delta_hat;
    }
    return nd * total;
}

std::vector<double> pit_transform(std::span<const Angle> residuals, double delta_hat) {
    std::vector<double> u;
    u.reserve(residuals.size());
    for (Angle a : residuals) {
        u.push_back(wc_cdf(a, delta_hat));
    }
    std::sort(u.begin(), u.end());
    return u;
}

double kuiper_from_sorted(std::span<const double> u) {
    const double n = static_cast<double>(u.size());
    double d_minus = -1.0;
    double d_plus = -1.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double jd = static_cast<double>(j);
        d_minus = std::max(d_minus, u[j] - jd / n);
        d_plus = std::max(d_plus, (jd + 1.0) / n - u[j]);
    }
    return d_minus + d_plus;
}

double watson_from_sorted(std::span<const double> u) {
    const double n = static_cast<double>(u.size());
    double mean = 0.0;
    for (double v : u) {
        mean += v;
    }
    mean /= n;
    double sum = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double dev = (u[j] - (2.0 * static_cast<double>(j) + 1.0) / (2.0 * n)) - (mean - 0.5);
        sum += dev * dev;
    }
    return 1.0 / (12.0 * n) + sum;
}

double kuiper_statistic(std::span<const Angle> residuals, double delta_hat) {
    return kuiper_from_sorted(pit_transform(residuals, delta_hat));
}

double watson_statistic(std::span<const Angle> residuals, double delta_hat) {
    return watson_from_sorted(pit_transform(residuals, delta_hat));
}

std::string StatisticSpec::label() const {
    switch (kind) {
        case Kind::Kuiper: return "Kn";
        case Kind::Watson: return "Wn";
        case Kind::Tn: break;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "Tn(%g)", lambda);
    return buf;
}

StatisticSpec StatisticSpec::parse(const std::string& text) {
    if (text == "Kn") {
        return kuiper();
    }
    if (text == "Wn") {
        return watson();
    }
    if (text.size() > 4 && text.rfind("Tn(", 0) == 0 && text.back() == ')') {
        std::size_t used = 0;
        const std::string inner = text.substr(3, text.size() - 4);
        const double lambda = std::stod(inner, &used);
        if (used == inner.size() && lambda > 0.0) {
            return tn(lambda);
        }
    }
    throw std::invalid_argument("unknown statistic '" + text + "' (expected Tn(<lambda>), Kn or Wn)");
}

std::vector<StatisticSpec> default_statistics() {
    std::vector<StatisticSpec> out;
    for (double lambda : kDefaultLambdas) {
        out.push_back(StatisticSpec::tn(lambda));
    }
    out.push_back(StatisticSpec::kuiper());
    out.push_back(StatisticSpec::watson());
    return out;
}

std::vector<double> compute_statistics(std::span<const Angle> residuals, double delta_hat,
                                       std::span<const StatisticSpec> specs) {
    std::vector<double> u;
    std::vector<double> out;
    out.reserve(specs.size());
    for (const StatisticSpec& spec : specs) {
        switch (spec.kind) {
            case StatisticSpec::Kind::Tn:
                out.push_back(tn_statistic(residuals, delta_hat, WeightSpec{spec.lambda}));
                break;
            case StatisticSpec::Kind::Kuiper:
                if (u.empty()) u = pit_transform(residuals, delta_hat);
                out.push_back(kuiper_from_sorted(u));
                break;
            case StatisticSpec::Kind::Watson:
                if (u.empty()) u = pit_transform(residuals, delta_hat);
                out.push_back(watson_from_sorted(u));
                break;
        }
    }
    return out;
}

}  // namespace circreg
