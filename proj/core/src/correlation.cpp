#include "circreg/correlation.hpp"

#include <cmath>
#include <stdexcept>

#include "circreg/error.hpp"

namespace circreg {

CorrelationResult circular_correlation(std::span<const Angle> a, std::span<const Angle> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("circular_correlation: samples differ in length");
    }
    const std::size_t n = a.size();
    if (n < 3) {
        throw std::invalid_argument("circular_correlation: need at least 3 pairs");
    }
    const double abar = circular_mean(a).radians();
    const double bbar = circular_mean(b).radians();

    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    double l22 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sa = std::sin(a[i].radians() - abar);
        const double sb = std::sin(b[i].radians() - bbar);
        sab += sa * sb;
        saa += sa * sa;
        sbb += sb * sb;
        l22 += sa * sa * sb * sb;
    }
    constexpr double kTiny = 1e-24;
    if (saa <= kTiny || sbb <= kTiny) {
        throw DegenerateSample("circular_correlation: a sample has zero spread about its mean direction");
    }
    CorrelationResult out;
    out.coefficient = sab / std::sqrt(saa * sbb);
    if (out.coefficient > 1.0) {
        out.coefficient = 1.0;
    } else if (out.coefficient < -1.0) {
        out.coefficient = -1.0;
    }

    const double nd = static_cast<double>(n);
    const double l20 = saa / nd;
    const double l02 = sbb / nd;
    l22 /= nd;
    if (l22 > 0.0) {
        out.z = std::sqrt(nd * l20 * l02 / l22) * out.coefficient;
        out.p_value = std::erfc(std::abs(out.z) / std::sqrt(2.0));
    } else {
        out.z = 0.0;
        out.p_value = 1.0;
    }
    return out;
}

std::vector<LagCorrelation> circular_autocorrelation(std::span<const Angle> series, std::size_t max_lag) {
    std::vector<LagCorrelation> out;
    for (std::size_t lag = 0; lag <= max_lag && lag + 3 <= series.size(); ++lag) {
        const std::size_t m = series.size() - lag;
        out.push_back({lag, circular_correlation(series.subspan(0, m), series.subspan(lag, m))});
    }
    return out;
}

}  // namespace circreg
