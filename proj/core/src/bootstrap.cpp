#include "circreg/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <stdexcept>

#include "circreg/error.hpp"
#include "circreg/parallel.hpp"

namespace circreg {

namespace {

ErrorSampler wc_errors(double delta) {
    const WCParams law(delta);
    return [law](std::size_t n, RngStream& rng) { return wc_sample(law, n, rng); };
}

struct Replicate {
    std::vector<double> values;
    bool redrawn = false;
};

// Simulate under `fitted`, refit and compute statistics; one redraw on failure.
Replicate bootstrap_replicate(std::span<const Angle> x, const ModelParams& fitted, std::span<const StatisticSpec> specs,
                              RngStream& rng) {
    const ErrorSampler errors = wc_errors(fitted.delta());
    FitConfig config;
    config.warm_start = fitted;
    Replicate out;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const PairedSample sample(std::vector<Angle>(x.begin(), x.end()), simulate_model(fitted, x, errors, rng));
        const FitResult refit = fit_mle(sample, config);
        if (refit.converged) {
            out.values = compute_statistics(refit.residuals, refit.params.delta(), specs);
            out.redrawn = attempt > 0;
            return out;
        }
    }
    throw FitFailure("bootstrap replicate could not be fitted after one redraw (stream " +
                     std::to_string(rng.stream_id()) + ")");
}

}  // namespace

double bootstrap_p_value(double observed, std::span<const double> replicates) {
    const auto exceed = std::count_if(replicates.begin(), replicates.end(), [&](double v) { return v >= observed; });
    return (1.0 + static_cast<double>(exceed)) / (static_cast<double>(replicates.size()) + 1.0);
}

double empirical_quantile(std::span<const double> sorted, double prob) {
    if (sorted.empty()) {
        throw std::invalid_argument("empirical_quantile of an empty sample");
    }
    const double h = (static_cast<double>(sorted.size()) - 1.0) * std::clamp(prob, 0.0, 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

TestReport classical_bootstrap(const PairedSample& data, const BootstrapConfig& config) {
    if (config.B == 0) {
        throw std::invalid_argument("bootstrap needs B >= 1");
    }
    TestReport report;
    report.statistics = config.statistics;
    report.B = config.B;
    report.seed = config.seed;
    report.fit = fit_mle(data);
    if (!report.fit.converged) {
        throw FitFailure("model fit to the observed data did not converge");
    }
    const ModelParams fitted = report.fit.params;
    report.observed = compute_statistics(report.fit.residuals, fitted.delta(), config.statistics);

    std::vector<Replicate> reps(config.B);
    parallel_for(config.B, config.threads, [&](std::size_t i) {
        RngStream rng(config.seed, replicate_stream(i));
        reps[i] = bootstrap_replicate(data.x(), fitted, config.statistics, rng);
    });

    const std::size_t k = config.statistics.size();
    report.replicates.assign(k, std::vector<double>(config.B));
    for (std::size_t i = 0; i < config.B; ++i) {
        for (std::size_t s = 0; s < k; ++s) {
            report.replicates[s][i] = reps[i].values[s];
        }
        report.redrawn += reps[i].redrawn ? 1 : 0;
    }
    for (std::size_t s = 0; s < k; ++s) {
        report.p_values.push_back(bootstrap_p_value(report.observed[s], report.replicates[s]));
    }
    return report;
}

std::string innovation_label(const InnovationLaw& law) {
    if (const auto* wc = std::get_if<WCParams>(&law)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "WC(%g)", wc->delta());
        return buf;
    }
    return std::get<AlternativeSpec>(law).label();
}

InnovationLaw parse_innovation(const std::string& text) {
    const auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') {
        throw std::invalid_argument("innovation '" + text + "' must look like NAME(a) or NAME(a,b)");
    }
    const std::string tag = text.substr(0, open);
    const std::string inner = text.substr(open + 1, text.size() - open - 2);
    std::vector<double> args;
    std::size_t pos = 0;
    while (pos <= inner.size()) {
        const auto comma = inner.find(',', pos);
        const std::string piece = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        const double v = std::stod(piece, &used);
        if (used != piece.size()) {
            throw std::invalid_argument("bad number '" + piece + "' in innovation '" + text + "'");
        }
        args.push_back(v);
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    auto need = [&](std::size_t count) {
        if (args.size() != count) {
            throw std::invalid_argument("innovation '" + text + "' takes " + std::to_string(count) + " parameter(s)");
        }
    };
    if (tag == "WC") {
        need(1);
        return WCParams(args[0]);
    }
    if (tag == "Ca" && args.size() == 1 && std::abs(args[0]) == 0.5) {
        // (1 + 2 rho cos x) / 2pi at |rho| = 1/2 is Cartwright's density with zeta = 1.
        return AlternativeSpec::cartwright(1.0, Angle(args[0] > 0.0 ? 0.0 : kPi));
    }
    const std::pair<const char*, Family> families[] = {
        {"WN", Family::WrappedNormal}, {"VM", Family::VonMises},    {"Ca", Family::Cardioid},
        {"CW", Family::Cartwright},    {"JP", Family::JonesPewsey}, {"Ba", Family::Batschelet},
    };
    for (const auto& [name, family] : families) {
        if (tag == name) {
            const bool two = family == Family::JonesPewsey || family == Family::Batschelet;
            need(two ? 2 : 1);
            return AlternativeSpec(family, args[0], two ? args[1] : 0.0);
        }
    }
    throw std::invalid_argument("unknown innovation family '" + tag + "'");
}

PowerResult warp_speed_power(const ScenarioConfig& scenario) {
    if (scenario.B == 0) {
        throw std::invalid_argument("warp-speed bootstrap needs B >= 1");
    }
    if (scenario.n < 4) {
        throw DegenerateData("warp-speed scenario needs n >= 4");
    }
    const ModelParams truth(scenario.beta0, scenario.beta1_theta, scenario.beta1_r, 0.0);

    ErrorSampler innovations;
    if (const auto* wc = std::get_if<WCParams>(&scenario.innovation)) {
        innovations = wc_errors(wc->delta());
    } else {
        auto dist = std::make_shared<const AlternativeDistribution>(std::get<AlternativeSpec>(scenario.innovation));
        innovations = [dist](std::size_t n, RngStream& rng) { return dist->sample(n, rng); };
    }

    struct Iteration {
        std::vector<double> sample;
        std::vector<double> boot;
        bool redrawn = false;
    };
    std::vector<Iteration> iters(scenario.B);
    const FitConfig first_fit;

    parallel_for(scenario.B, scenario.threads, [&](std::size_t i) {
        RngStream rng(scenario.seed, replicate_stream(i));
        for (int attempt = 0; attempt < 2; ++attempt) {
            std::vector<Angle> x;
            x.reserve(scenario.n);
            for (std::size_t j = 0; j < scenario.n; ++j) {
                x.emplace_back(kTwoPi * rng.uniform());
            }
            std::vector<Angle> y = simulate_model(truth, x, innovations, rng);
            const PairedSample sample(x, std::move(y));
            const FitResult fit = fit_mle(sample, first_fit);
            if (!fit.converged) {
                continue;
            }
            iters[i].sample = compute_statistics(fit.residuals, fit.params.delta(), scenario.statistics);
            iters[i].boot = bootstrap_replicate(x, fit.params, scenario.statistics, rng).values;
            iters[i].redrawn = attempt > 0;
            return;
        }
        throw FitFailure("warp-speed iteration " + std::to_string(i) + " could not be fitted after one redraw");
    });

    PowerResult out;
    out.statistics = scenario.statistics;
    out.alphas = scenario.alphas;
    const std::size_t k = scenario.statistics.size();
    out.sample_values.assign(k, std::vector<double>(scenario.B));
    out.bootstrap_values.assign(k, std::vector<double>(scenario.B));
    for (std::size_t i = 0; i < scenario.B; ++i) {
        for (std::size_t s = 0; s < k; ++s) {
            out.sample_values[s][i] = iters[i].sample[s];
            out.bootstrap_values[s][i] = iters[i].boot[s];
        }
        out.redrawn += iters[i].redrawn ? 1 : 0;
    }
    out.rejection_rate.assign(k, std::vector<double>(scenario.alphas.size()));
    for (std::size_t s = 0; s < k; ++s) {
        std::vector<double> sorted = out.bootstrap_values[s];
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t a = 0; a < scenario.alphas.size(); ++a) {
            const double crit = empirical_quantile(sorted, 1.0 - scenario.alphas[a]);
            const auto rejected = std::count_if(out.sample_values[s].begin(), out.sample_values[s].end(),
                                                [&](double v) { return v >= crit; });
            out.rejection_rate[s][a] = static_cast<double>(rejected) / static_cast<double>(scenario.B);
        }
    }
    return out;
}

}  // namespace circreg
