#include "circreg/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace circreg::optim {

namespace {

double max_distance_to(const std::vector<std::vector<double>>& simplex, std::size_t best) {
    double diameter = 0.0;
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (i == best) {
            continue;
        }
        double d2 = 0.0;
        for (std::size_t k = 0; k < simplex[i].size(); ++k) {
            const double d = simplex[i][k] - simplex[best][k];
            d2 += d * d;
        }
        diameter = std::max(diameter, std::sqrt(d2));
    }
    return diameter;
}

}  // namespace

LocalResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                        const NelderMeadOptions& options) {
    const std::size_t dim = start.size();
    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (std::size_t k = 0; k < dim; ++k) {
        simplex[k + 1][k] += options.initial_step;
    }
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
        values[i] = f(simplex[i]);
    }

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim);
    std::vector<double> trial(dim);
    std::vector<double> trial2(dim);

    auto point_along = [&](double t, std::vector<double>& out, const std::vector<double>& worst) {
        for (std::size_t k = 0; k < dim; ++k) {
            out[k] = centroid[k] + t * (worst[k] - centroid[k]);
        }
    };

    LocalResult result;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        // Stable insertion sort: deterministic on ties and allocation free.
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = 1; i < order.size(); ++i) {
            const std::size_t key = order[i];
            std::size_t j = i;
            for (; j > 0 && values[key] < values[order[j - 1]]; --j) {
                order[j] = order[j - 1];
            }
            order[j] = key;
        }
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        if (max_distance_to(simplex, best) < options.diameter_tolerance) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t k = 0; k < dim; ++k) {
                centroid[k] += simplex[i][k];
            }
        }
        for (double& c : centroid) {
            c /= static_cast<double>(dim);
        }

        point_along(-1.0, trial, simplex[worst]);
        const double f_reflect = f(trial);
        if (f_reflect < values[best]) {
            point_along(-2.0, trial2, simplex[worst]);
            const double f_expand = f(trial2);
            if (f_expand < f_reflect) {
                simplex[worst] = trial2;
                values[worst] = f_expand;
            } else {
                simplex[worst] = trial;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }
        if (f_reflect < values[worst]) {
            point_along(-0.5, trial2, simplex[worst]);  // outside contraction
            const double f_contract = f(trial2);
            if (f_contract <= f_reflect) {
                simplex[worst] = trial2;
                values[worst] = f_contract;
                continue;
            }
        } else {
            point_along(0.5, trial2, simplex[worst]);  // inside contraction
            const double f_contract = f(trial2);
            if (f_contract < values[worst]) {
                simplex[worst] = trial2;
                values[worst] = f_contract;
                continue;
            }
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t k = 0; k < dim; ++k) {
                simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
            }
            values[i] = f(simplex[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.x = simplex[best];
    result.value = values[best];
    result.iterations = iter;
    return result;
}

LocalResult bfgs(const ValueGradient& f, std::vector<double> x, const BfgsOptions& options) {
    const std::size_t dim = x.size();
    std::vector<double> g(dim);
    std::vector<double> g_new(dim);
    std::vector<double> x_new(dim);
    std::vector<double> direction(dim);
    std::vector<double> s(dim);
    std::vector<double> y(dim);
    std::vector<double> hy(dim);
    // Inverse Hessian approximation, row-major.
    std::vector<double> h(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        h[i * dim + i] = 1.0;
    }

    double fx = f(x, g);
    LocalResult result;
    int iter = 0;
    bool scaled = false;
    for (; iter < options.max_iterations; ++iter) {
        double gmax = 0.0;
        for (double gi : g) {
            gmax = std::max(gmax, std::abs(gi));
        }
        if (!std::isfinite(fx)) {
            break;
        }
        if (gmax < options.gradient_tolerance) {
            result.converged = true;
            break;
        }

        double slope = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double d = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                d -= h[i * dim + j] * g[j];
            }
            direction[i] = d;
            slope += d * g[i];
        }
        if (slope >= 0.0) {
            // Not a descent direction; restart from steepest descent.
            std::fill(h.begin(), h.end(), 0.0);
            for (std::size_t i = 0; i < dim; ++i) {
                h[i * dim + i] = 1.0;
                direction[i] = -g[i];
            }
            slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
        }

        double step = 1.0;
        double f_new = 0.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < dim; ++i) {
                x_new[i] = x[i] + step * direction[i];
            }
            f_new = f(x_new, g_new);
            if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // No decrease representable along the direction: treat as converged
            // when the gradient is already small relative to the function scale.
            result.converged = gmax < 1e-6 * std::max(1.0, std::abs(fx));
            break;
        }

        double max_move = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            s[i] = x_new[i] - x[i];
            y[i] = g_new[i] - g[i];
            max_move = std::max(max_move, std::abs(s[i]));
        }
        x.swap(x_new);
        g.swap(g_new);
        fx = f_new;
        if (max_move < options.step_tolerance) {
            result.converged = true;
            break;
        }

        const double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
        if (sy <= 1e-16) {
            continue;
        }
        if (!scaled) {
            // Rescale the initial identity to the observed curvature.
            const double yy = std::inner_product(y.begin(), y.end(), y.begin(), 0.0);
            const double gamma = sy / yy;
            for (double& v : h) {
                v *= gamma;
            }
            scaled = true;
        }
        for (std::size_t i = 0; i < dim; ++i) {
            double v = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                v += h[i * dim + j] * y[j];
            }
            hy[i] = v;
        }
        const double yhy = std::inner_product(y.begin(), y.end(), hy.begin(), 0.0);
        const double rho = 1.0 / sy;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                h[i * dim + j] += rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
            }
        }
    }

    result.x = std::move(x);
    result.value = fx;
    result.iterations = iter;
    return result;
}

}  // namespace circreg::optim
