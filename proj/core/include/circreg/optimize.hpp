#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace circreg::optim {

struct LocalResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct NelderMeadOptions {
    int max_iterations = 2000;
    /// Stop once every vertex lies within this distance of the best vertex.
    double diameter_tolerance = 1e-8;
    /// Initial simplex offset along each coordinate.
    double initial_step = 0.5;
};

/// Minimize `f` with the Nelder-Mead simplex (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2).
LocalResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                        const NelderMeadOptions& options = {});

struct BfgsOptions {
    int max_iterations = 200;
    /// Stop when the infinity norm of the gradient falls below this.
    double gradient_tolerance = 1e-9;
    /// Stop when a full step moves less than this in every coordinate.
    double step_tolerance = 1e-13;
};

/// Objective returning f(x) and writing the gradient into `grad`.
using ValueGradient = std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Minimize with BFGS (inverse-Hessian update, Armijo backtracking).
LocalResult bfgs(const ValueGradient& f, std::vector<double> start, const BfgsOptions& options = {});

}  // namespace circreg::optim
