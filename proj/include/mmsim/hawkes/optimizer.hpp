#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace mmsim::hawkes {

struct OptimizerOptions {
    std::size_t max_iterations = 2000;
    /// Relative objective tolerance.
    double tolerance = 1e-9;
    /// Initial simplex step in each coordinate.
    double initial_step = 0.5;
};

struct OptimizerResult {
    std::vector<double> x;
    double fx;
    std::size_t iterations;
    bool converged;
};

using Objective = std::function<double(const std::vector<double>&)>;
using GradientObjective = std::function<double(const std::vector<double>&, std::vector<double>&)>;

/// Minimizes f with the Nelder-Mead simplex (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2). Converged when the spread of simplex values
/// is below tolerance·(|f_best| + tiny); one restart from the best vertex
/// confirms convergence. Non-finite values count as +inf.
OptimizerResult nelder_mead(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts = {});

/// BFGS with Armijo backtracking. `f` returns the value and fills the
/// gradient. Converged when the relative decrease of one step is below the
/// tolerance or the gradient vanishes.
OptimizerResult bfgs(const GradientObjective& f, std::vector<double> x0, const OptimizerOptions& opts = {});

}  // namespace mmsim::hawkes
