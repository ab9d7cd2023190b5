#pragma once

#include "mmsim/hawkes/fit.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mmsim::hawkes {

struct BootstrapOptions {
    std::size_t reps = 100;
    std::uint64_t seed = 0;
    /// 0 means hardware concurrency.
    std::size_t threads = 0;
    /// Every replicate uses the seed of replicate 0 (degenerate check).
    bool shared_seed = false;
};

struct BootstrapResult {
    std::vector<double> std_errors;  ///< parameter_vector order
    std::size_t used;
    std::size_t excluded;
};

/// Parametric bootstrap: replicate k simulates fit.model over fit.horizon with
/// derive_seed(seed, "bootstrap/<k>"), refits with fit.options (marks held at
/// the fitted laws) and contributes its parameter vector. Standard errors are
/// sample standard deviations over converged replicates, aggregated by index
/// so the result does not depend on thread scheduling.
///
/// Throws ConfigError unless fit.converged and reps ≥ 2; BootstrapError when
/// more than half the replicates fail.
BootstrapResult bootstrap_std_errors(const FitResult& fit, const BootstrapOptions& opts);

}  // namespace mmsim::hawkes
