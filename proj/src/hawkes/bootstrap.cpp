#include "mmsim/hawkes/bootstrap.hpp"

#include "mmsim/error.hpp"
#include "mmsim/hawkes/rng.hpp"
#include "mmsim/hawkes/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fmt/format.h>
#include <optional>
#include <thread>

namespace mmsim::hawkes {

BootstrapResult bootstrap_std_errors(const FitResult& fit, const BootstrapOptions& opts) {
    if (!fit.converged) throw ConfigError("bootstrap needs a converged fit");
    if (opts.reps < 2) throw ConfigError(fmt::format("bootstrap needs at least 2 replicates, got {}", opts.reps));

    FitOptions refit = fit.options;
    refit.marks = std::vector<MarkDistribution>(fit.model.mark_laws().begin(), fit.model.mark_laws().end());
    const std::size_t d = fit.model.dimension();

    std::vector<std::optional<std::vector<double>>> estimates(opts.reps);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < opts.reps; k = next++) {
            SimConfig cfg;
            cfg.horizon = fit.horizon;
            cfg.seed = derive_seed(opts.seed, fmt::format("bootstrap/{}", opts.shared_seed ? 0 : k));
            try {
                const EventStream sample = simulate(fit.model, cfg);
                const FitResult r = fit_mle(sample, fit.family, d, refit);
                if (r.converged) estimates[k] = parameter_vector(r.model, fit.family);
            } catch (const Error&) {
                // Failed replicate: left empty and counted below.
            }
        }
    };
    std::size_t threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, opts.reps);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<std::vector<double>> good;
    for (auto& e : estimates)
        if (e) good.push_back(std::move(*e));
    const std::size_t excluded = opts.reps - good.size();
    if (2 * excluded > opts.reps || good.size() < 2)
        throw BootstrapError(fmt::format("{} of {} bootstrap replicates failed", excluded, opts.reps));

    const std::size_t p = good.front().size();
    std::vector<double> se(p, 0.0);
    const double n = static_cast<double>(good.size());
    for (std::size_t c = 0; c < p; ++c) {
        double mean = 0.0;
        for (const auto& g : good) mean += g[c];
        mean /= n;
        double ss = 0.0;
        for (const auto& g : good) ss += (g[c] - mean) * (g[c] - mean);
        se[c] = std::sqrt(ss / (n - 1.0));
    }
    return {std::move(se), good.size(), excluded};
}

}  // namespace mmsim::hawkes
