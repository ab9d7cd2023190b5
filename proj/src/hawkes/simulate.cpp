#include "mmsim/hawkes/simulate.hpp"

#include "mmsim/error.hpp"
#include "mmsim/hawkes/intensity.hpp"
#include "mmsim/hawkes/rng.hpp"
#include "mmsim/hawkes/stability.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <unordered_set>

namespace mmsim::hawkes {

namespace {

constexpr double kAutoClusterLimit = 0.95;

std::vector<Rng> mark_streams(std::uint64_t seed, std::size_t d) {
    std::vector<Rng> out;
    out.reserve(d);
    for (std::size_t i = 0; i < d; ++i) out.emplace_back(seed, fmt::format("marks/{}", i));
    return out;
}

[[noreturn]] void explode(const HawkesModel& model, std::size_t cap) {
    const double rho = stability_check(model).rho;
    throw ExplosionError(
        fmt::format("simulation exceeded max_events = {} (spectral radius rho(LG) = {:.6g})", cap, rho), rho);
}

EventStream finish(std::vector<Event> events, const SimConfig& cfg, std::size_t d) {
    if (cfg.burn_in > 0.0) {
        std::vector<Event> kept;
        kept.reserve(events.size());
        for (const Event& e : events)
            if (e.time > cfg.burn_in) kept.push_back({e.time - cfg.burn_in, e.dim, e.mark});
        // The shift can round two close times together; drop the later one
        // rather than emit a non-simple stream.
        std::vector<Event> simple;
        simple.reserve(kept.size());
        for (const Event& e : kept)
            if (simple.empty() || e.time > simple.back().time) simple.push_back(e);
        events = std::move(simple);
        while (!events.empty() && events.back().time > cfg.horizon) events.pop_back();
    }
    return EventStream(std::move(events), cfg.horizon, d);
}

/// Offset in (0, limit] from the kernel shape normalized on [0, limit].
double truncated_offset(const Kernel& k, double limit, double u) {
    if (const auto* e = std::get_if<ExponentialKernel>(&k.variant())) {
        const double f_limit = -std::expm1(-e->beta * limit);
        return -std::log1p(-u * f_limit) / e->beta;
    }
    const auto& p = std::get<PowerLawKernel>(k.variant());
    const double f_limit = -std::expm1((1.0 - p.exponent) * std::log1p(limit / p.cutoff));
    return p.cutoff * std::expm1(std::log1p(-u * f_limit) / (1.0 - p.exponent));
}

}  // namespace

std::string_view to_string(SimMethod method) {
    switch (method) {
        case SimMethod::Thinning: return "thinning";
        case SimMethod::Cluster: return "cluster";
        case SimMethod::Auto: return "auto";
    }
    return "auto";
}

SimMethod sim_method_from_string(std::string_view name) {
    if (name == "thinning") return SimMethod::Thinning;
    if (name == "cluster") return SimMethod::Cluster;
    if (name == "auto" || name == "hybrid") return SimMethod::Auto;
    throw ConfigError(fmt::format("unknown simulation method '{}'", name));
}

void SimConfig::validate() const {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw ConfigError(fmt::format("simulation horizon must be > 0, got {}", horizon));
    if (max_events == 0) throw ConfigError("max_events must be > 0");
    if (!(burn_in >= 0.0) || !std::isfinite(burn_in))
        throw ConfigError(fmt::format("burn-in must be >= 0, got {}", burn_in));
}

EventStream simulate_thinning(const HawkesModel& model, const SimConfig& cfg, const ThinningObserver& observer) {
    cfg.validate();
    const std::size_t d = model.dimension();
    const double end = cfg.burn_in + cfg.horizon;

    Rng times(cfg.seed, "times");
    std::vector<Rng> marks = mark_streams(cfg.seed, d);
    IntensityTracker tracker(model);
    std::vector<double> lambda(d);
    std::vector<Event> events;

    double t = 0.0;
    double bound = tracker.total_intensity();
    while (true) {
        const double candidate = t + times.exponential(bound);
        if (candidate > end) break;
        if (candidate == t) continue;
        t = candidate;
        tracker.advance(t);

        double total = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            lambda[i] = tracker.intensity(i);
            total += lambda[i];
        }
        const double u = times.uniform();
        const bool accepted = u * bound <= total;
        if (observer) observer({t, total, bound, u, accepted});
        if (!accepted) {
            bound = total;
            continue;
        }

        const double pick = times.uniform() * total;
        std::size_t dim = 0;
        double acc = lambda[0];
        while (dim + 1 < d && pick >= acc) acc += lambda[++dim];
        const double mark = model.marks(dim).sample(marks[dim]);
        tracker.add_event(dim, mark);
        events.push_back({t, dim, mark});
        if (events.size() > cfg.max_events) explode(model, cfg.max_events);
        bound = tracker.total_intensity();
    }
    return finish(std::move(events), cfg, d);
}

EventStream simulate_cluster(const HawkesModel& model, const SimConfig& cfg,
                             std::vector<std::size_t>* cluster_sizes) {
    cfg.validate();
    if (!model.all_identity_links())
        throw UnsupportedError("cluster simulation needs identity links (linear Hawkes)");
    const StabilityReport report = stability_check(model);
    if (!(report.branching < 1.0))
        throw StabilityError(
            fmt::format("cluster simulation needs a subcritical model, rho(G) = {:.6g}", report.branching),
            report.branching);

    const std::size_t d = model.dimension();
    const double end = cfg.burn_in + cfg.horizon;
    Rng immigrants(cfg.seed, "cluster/immigrants");
    Rng offspring(cfg.seed, "cluster/offspring");
    std::vector<Rng> marks = mark_streams(cfg.seed, d);

    struct Node {
        Event event;
        std::size_t cluster;
    };
    std::vector<Node> nodes;
    std::unordered_set<double> used;
    std::size_t clusters = 0;

    for (std::size_t i = 0; i < d; ++i) {
        double t = 0.0;
        while (true) {
            t += immigrants.exponential(model.baseline(i));
            if (t > end) break;
            if (!used.insert(t).second) continue;
            const double mark = model.marks(i).sample(marks[i]);
            nodes.push_back({{t, i, mark}, clusters++});
            if (nodes.size() > cfg.max_events) explode(model, cfg.max_events);
        }
    }

    for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
        const Node parent = nodes[idx];
        const double w = model.marks(parent.event.dim).excitation_weight(parent.event.mark);
        const double remaining = end - parent.event.time;
        if (w == 0.0 || remaining <= 0.0) continue;
        for (std::size_t c = 0; c < d; ++c) {
            const Kernel& k = model.kernel(c, parent.event.dim);
            if (k.is_zero()) continue;
            const std::uint64_t n = offspring.poisson(w * k.integral_to(remaining));
            for (std::uint64_t m = 0; m < n; ++m) {
                // Re-draw on ties; a parent so close to the horizon that no
                // representable child time exists loses the child.
                double t = 0.0;
                bool placed = false;
                for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
                    t = parent.event.time + truncated_offset(k, remaining, offspring.uniform_open());
                    placed = t > parent.event.time && t <= end && used.count(t) == 0;
                }
                if (!placed) continue;
                used.insert(t);
                const double mark = model.marks(c).sample(marks[c]);
                nodes.push_back({{t, c, mark}, parent.cluster});
                if (nodes.size() > cfg.max_events) explode(model, cfg.max_events);
            }
        }
    }

    std::sort(nodes.begin(), nodes.end(),
              [](const Node& a, const Node& b) { return a.event.time < b.event.time; });
    if (cluster_sizes) {
        cluster_sizes->assign(clusters, 0);
        for (const Node& n : nodes)
            if (n.event.time > cfg.burn_in) ++(*cluster_sizes)[n.cluster];
    }
    std::vector<Event> events;
    events.reserve(nodes.size());
    for (const Node& n : nodes) events.push_back(n.event);
    return finish(std::move(events), cfg, d);
}

SimMethod resolve_method(const HawkesModel& model, SimMethod requested) {
    if (requested != SimMethod::Auto) return requested;
    if (model.all_identity_links() && stability_check(model).branching <= kAutoClusterLimit)
        return SimMethod::Cluster;
    return SimMethod::Thinning;
}

EventStream simulate(const HawkesModel& model, const SimConfig& cfg) {
    return resolve_method(model, cfg.method) == SimMethod::Cluster ? simulate_cluster(model, cfg)
                                                                    : simulate_thinning(model, cfg);
}

}  // namespace mmsim::hawkes
