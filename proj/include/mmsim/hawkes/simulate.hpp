#pragma once

#include "mmsim/hawkes/event_stream.hpp"
#include "mmsim/hawkes/model.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace mmsim::hawkes {

enum class SimMethod { Thinning, Cluster, Auto };

std::string_view to_string(SimMethod method);
SimMethod sim_method_from_string(std::string_view name);

struct SimConfig {
    double horizon = 1.0;
    std::uint64_t seed = 0;
    SimMethod method = SimMethod::Auto;
    std::size_t max_events = 10'000'000;
    /// Simulated but discarded lead-in; output times are shifted to start at 0.
    double burn_in = 0.0;

    /// Throws ConfigError unless horizon > 0, max_events > 0, burn_in ≥ 0.
    void validate() const;
};

/// One candidate of the thinning loop: accepted iff u ≤ intensity / bound.
struct ThinningStep {
    double time;
    double intensity;  ///< Σ_i λ*_i at the candidate
    double bound;      ///< dominating rate used to draw the candidate
    double u;
    bool accepted;
};

using ThinningObserver = std::function<void(const ThinningStep&)>;

/// Ogata thinning with the adaptive bound λ̄ = Σ_i λ*_i(s⁺) refreshed after
/// every candidate. Valid because every supported kernel decays between
/// events and every link is non-decreasing.
///
/// Random streams: candidate times, acceptance and dimension draws come from
/// derive_seed(seed, "times"); the mark of an accepted event is drawn
/// immediately from derive_seed(seed, "marks/<dim>").
///
/// Throws ExplosionError (carrying ρ(LG)) when more than max_events are
/// generated; unstable models are otherwise allowed.
EventStream simulate_thinning(const HawkesModel& model, const SimConfig& cfg,
                              const ThinningObserver& observer = {});

/// Immigration-birth construction: Poisson(μ_i) immigrants per dimension, each
/// event of dimension p with excitation weight w spawning dimension-c children
/// as an inhomogeneous Poisson process of rate w·φ_cp(t − parent), recursively.
/// Offspring beyond the horizon are never drawn.
///
/// When `cluster_sizes` is given it receives the in-horizon size of every
/// cluster (immigrant plus descendants), indexed by immigrant.
///
/// Throws UnsupportedError for non-identity links and StabilityError when
/// ρ(G) ≥ 1.
EventStream simulate_cluster(const HawkesModel& model, const SimConfig& cfg,
                             std::vector<std::size_t>* cluster_sizes = nullptr);

/// Cluster when all links are identity and ρ(G) ≤ 0.95, else thinning.
SimMethod resolve_method(const HawkesModel& model, SimMethod requested);

EventStream simulate(const HawkesModel& model, const SimConfig& cfg);

}  // namespace mmsim::hawkes
