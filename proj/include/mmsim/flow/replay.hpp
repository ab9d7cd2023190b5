#pragma once

#include "mmsim/hawkes/event_stream.hpp"
#include "mmsim/hawkes/model.hpp"
#include "mmsim/hawkes/simulate.hpp"
#include "mmsim/lob/book.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace mmsim::flow {

enum class Action { LimitBuy, LimitSell, MarketBuy, MarketSell, CancelBuy, CancelSell };

std::string_view to_string(Action action);
Action action_from_string(std::string_view name);

struct FlowMapping {
    /// One action per Hawkes dimension.
    std::vector<Action> actions;
    /// Limit price offset k ≥ 0 ticks behind the same-side best, with
    /// P(k) = p(1 − p)^k.
    double offset_p = 0.5;
    /// Order volume = max(1, round(mark · volume_scale)).
    double volume_scale = 1.0;
    /// Mid (in ticks) used to place limits while a side is empty, until the
    /// book has shown a two-sided quote.
    lob::Price reference_price = 10'000;
    std::size_t snapshot_levels = 10;

    /// Throws ConfigError for p outside (0, 1), scale ≤ 0, reference ≤ 1,
    /// levels = 0 or fewer actions than `dimension`.
    void validate(std::size_t dimension) const;
};

struct Quote {
    double time;
    std::optional<lob::Price> best_bid;
    std::optional<lob::Price> best_ask;
    std::optional<double> mid;
    std::optional<lob::Price> spread;
    friend bool operator==(const Quote&, const Quote&) = default;
};

struct ReplayStats {
    std::size_t limit_orders = 0;
    std::size_t market_orders = 0;
    std::size_t cancels = 0;
    std::size_t skipped_cancels = 0;
    lob::Volume rested_volume = 0;
    lob::Volume executed_volume = 0;
    lob::Volume cancelled_volume = 0;
    lob::Volume unfilled_volume = 0;
    friend bool operator==(const ReplayStats&, const ReplayStats&) = default;
};

struct ReplayResult {
    hawkes::EventStream events;
    std::vector<lob::Execution> tape;
    std::vector<Quote> quotes;  ///< one per processed event
    lob::Book book;
    ReplayStats stats;
};

/// Feeds the events of `stream` into a copy of `init` in time order.
///
/// Limit buys go to best_bid − k and limit sells to best_ask + k. When the
/// same side is empty the anchor is the last two-sided mid (the reference
/// price before any): buys at ⌈mid⌉ − 1 − k, sells at ⌊mid⌋ + 1 + k.
/// Cancels remove a uniformly chosen live order of the side; an empty side
/// counts a skipped cancel. Offsets use derive_seed(seed, "flow/offset") and
/// cancel picks derive_seed(seed, "flow/cancel").
ReplayResult replay_stream(const hawkes::EventStream& stream, const FlowMapping& mapping, const lob::Book& init,
                           std::uint64_t seed);

/// Simulates the model with cfg, then replays the stream with cfg.seed.
ReplayResult replay(const hawkes::HawkesModel& model, const FlowMapping& mapping, const hawkes::SimConfig& cfg,
                    const lob::Book& init);

}  // namespace mmsim::flow
