#include "mmsim/flow/replay.hpp"

#include "mmsim/error.hpp"
#include "mmsim/hawkes/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace mmsim::flow {

namespace {

using lob::Price;
using lob::Side;
using lob::Volume;

struct ActionName {
    Action action;
    std::string_view name;
};

constexpr ActionName kActionNames[] = {
    {Action::LimitBuy, "limit_buy"},   {Action::LimitSell, "limit_sell"}, {Action::MarketBuy, "market_buy"},
    {Action::MarketSell, "market_sell"}, {Action::CancelBuy, "cancel_buy"}, {Action::CancelSell, "cancel_sell"},
};

/// Live ids of one side; dead entries are dropped when drawn.
class IdPool {
public:
    void add(lob::OrderId id) { ids_.push_back(id); }

    std::optional<lob::OrderId> draw(const lob::Book& book, hawkes::Rng& rng) {
        while (!ids_.empty()) {
            const std::size_t k = static_cast<std::size_t>(rng.below(ids_.size()));
            const lob::OrderId id = ids_[k];
            if (book.contains(id)) return id;
            ids_[k] = ids_.back();
            ids_.pop_back();
        }
        return std::nullopt;
    }

private:
    std::vector<lob::OrderId> ids_;
};

std::uint64_t geometric(hawkes::Rng& rng, double p) {
    return static_cast<std::uint64_t>(std::floor(std::log(rng.uniform_open()) / std::log1p(-p)));
}

}  // namespace

std::string_view to_string(Action action) {
    for (const auto& a : kActionNames)
        if (a.action == action) return a.name;
    return "limit_buy";
}

Action action_from_string(std::string_view name) {
    for (const auto& a : kActionNames)
        if (a.name == name) return a.action;
    throw ConfigError(fmt::format("unknown flow action '{}'", name));
}

void FlowMapping::validate(std::size_t dimension) const {
    if (actions.size() < dimension)
        throw ConfigError(fmt::format("flow mapping covers {} of {} dimensions", actions.size(), dimension));
    if (!(offset_p > 0.0 && offset_p < 1.0))
        throw ConfigError(fmt::format("offset parameter must lie in (0, 1), got {}", offset_p));
    if (!(volume_scale > 0.0) || !std::isfinite(volume_scale))
        throw ConfigError(fmt::format("volume scale must be > 0, got {}", volume_scale));
    if (reference_price <= 1) throw ConfigError(fmt::format("reference price must be > 1 tick, got {}", reference_price));
    if (snapshot_levels == 0) throw ConfigError("snapshot levels must be >= 1");
}

ReplayResult replay_stream(const hawkes::EventStream& stream, const FlowMapping& mapping, const lob::Book& init,
                           std::uint64_t seed) {
    mapping.validate(stream.dimension());
    ReplayResult out{stream, {}, {}, init, {}};
    lob::Book& book = out.book;
    ReplayStats& stats = out.stats;
    hawkes::Rng offsets(seed, "flow/offset");
    hawkes::Rng picks(seed, "flow/cancel");

    IdPool pools[2];
    lob::OrderId next_id = 1;
    for (Side side : {Side::Buy, Side::Sell}) {
        for (lob::OrderId id : book.live_ids(side)) {
            pools[static_cast<int>(side)].add(id);
            next_id = std::max(next_id, id + 1);
        }
    }
    double reference = static_cast<double>(mapping.reference_price);
    if (const auto s = book.snapshot(1); s.mid) reference = *s.mid;

    out.quotes.reserve(stream.size());
    for (const hawkes::Event& e : stream) {
        const Action action = mapping.actions[e.dim];
        const Volume volume = std::max<Volume>(1, std::llround(e.mark * mapping.volume_scale));
        switch (action) {
            case Action::LimitBuy:
            case Action::LimitSell: {
                const Side side = action == Action::LimitBuy ? Side::Buy : Side::Sell;
                const auto k = static_cast<Price>(geometric(offsets, mapping.offset_p));
                Price price;
                if (side == Side::Buy) {
                    const auto best = book.best_bid();
                    price = best ? *best - k : static_cast<Price>(std::ceil(reference)) - 1 - k;
                } else {
                    const auto best = book.best_ask();
                    price = best ? *best + k : static_cast<Price>(std::floor(reference)) + 1 + k;
                }
                price = std::max<Price>(price, 1);
                while (book.known(next_id)) ++next_id;
                const lob::OrderId id = next_id++;
                const auto fills = book.submit_limit({id, side, price, volume, e.time});
                Volume filled = 0;
                for (const auto& f : fills) filled += f.volume;
                out.tape.insert(out.tape.end(), fills.begin(), fills.end());
                stats.executed_volume += filled;
                stats.rested_volume += volume - filled;
                if (book.contains(id)) pools[static_cast<int>(side)].add(id);
                ++stats.limit_orders;
                break;
            }
            case Action::MarketBuy:
            case Action::MarketSell: {
                const Side side = action == Action::MarketBuy ? Side::Buy : Side::Sell;
                lob::MarketResult r = book.submit_market(side, volume, e.time);
                for (const auto& f : r.executions) stats.executed_volume += f.volume;
                out.tape.insert(out.tape.end(), r.executions.begin(), r.executions.end());
                stats.unfilled_volume += r.unfilled;
                ++stats.market_orders;
                break;
            }
            case Action::CancelBuy:
            case Action::CancelSell: {
                const Side side = action == Action::CancelBuy ? Side::Buy : Side::Sell;
                if (const auto id = pools[static_cast<int>(side)].draw(book, picks)) {
                    stats.cancelled_volume += book.cancel(*id).volume;
                    ++stats.cancels;
                } else {
                    ++stats.skipped_cancels;
                }
                break;
            }
        }
        const lob::Snapshot s = book.snapshot(mapping.snapshot_levels);
        if (s.mid) reference = *s.mid;
        out.quotes.push_back({e.time, s.best_bid, s.best_ask, s.mid, s.spread});
    }
    return out;
}

ReplayResult replay(const hawkes::HawkesModel& model, const FlowMapping& mapping, const hawkes::SimConfig& cfg,
                    const lob::Book& init) {
    mapping.validate(model.dimension());
    const hawkes::EventStream stream = hawkes::simulate(model, cfg);
    return replay_stream(stream, mapping, init, cfg.seed);
}

}  // namespace mmsim::flow
