#pragma once

// Naive order book used as a differential oracle: one flat vector of resting
// orders, every query a linear scan.

#include "mmsim/lob/book.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace mmsim::testing {

class ReferenceBook {
public:
    std::vector<lob::Execution> submit_limit(const lob::Order& o) {
        std::vector<lob::Execution> out;
        lob::Volume remaining = o.volume;
        take(o.side, remaining, o.price, o.timestamp, out);
        if (remaining > 0) {
            lob::Order rest = o;
            rest.volume = remaining;
            orders_.push_back({rest, seq_++});
        }
        return out;
    }

    lob::MarketResult submit_market(lob::Side side, lob::Volume volume, double ts) {
        lob::MarketResult r{{}, volume};
        take(side, r.unfilled, std::nullopt, ts, r.executions);
        return r;
    }

    std::optional<lob::Order> cancel(lob::OrderId id) {
        for (auto it = orders_.begin(); it != orders_.end(); ++it) {
            if (it->order.id == id) {
                lob::Order o = it->order;
                orders_.erase(it);
                return o;
            }
        }
        return std::nullopt;
    }

    lob::Snapshot snapshot(std::size_t levels) const {
        std::map<lob::Price, lob::Volume, std::greater<>> bids;
        std::map<lob::Price, lob::Volume> asks;
        for (const auto& r : orders_) {
            if (r.order.side == lob::Side::Buy)
                bids[r.order.price] += r.order.volume;
            else
                asks[r.order.price] += r.order.volume;
        }
        lob::Snapshot s;
        for (const auto& [p, v] : bids) {
            if (s.bids.size() == levels) break;
            s.bids.push_back({p, v});
            s.bid_depth += v;
        }
        for (const auto& [p, v] : asks) {
            if (s.asks.size() == levels) break;
            s.asks.push_back({p, v});
            s.ask_depth += v;
        }
        if (!bids.empty()) s.best_bid = bids.begin()->first;
        if (!asks.empty()) s.best_ask = asks.begin()->first;
        if (s.best_bid && s.best_ask) {
            s.spread = *s.best_ask - *s.best_bid;
            s.mid = 0.5 * static_cast<double>(*s.best_bid + *s.best_ask);
        }
        if (s.best_bid || s.best_ask) {
            s.depth = s.bid_depth + s.ask_depth;
            s.imbalance = static_cast<double>(s.bid_depth - s.ask_depth) / static_cast<double>(*s.depth);
        }
        return s;
    }

    std::vector<lob::OrderId> ids(lob::Side side) const {
        std::vector<lob::OrderId> out;
        for (const auto& r : orders_)
            if (r.order.side == side) out.push_back(r.order.id);
        return out;
    }

    std::size_t size() const { return orders_.size(); }

private:
    struct Resting {
        lob::Order order;
        std::uint64_t seq;
    };

    void take(lob::Side taker, lob::Volume& remaining, std::optional<lob::Price> limit, double ts,
              std::vector<lob::Execution>& out) {
        while (remaining > 0) {
            auto best = orders_.end();
            for (auto it = orders_.begin(); it != orders_.end(); ++it) {
                if (it->order.side == taker) continue;
                if (best == orders_.end()) {
                    best = it;
                    continue;
                }
                const bool better = taker == lob::Side::Buy ? it->order.price < best->order.price
                                                            : it->order.price > best->order.price;
                if (better || (it->order.price == best->order.price && it->seq < best->seq)) best = it;
            }
            if (best == orders_.end()) return;
            const lob::Price p = best->order.price;
            if (limit && (taker == lob::Side::Buy ? p > *limit : p < *limit)) return;
            const lob::Volume fill = std::min(remaining, best->order.volume);
            out.push_back({taker, best->order.id, p, fill, ts});
            remaining -= fill;
            best->order.volume -= fill;
            if (best->order.volume == 0) orders_.erase(best);
        }
    }

    std::vector<Resting> orders_;
    std::uint64_t seq_ = 0;
};

}  // namespace mmsim::testing
