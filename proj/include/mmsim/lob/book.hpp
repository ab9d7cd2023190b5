#pragma once

#include "mmsim/error.hpp"

#include <cstdint>
#include <functional>
#include <list>
#include <map>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mmsim::lob {

using Price = std::int64_t;   ///< integer ticks
using Volume = std::int64_t;  ///< integer units
using OrderId = std::uint64_t;

/// Buy orders rest on the bid side, sell orders on the ask side.
enum class Side { Buy, Sell };

std::string_view to_string(Side side);
Side side_from_string(std::string_view name);
inline Side opposite(Side s) { return s == Side::Buy ? Side::Sell : Side::Buy; }

struct Order {
    OrderId id;
    Side side;
    Price price;
    Volume volume;
    double timestamp;
    friend bool operator==(const Order&, const Order&) = default;
};

struct Execution {
    Side taker_side;
    OrderId maker_order_id;
    Price price;  ///< the maker's limit price
    Volume volume;
    double timestamp;
    friend bool operator==(const Execution&, const Execution&) = default;
};

struct MarketResult {
    std::vector<Execution> executions;
    Volume unfilled;  ///< discarded remainder when liquidity ran out
};

struct LevelView {
    Price price;
    Volume volume;
    friend bool operator==(const LevelView&, const LevelView&) = default;
};

struct Snapshot {
    std::vector<LevelView> bids;  ///< best first
    std::vector<LevelView> asks;  ///< best first
    std::optional<Price> best_bid;
    std::optional<Price> best_ask;
    std::optional<Price> spread;
    std::optional<double> mid;
    /// Volumes over the reported levels; depth is absent for an empty book.
    std::optional<Volume> depth;
    Volume bid_depth = 0;
    Volume ask_depth = 0;
    std::optional<double> imbalance;
    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// Convert a decimal price to ticks. Throws DataError unless price is a whole
/// number of ticks (within 1e-9 relative) and positive.
Price to_ticks(double price, double tick_size);
double from_ticks(Price ticks, double tick_size);

/// Price-time priority limit order book over integer ticks.
///
/// Each side maps price to a FIFO queue; an id index gives O(1) access to
/// any resting order. Fully filled and cancelled ids are remembered so that
/// cancel can tell them apart from ids never seen.
class Book {
public:
    explicit Book(double tick_size = 0.01);

    /// Copies rebuild the id index against their own queues.
    Book(const Book& other);
    Book& operator=(const Book& other);
    Book(Book&&) noexcept = default;
    Book& operator=(Book&&) noexcept = default;

    double tick_size() const noexcept { return tick_size_; }

    /// Matches against the opposite side while the order crosses; the rest
    /// joins the tail of its price level. Throws DataError for volume ≤ 0 or
    /// price ≤ 0 and IdError for an id already used.
    std::vector<Execution> submit_limit(const Order& order);

    /// Walks the opposite side best level first, front of queue first.
    /// Throws DataError for volume ≤ 0.
    MarketResult submit_market(Side side, Volume volume, double timestamp);

    /// Removes a resting order. Throws NotFoundError with the reason.
    Order cancel(OrderId id);

    /// Reduces a resting order by `by` (< its volume), keeping its priority.
    void reduce(OrderId id, Volume by);

    /// Fills `volume` of a specific resting order (≤ its volume) as a trade
    /// against an incoming order of the opposite side.
    Execution execute(OrderId id, Volume volume, double timestamp);

    Snapshot snapshot(std::size_t levels) const;

    std::optional<Price> best_bid() const;
    std::optional<Price> best_ask() const;
    bool contains(OrderId id) const { return index_.count(id) != 0; }
    /// True for resting, filled and cancelled ids.
    bool known(OrderId id) const { return contains(id) || retired_.count(id) != 0; }
    std::optional<Order> find(OrderId id) const;
    std::size_t order_count() const noexcept { return index_.size(); }
    Volume resting_volume() const noexcept { return resting_; }
    Volume resting_volume(Side side) const;
    /// Resting orders at one level in queue order.
    std::vector<Order> queue(Side side, Price price) const;
    /// Ids of all resting orders of one side, best level first, queue order.
    std::vector<OrderId> live_ids(Side side) const;

    /// Verifies no-cross, level totals, positive volumes and that the id
    /// index mirrors the queues.
    /// Throws std::logic_error describing the first violation.
    void check_invariants() const;

private:
    struct Level {
        std::list<Order> queue;
        Volume total = 0;
    };
    using Bids = std::map<Price, Level, std::greater<Price>>;
    using Asks = std::map<Price, Level, std::less<Price>>;
    struct Locator {
        Side side;
        Price price;
        std::list<Order>::iterator it;
    };

    template <class Ladder>
    void match(Ladder& ladder, Side taker, Volume& remaining, std::optional<Price> limit, double timestamp,
               std::vector<Execution>& out);
    Level& level_of(const Locator& loc);
    void erase_level_if_empty(const Locator& loc);
    void retire(OrderId id, NotFoundError::Reason reason) { retired_[id] = reason; }
    void rebuild_index();

    double tick_size_;
    Bids bids_;
    Asks asks_;
    std::unordered_map<OrderId, Locator> index_;
    std::unordered_map<OrderId, NotFoundError::Reason> retired_;
    Volume resting_ = 0;
};

}  // namespace mmsim::lob
