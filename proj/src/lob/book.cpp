#include "mmsim/lob/book.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace mmsim::lob {

std::string_view to_string(Side side) { return side == Side::Buy ? "buy" : "sell"; }

Side side_from_string(std::string_view name) {
    if (name == "buy" || name == "bid" || name == "B" || name == "1") return Side::Buy;
    if (name == "sell" || name == "ask" || name == "S" || name == "-1") return Side::Sell;
    throw DataError(fmt::format("unknown side '{}'", name));
}

Price to_ticks(double price, double tick_size) {
    if (!(tick_size > 0.0)) throw ConfigError(fmt::format("tick size must be > 0, got {}", tick_size));
    if (!std::isfinite(price)) throw DataError("price is not finite");
    const double ticks = std::round(price / tick_size);
    if (std::abs(ticks * tick_size - price) > 1e-9 * std::max(1.0, std::abs(price)))
        throw DataError(fmt::format("price {} is not a multiple of tick size {}", price, tick_size));
    if (!(ticks > 0.0)) throw DataError(fmt::format("price {} must be positive", price));
    return static_cast<Price>(ticks);
}

double from_ticks(Price ticks, double tick_size) { return static_cast<double>(ticks) * tick_size; }

Book::Book(double tick_size) : tick_size_(tick_size) {
    if (!(tick_size > 0.0) || !std::isfinite(tick_size))
        throw ConfigError(fmt::format("tick size must be > 0, got {}", tick_size));
}

Book::Book(const Book& other)
    : tick_size_(other.tick_size_),
      bids_(other.bids_),
      asks_(other.asks_),
      retired_(other.retired_),
      resting_(other.resting_) {
    rebuild_index();
}

Book& Book::operator=(const Book& other) {
    if (this != &other) {
        Book copy(other);
        *this = std::move(copy);
    }
    return *this;
}

void Book::rebuild_index() {
    index_.clear();
    for (auto& [price, level] : bids_)
        for (auto it = level.queue.begin(); it != level.queue.end(); ++it)
            index_.emplace(it->id, Locator{Side::Buy, price, it});
    for (auto& [price, level] : asks_)
        for (auto it = level.queue.begin(); it != level.queue.end(); ++it)
            index_.emplace(it->id, Locator{Side::Sell, price, it});
}

template <class Ladder>
void Book::match(Ladder& ladder, Side taker, Volume& remaining, std::optional<Price> limit, double timestamp,
                 std::vector<Execution>& out) {
    while (remaining > 0 && !ladder.empty()) {
        auto lvl = ladder.begin();
        const Price price = lvl->first;
        if (limit && (taker == Side::Buy ? price > *limit : price < *limit)) break;
        Level& level = lvl->second;
        while (remaining > 0 && !level.queue.empty()) {
            Order& maker = level.queue.front();
            const Volume fill = std::min(remaining, maker.volume);
            out.push_back({taker, maker.id, price, fill, timestamp});
            remaining -= fill;
            maker.volume -= fill;
            level.total -= fill;
            resting_ -= fill;
            if (maker.volume == 0) {
                index_.erase(maker.id);
                retire(maker.id, NotFoundError::Reason::Filled);
                level.queue.pop_front();
            }
        }
        if (level.queue.empty()) ladder.erase(lvl);
    }
}

std::vector<Execution> Book::submit_limit(const Order& order) {
    if (order.volume <= 0) throw DataError(fmt::format("order {} has volume {}", order.id, order.volume));
    if (order.price <= 0) throw DataError(fmt::format("order {} has price {}", order.id, order.price));
    if (index_.count(order.id) || retired_.count(order.id))
        throw IdError(fmt::format("order id {} already used", order.id));

    std::vector<Execution> out;
    Volume remaining = order.volume;
    if (order.side == Side::Buy)
        match(asks_, Side::Buy, remaining, order.price, order.timestamp, out);
    else
        match(bids_, Side::Sell, remaining, order.price, order.timestamp, out);

    if (remaining == 0) {
        retire(order.id, NotFoundError::Reason::Filled);
        return out;
    }
    Order rest = order;
    rest.volume = remaining;
    auto place = [&](auto& ladder) {
        Level& level = ladder[order.price];
        level.queue.push_back(rest);
        level.total += remaining;
        index_.emplace(order.id, Locator{order.side, order.price, std::prev(level.queue.end())});
    };
    if (order.side == Side::Buy)
        place(bids_);
    else
        place(asks_);
    resting_ += remaining;
    return out;
}

MarketResult Book::submit_market(Side side, Volume volume, double timestamp) {
    if (volume <= 0) throw DataError(fmt::format("market order volume {} must be > 0", volume));
    MarketResult result{{}, volume};
    if (side == Side::Buy)
        match(asks_, Side::Buy, result.unfilled, std::nullopt, timestamp, result.executions);
    else
        match(bids_, Side::Sell, result.unfilled, std::nullopt, timestamp, result.executions);
    return result;
}

Book::Level& Book::level_of(const Locator& loc) {
    return loc.side == Side::Buy ? bids_.at(loc.price) : asks_.at(loc.price);
}

void Book::erase_level_if_empty(const Locator& loc) {
    if (loc.side == Side::Buy) {
        auto it = bids_.find(loc.price);
        if (it->second.queue.empty()) bids_.erase(it);
    } else {
        auto it = asks_.find(loc.price);
        if (it->second.queue.empty()) asks_.erase(it);
    }
}

namespace {

[[noreturn]] void not_found(OrderId id, const std::unordered_map<OrderId, NotFoundError::Reason>& retired) {
    auto it = retired.find(id);
    if (it == retired.end())
        throw NotFoundError(fmt::format("order {} is unknown", id), NotFoundError::Reason::Unknown);
    if (it->second == NotFoundError::Reason::Filled)
        throw NotFoundError(fmt::format("order {} was already filled", id), NotFoundError::Reason::Filled);
    throw NotFoundError(fmt::format("order {} was already cancelled", id), NotFoundError::Reason::Cancelled);
}

}  // namespace

Order Book::cancel(OrderId id) {
    auto found = index_.find(id);
    if (found == index_.end()) not_found(id, retired_);
    const Locator loc = found->second;
    Level& level = level_of(loc);
    Order order = *loc.it;
    level.total -= order.volume;
    resting_ -= order.volume;
    level.queue.erase(loc.it);
    index_.erase(found);
    retire(id, NotFoundError::Reason::Cancelled);
    erase_level_if_empty(loc);
    return order;
}

void Book::reduce(OrderId id, Volume by) {
    auto found = index_.find(id);
    if (found == index_.end()) not_found(id, retired_);
    Order& order = *found->second.it;
    if (by <= 0 || by >= order.volume)
        throw DataError(fmt::format("cannot reduce order {} of volume {} by {}", id, order.volume, by));
    order.volume -= by;
    level_of(found->second).total -= by;
    resting_ -= by;
}

Execution Book::execute(OrderId id, Volume volume, double timestamp) {
    auto found = index_.find(id);
    if (found == index_.end()) not_found(id, retired_);
    const Locator loc = found->second;
    Order& order = *loc.it;
    if (volume <= 0 || volume > order.volume)
        throw DataError(fmt::format("cannot execute {} of order {} with volume {}", volume, id, order.volume));
    const Execution e{opposite(loc.side), id, loc.price, volume, timestamp};
    order.volume -= volume;
    level_of(loc).total -= volume;
    resting_ -= volume;
    if (order.volume == 0) {
        level_of(loc).queue.erase(loc.it);
        index_.erase(found);
        retire(id, NotFoundError::Reason::Filled);
        erase_level_if_empty(loc);
    }
    return e;
}

std::optional<Price> Book::best_bid() const {
    if (bids_.empty()) return std::nullopt;
    return bids_.begin()->first;
}

std::optional<Price> Book::best_ask() const {
    if (asks_.empty()) return std::nullopt;
    return asks_.begin()->first;
}

Snapshot Book::snapshot(std::size_t levels) const {
    if (levels == 0) throw ConfigError("snapshot needs at least one level");
    Snapshot s;
    for (const auto& [price, level] : bids_) {
        if (s.bids.size() == levels) break;
        s.bids.push_back({price, level.total});
        s.bid_depth += level.total;
    }
    for (const auto& [price, level] : asks_) {
        if (s.asks.size() == levels) break;
        s.asks.push_back({price, level.total});
        s.ask_depth += level.total;
    }
    s.best_bid = best_bid();
    s.best_ask = best_ask();
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

std::optional<Order> Book::find(OrderId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return *it->second.it;
}

Volume Book::resting_volume(Side side) const {
    Volume v = 0;
    if (side == Side::Buy)
        for (const auto& [p, l] : bids_) v += l.total;
    else
        for (const auto& [p, l] : asks_) v += l.total;
    return v;
}

std::vector<Order> Book::queue(Side side, Price price) const {
    const Level* level = nullptr;
    if (side == Side::Buy) {
        auto it = bids_.find(price);
        if (it != bids_.end()) level = &it->second;
    } else {
        auto it = asks_.find(price);
        if (it != asks_.end()) level = &it->second;
    }
    if (!level) return {};
    return {level->queue.begin(), level->queue.end()};
}

std::vector<OrderId> Book::live_ids(Side side) const {
    std::vector<OrderId> out;
    auto collect = [&](const auto& ladder) {
        for (const auto& [p, l] : ladder)
            for (const Order& o : l.queue) out.push_back(o.id);
    };
    if (side == Side::Buy)
        collect(bids_);
    else
        collect(asks_);
    return out;
}

void Book::check_invariants() const {
    if (!bids_.empty() && !asks_.empty() && bids_.begin()->first >= asks_.begin()->first)
        throw std::logic_error(
            fmt::format("crossed book: bid {} >= ask {}", bids_.begin()->first, asks_.begin()->first));
    std::size_t orders = 0;
    Volume total = 0;
    auto check = [&](const auto& ladder, Side side) {
        for (const auto& [price, level] : ladder) {
            if (level.queue.empty()) throw std::logic_error(fmt::format("empty level {} kept", price));
            Volume sum = 0;
            for (auto it = level.queue.begin(); it != level.queue.end(); ++it) {
                if (it->volume <= 0) throw std::logic_error(fmt::format("order {} rests with volume {}", it->id, it->volume));
                if (it->price != price || it->side != side)
                    throw std::logic_error(fmt::format("order {} filed under the wrong level", it->id));
                auto idx = index_.find(it->id);
                if (idx == index_.end() || idx->second.it != it || idx->second.price != price ||
                    idx->second.side != side)
                    throw std::logic_error(fmt::format("index entry of order {} is stale", it->id));
                sum += it->volume;
                ++orders;
            }
            if (sum != level.total)
                throw std::logic_error(fmt::format("level {} caches {} but holds {}", price, level.total, sum));
            total += sum;
        }
    };
    check(bids_, Side::Buy);
    check(asks_, Side::Sell);
    if (orders != index_.size())
        throw std::logic_error(fmt::format("index has {} ids for {} resting orders", index_.size(), orders));
    if (total != resting_) throw std::logic_error(fmt::format("resting volume {} cached as {}", total, resting_));
}

}  // namespace mmsim::lob
