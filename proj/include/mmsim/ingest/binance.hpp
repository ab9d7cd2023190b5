#pragma once

#include "mmsim/hawkes/event_stream.hpp"
#include "mmsim/hawkes/marks.hpp"
#include "mmsim/lob/book.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace mmsim::ingest {

struct TradeRecord {
    std::uint64_t trade_id;
    std::int64_t time_ns;  ///< epoch
    lob::Side side;        ///< taker side
    double volume;
    double price;

    double seconds() const noexcept { return static_cast<double>(time_ns) * 1e-9; }
    friend bool operator==(const TradeRecord&, const TradeRecord&) = default;
};

struct TradeParse {
    std::vector<TradeRecord> trades;
    std::vector<std::string> warnings;
};

/// Parses `trade_id,price,qty,quote_qty,time_ms,is_buyer_maker` rows with an
/// optional header. is_buyer_maker = true means the taker sold. Throws
/// ParseError for malformed rows and non-positive quantities; unsorted times
/// are stably sorted with a warning.
TradeParse parse_binance_trades(std::istream& in);

struct Aggregation {
    /// d = 2: dimension 0 buys, 1 sells. Times are seconds since origin_ns.
    hawkes::EventStream stream;
    std::int64_t origin_ns;
    std::int64_t window_ns;
    /// Mark law per side fitted on log volumes; absent for an empty side.
    std::optional<hawkes::MarkDistribution> marks[2];
    double volume[2];
    std::size_t trades[2];
};

/// Tumbling windows [k·w, (k+1)·w) in epoch nanoseconds. All trades of one
/// side in one window become one event at the window's first trade of that
/// side, marked with the summed volume. A sell event that ties a buy event is
/// moved 1 ns later. Times are rebased to the first window start and the
/// horizon is the end of the last window. Throws ConfigError for window ≤ 0.
Aggregation aggregate_trades(const std::vector<TradeRecord>& trades, double window_seconds);

}  // namespace mmsim::ingest
