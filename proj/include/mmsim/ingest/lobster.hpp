#pragma once

#include "mmsim/lob/book.hpp"

#include <cstdint>
#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace mmsim::ingest {

/// One row of a LOBSTER message file.
struct LobsterMessage {
    std::int64_t time_ns;  ///< since midnight
    int type;              ///< 1 submit, 2 partial cancel, 3 delete, 4 execute, 5 hidden execute
    std::uint64_t order_id;
    std::int64_t size;
    std::int64_t price;  ///< 1e-4 dollars
    int direction;       ///< +1 buy, −1 sell
    std::size_t line;

    double seconds() const noexcept { return static_cast<double>(time_ns) * 1e-9; }
    lob::Side side() const noexcept { return direction > 0 ? lob::Side::Buy : lob::Side::Sell; }
    friend bool operator==(const LobsterMessage&, const LobsterMessage&) = default;
};

/// Tick size of LOBSTER integer prices in dollars.
inline constexpr double kLobsterTick = 1e-4;

struct LobsterParse {
    std::vector<LobsterMessage> messages;
    std::vector<std::string> warnings;
};

/// Parses `time,type,order_id,size,price,direction` rows. Times keep up to 9
/// fractional digits (further digits are dropped). Decreasing times produce a
/// warning and a stable sort. Throws ParseError naming line and column.
LobsterParse parse_lobster(std::istream& in);

enum class OpKind { Submit, Reduce, Cancel, Execute };

std::string_view to_string(OpKind kind);
OpKind op_kind_from_string(std::string_view name);

/// A replayable book operation; price in ticks.
struct OrderOp {
    double time;
    OpKind kind;
    lob::OrderId order_id;
    lob::Side side;
    lob::Price price;
    lob::Volume volume;
    friend bool operator==(const OrderOp&, const OrderOp&) = default;
};

struct LobsterConversion {
    std::vector<OrderOp> ops;
    std::size_t hidden_skipped = 0;
    /// Messages that refer to an order never submitted in the file.
    std::vector<LobsterMessage> orphans;
};

/// Type 1 → Submit; 2 → Reduce, or Cancel when it removes the whole order;
/// 3 → Cancel; 4 → Execute; 5 → skipped. Tracks remaining volume per id.
LobsterConversion lobster_to_orders(const std::vector<LobsterMessage>& messages);

struct ApplyResult {
    std::vector<lob::Execution> tape;
    std::size_t rejected = 0;
    std::vector<std::string> errors;
};

/// Applies operations in order. Operations the book refuses are counted and
/// described, and replay continues. After every operation `observer` (if
/// given) sees the book.
ApplyResult apply_ops(lob::Book& book, const std::vector<OrderOp>& ops,
                      const std::function<void(std::size_t, const lob::Book&)>& observer = {});

/// One row of a LOBSTER orderbook file: per level ask price, ask size, bid
/// price, bid size. Empty levels (size 0 or dummy prices) are dropped.
struct LobsterBookRow {
    std::vector<lob::LevelView> asks;
    std::vector<lob::LevelView> bids;
    friend bool operator==(const LobsterBookRow&, const LobsterBookRow&) = default;
};

std::vector<LobsterBookRow> parse_lobster_book(std::istream& in);

}  // namespace mmsim::ingest
