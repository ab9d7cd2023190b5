#include "mmsim/ingest/lobster.hpp"

#include "mmsim/error.hpp"
#include "mmsim/io/csv.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <string>
#include <unordered_map>

namespace mmsim::ingest {

namespace {

// LOBSTER pads empty orderbook levels with these prices.
constexpr std::int64_t kDummyAsk = 9'999'999'999;
constexpr std::int64_t kDummyBid = -9'999'999'999;

}  // namespace

LobsterParse parse_lobster(std::istream& in) {
    LobsterParse out;
    std::string text;
    std::size_t line = 0;
    bool unsorted = false;
    while (std::getline(in, text)) {
        ++line;
        const auto f = io::split_fields(text);
        if (f.size() == 1 && f[0].empty()) continue;
        if (f.size() != 6)
            throw ParseError(fmt::format("line {}: expected 6 fields, got {}", line, f.size()), line);
        LobsterMessage m{};
        m.line = line;
        m.time_ns = io::parse_decimal_ns(f[0], line, 1);
        const std::int64_t type = io::parse_int(f[1], line, 2);
        if (type < 1 || type > 5)
            throw ParseError(fmt::format("line {}, column 2: unknown event type {}", line, type), line, 2);
        m.type = static_cast<int>(type);
        m.order_id = io::parse_uint(f[2], line, 3);
        m.size = io::parse_int(f[3], line, 4);
        if (m.size <= 0) throw ParseError(fmt::format("line {}, column 4: size must be > 0", line), line, 4);
        m.price = io::parse_int(f[4], line, 5);
        if (m.price <= 0) throw ParseError(fmt::format("line {}, column 5: price must be > 0", line), line, 5);
        const std::int64_t dir = io::parse_int(f[5], line, 6);
        if (dir != 1 && dir != -1)
            throw ParseError(fmt::format("line {}, column 6: direction must be 1 or -1", line), line, 6);
        m.direction = static_cast<int>(dir);
        if (!out.messages.empty() && m.time_ns < out.messages.back().time_ns && !unsorted) {
            unsorted = true;
            out.warnings.push_back(fmt::format("line {}: time decreases; messages were sorted by time", line));
        }
        out.messages.push_back(m);
    }
    if (unsorted)
        std::stable_sort(out.messages.begin(), out.messages.end(),
                         [](const LobsterMessage& a, const LobsterMessage& b) { return a.time_ns < b.time_ns; });
    return out;
}

std::string_view to_string(OpKind kind) {
    switch (kind) {
        case OpKind::Submit: return "submit";
        case OpKind::Reduce: return "reduce";
        case OpKind::Cancel: return "cancel";
        case OpKind::Execute: return "execute";
    }
    return "submit";
}

OpKind op_kind_from_string(std::string_view name) {
    if (name == "submit") return OpKind::Submit;
    if (name == "reduce") return OpKind::Reduce;
    if (name == "cancel") return OpKind::Cancel;
    if (name == "execute") return OpKind::Execute;
    throw DataError(fmt::format("unknown operation '{}'", name));
}

LobsterConversion lobster_to_orders(const std::vector<LobsterMessage>& messages) {
    LobsterConversion out;
    struct Live {
        lob::Side side;
        lob::Price price;
        lob::Volume volume;
    };
    std::unordered_map<lob::OrderId, Live> live;
    for (const LobsterMessage& m : messages) {
        const double t = m.seconds();
        if (m.type == 5) {
            ++out.hidden_skipped;
            continue;
        }
        if (m.type == 1) {
            live[m.order_id] = {m.side(), m.price, m.size};
            out.ops.push_back({t, OpKind::Submit, m.order_id, m.side(), m.price, m.size});
            continue;
        }
        auto it = live.find(m.order_id);
        if (it == live.end()) {
            out.orphans.push_back(m);
            continue;
        }
        Live& o = it->second;
        const lob::Volume amount = std::min<lob::Volume>(m.size, o.volume);
        if (m.type == 3 || (m.type == 2 && amount >= o.volume)) {
            out.ops.push_back({t, OpKind::Cancel, m.order_id, o.side, o.price, o.volume});
            live.erase(it);
        } else if (m.type == 2) {
            out.ops.push_back({t, OpKind::Reduce, m.order_id, o.side, o.price, amount});
            o.volume -= amount;
        } else {
            out.ops.push_back({t, OpKind::Execute, m.order_id, o.side, o.price, amount});
            o.volume -= amount;
            if (o.volume == 0) live.erase(it);
        }
    }
    return out;
}

ApplyResult apply_ops(lob::Book& book, const std::vector<OrderOp>& ops,
                      const std::function<void(std::size_t, const lob::Book&)>& observer) {
    ApplyResult out;
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const OrderOp& op = ops[k];
        try {
            switch (op.kind) {
                case OpKind::Submit: {
                    const auto fills = book.submit_limit({op.order_id, op.side, op.price, op.volume, op.time});
                    out.tape.insert(out.tape.end(), fills.begin(), fills.end());
                    break;
                }
                case OpKind::Reduce: book.reduce(op.order_id, op.volume); break;
                case OpKind::Cancel: book.cancel(op.order_id); break;
                case OpKind::Execute: out.tape.push_back(book.execute(op.order_id, op.volume, op.time)); break;
            }
        } catch (const Error& e) {
            ++out.rejected;
            out.errors.push_back(fmt::format("operation {} ({} {}): {}", k + 1, to_string(op.kind), op.order_id,
                                             e.what()));
        }
        if (observer) observer(k, book);
    }
    return out;
}

std::vector<LobsterBookRow> parse_lobster_book(std::istream& in) {
    std::vector<LobsterBookRow> rows;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        const auto f = io::split_fields(text);
        if (f.size() == 1 && f[0].empty()) continue;
        if (f.size() % 4 != 0)
            throw ParseError(fmt::format("line {}: orderbook rows need 4 fields per level, got {}", line, f.size()),
                             line);
        LobsterBookRow row;
        for (std::size_t c = 0; c < f.size(); c += 4) {
            const std::int64_t ask = io::parse_int(f[c], line, c + 1);
            const std::int64_t ask_size = io::parse_int(f[c + 1], line, c + 2);
            const std::int64_t bid = io::parse_int(f[c + 2], line, c + 3);
            const std::int64_t bid_size = io::parse_int(f[c + 3], line, c + 4);
            if (ask_size > 0 && ask != kDummyAsk) row.asks.push_back({ask, ask_size});
            if (bid_size > 0 && bid != kDummyBid) row.bids.push_back({bid, bid_size});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace mmsim::ingest
