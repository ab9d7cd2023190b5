#include "mmsim/ingest/binance.hpp"

#include "mmsim/error.hpp"
#include "mmsim/hawkes/fit.hpp"
#include "mmsim/io/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <string>

namespace mmsim::ingest {

TradeParse parse_binance_trades(std::istream& in) {
    TradeParse out;
    std::string text;
    std::size_t line = 0;
    bool unsorted = false;
    while (std::getline(in, text)) {
        ++line;
        const auto f = io::split_fields(text);
        if (f.size() == 1 && f[0].empty()) continue;
        if (f.size() != 6)
            throw ParseError(fmt::format("line {}: expected 6 fields, got {}", line, f.size()), line);
        if (out.trades.empty() && line == 1 && (f[0] == "trade_id" || f[0] == "id")) continue;
        TradeRecord r{};
        r.trade_id = io::parse_uint(f[0], line, 1);
        r.price = io::parse_double(f[1], line, 2);
        if (!(r.price > 0.0)) throw ParseError(fmt::format("line {}, column 2: price must be > 0", line), line, 2);
        r.volume = io::parse_double(f[2], line, 3);
        if (!(r.volume > 0.0))
            throw ParseError(fmt::format("line {}, column 3: quantity must be > 0", line), line, 3);
        io::parse_double(f[3], line, 4);
        const std::int64_t ms = io::parse_int(f[4], line, 5);
        if (ms < 0 || ms > INT64_MAX / 1'000'000)
            throw ParseError(fmt::format("line {}, column 5: time out of range", line), line, 5);
        r.time_ns = ms * 1'000'000;
        r.side = io::parse_bool(f[5], line, 6) ? lob::Side::Sell : lob::Side::Buy;
        if (!out.trades.empty() && r.time_ns < out.trades.back().time_ns && !unsorted) {
            unsorted = true;
            out.warnings.push_back(fmt::format("line {}: time decreases; trades were sorted by time", line));
        }
        out.trades.push_back(r);
    }
    if (unsorted)
        std::stable_sort(out.trades.begin(), out.trades.end(),
                         [](const TradeRecord& a, const TradeRecord& b) { return a.time_ns < b.time_ns; });
    return out;
}

Aggregation aggregate_trades(const std::vector<TradeRecord>& trades, double window_seconds) {
    if (!(window_seconds > 0.0) || !std::isfinite(window_seconds))
        throw ConfigError(fmt::format("aggregation window must be > 0, got {}", window_seconds));
    const auto window_ns = static_cast<std::int64_t>(std::llround(window_seconds * 1e9));
    if (window_ns <= 0) throw ConfigError("aggregation window is shorter than 1 ns");

    struct Bucket {
        std::int64_t first_ns;
        double volume;
    };
    // (window index, side) in time order; the map keeps it sorted.
    std::map<std::pair<std::int64_t, int>, Bucket> buckets;
    Aggregation agg{hawkes::EventStream(0.0, 2), 0, window_ns, {}, {0.0, 0.0}, {0, 0}};
    for (const TradeRecord& t : trades) {
        if (t.time_ns < 0) throw DataError("trade times must be non-negative");
        const int side = t.side == lob::Side::Buy ? 0 : 1;
        auto it = buckets.try_emplace({t.time_ns / window_ns, side}, Bucket{t.time_ns, 0.0}).first;
        it->second.first_ns = std::min(it->second.first_ns, t.time_ns);
        it->second.volume += t.volume;
        agg.volume[side] += t.volume;
        ++agg.trades[side];
    }
    if (buckets.empty()) return agg;

    const std::int64_t origin = buckets.begin()->first.first * window_ns;
    const std::int64_t end = (buckets.rbegin()->first.first + 1) * window_ns;
    struct Raw {
        std::int64_t ns;
        std::size_t dim;
        double mark;
    };
    std::vector<Raw> raw;
    for (const auto& [key, b] : buckets) raw.push_back({b.first_ns, static_cast<std::size_t>(key.second), b.volume});
    std::stable_sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.ns < b.ns; });
    for (std::size_t k = 1; k < raw.size(); ++k)
        if (raw[k].ns <= raw[k - 1].ns) raw[k].ns = raw[k - 1].ns + 1;

    std::vector<hawkes::Event> events;
    std::vector<double> marks[2];
    for (const Raw& r : raw) {
        events.push_back({static_cast<double>(r.ns - origin) * 1e-9, r.dim, r.mark});
        marks[r.dim].push_back(r.mark);
    }
    const double horizon =
        std::max(static_cast<double>(end - origin) * 1e-9, events.empty() ? 0.0 : events.back().time);
    agg.stream = hawkes::EventStream(std::move(events), horizon, 2);
    agg.origin_ns = origin;
    for (int s = 0; s < 2; ++s)
        if (!marks[s].empty()) agg.marks[s] = hawkes::fit_marks(marks[s]);
    return agg;
}

}  // namespace mmsim::ingest
