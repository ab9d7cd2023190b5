#include "mmsim/io/csv.hpp"

#include "mmsim/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>

namespace mmsim::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad(std::string_view what, std::string_view s, std::size_t line, std::size_t column) {
    throw ParseError(fmt::format("line {}, column {}: {} '{}'", line, column, what, s), line, column);
}

template <class T>
T parse_integral(std::string_view s, std::size_t line, std::size_t column, std::string_view what) {
    T v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) bad(what, s, line, column);
    return v;
}

std::string opt(const std::optional<std::int64_t>& v) { return v ? fmt::format("{}", *v) : std::string{}; }
std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

bool is_blank(std::string_view line) { return trim(line).empty(); }

void expect_header(std::istream& in, std::string_view header) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(fmt::format("missing header '{}'", header), 1);
    if (trim(line) != header)
        throw ParseError(fmt::format("line 1: expected header '{}', got '{}'", header, trim(line)), 1);
}

}  // namespace

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::int64_t parse_int(std::string_view s, std::size_t line, std::size_t column) {
    return parse_integral<std::int64_t>(s, line, column, "invalid integer");
}

std::uint64_t parse_uint(std::string_view s, std::size_t line, std::size_t column) {
    return parse_integral<std::uint64_t>(s, line, column, "invalid unsigned integer");
}

double parse_double(std::string_view s, std::size_t line, std::size_t column) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v))
        bad("invalid number", s, line, column);
    return v;
}

bool parse_bool(std::string_view s, std::size_t line, std::size_t column) {
    if (s == "true" || s == "True" || s == "TRUE" || s == "1") return true;
    if (s == "false" || s == "False" || s == "FALSE" || s == "0") return false;
    bad("invalid boolean", s, line, column);
}

std::int64_t parse_decimal_ns(std::string_view s, std::size_t line, std::size_t column) {
    const std::size_t dot = s.find('.');
    const std::string_view whole = s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad("invalid time", s, line, column);
    std::int64_t secs = 0;
    if (!whole.empty()) {
        const auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), secs);
        if (ec != std::errc{} || p != whole.data() + whole.size() || secs < 0) bad("invalid time", s, line, column);
    }
    if (!std::all_of(frac.begin(), frac.end(), [](char c) { return c >= '0' && c <= '9'; }))
        bad("invalid time", s, line, column);
    if (frac.size() > 9) frac = frac.substr(0, 9);
    std::int64_t ns = 0;
    for (std::size_t k = 0; k < 9; ++k) ns = ns * 10 + (k < frac.size() ? frac[k] - '0' : 0);
    if (secs > (INT64_MAX - ns) / 1'000'000'000) bad("time out of range", s, line, column);
    return secs * 1'000'000'000 + ns;
}

std::string format_double(double v) { return fmt::format("{}", v); }

std::string format_time(double t) { return fmt::format("{:.12f}", t); }

void write_events_csv(std::ostream& out, const hawkes::EventStream& stream) {
    out << "time,dim,mark\n";
    for (const hawkes::Event& e : stream) out << format_time(e.time) << ',' << e.dim << ',' << format_double(e.mark) << '\n';
}

EventRows read_events_csv(std::istream& in) {
    expect_header(in, "time,dim,mark");
    EventRows rows{{}, 1};
    std::string text;
    std::size_t line = 1;
    while (std::getline(in, text)) {
        ++line;
        if (is_blank(text)) continue;
        const auto f = split_fields(text);
        if (f.size() != 3)
            throw ParseError(fmt::format("line {}: expected 3 fields, got {}", line, f.size()), line);
        const double t = parse_double(f[0], line, 1);
        const std::uint64_t dim = parse_uint(f[1], line, 2);
        const double mark = parse_double(f[2], line, 3);
        rows.events.push_back({t, static_cast<std::size_t>(dim), mark});
        rows.dimension = std::max<std::size_t>(rows.dimension, dim + 1);
    }
    return rows;
}

hawkes::EventStream to_stream(EventRows rows, std::optional<double> horizon, std::optional<std::size_t> dimension) {
    const double h = horizon ? *horizon : (rows.events.empty() ? 0.0 : rows.events.back().time);
    const std::size_t d = dimension ? *dimension : rows.dimension;
    return hawkes::EventStream(std::move(rows.events), h, d);
}

void write_tape_csv(std::ostream& out, std::span<const lob::Execution> tape) {
    out << "time,taker_side,price,volume,maker_id\n";
    for (const lob::Execution& e : tape)
        out << format_time(e.timestamp) << ',' << lob::to_string(e.taker_side) << ',' << e.price << ',' << e.volume
            << ',' << e.maker_order_id << '\n';
}

void write_quotes_csv(std::ostream& out, std::span<const flow::Quote> quotes) {
    out << "time,best_bid,best_ask,mid,spread\n";
    for (const flow::Quote& q : quotes)
        out << format_time(q.time) << ',' << opt(q.best_bid) << ',' << opt(q.best_ask) << ',' << opt(q.mid) << ','
            << opt(q.spread) << '\n';
}

void write_residuals_csv(std::ostream& out, std::span<const double> tau, std::span<const double> u) {
    if (tau.size() != u.size()) throw ShapeError("residual and uniform sequences differ in length");
    out << "k,tau,u\n";
    for (std::size_t k = 0; k < tau.size(); ++k)
        out << k + 1 << ',' << format_double(tau[k]) << ',' << format_double(u[k]) << '\n';
}

void write_qq_csv(std::ostream& out, std::span<const std::pair<double, double>> qq) {
    out << "theoretical,empirical\n";
    for (const auto& [t, e] : qq) out << format_double(t) << ',' << format_double(e) << '\n';
}

void write_acf_csv(std::ostream& out, std::span<const double> acf) {
    out << "lag,acf\n";
    for (std::size_t k = 0; k < acf.size(); ++k) out << k << ',' << format_double(acf[k]) << '\n';
}

void write_ops_csv(std::ostream& out, std::span<const ingest::OrderOp> ops) {
    out << "time,op,order_id,side,price,volume\n";
    for (const ingest::OrderOp& op : ops)
        out << format_time(op.time) << ',' << ingest::to_string(op.kind) << ',' << op.order_id << ','
            << lob::to_string(op.side) << ',' << op.price << ',' << op.volume << '\n';
}

std::vector<ingest::OrderOp> read_ops_csv(std::istream& in) {
    expect_header(in, "time,op,order_id,side,price,volume");
    std::vector<ingest::OrderOp> ops;
    std::string text;
    std::size_t line = 1;
    while (std::getline(in, text)) {
        ++line;
        if (is_blank(text)) continue;
        const auto f = split_fields(text);
        if (f.size() != 6)
            throw ParseError(fmt::format("line {}: expected 6 fields, got {}", line, f.size()), line);
        ingest::OrderOp op{};
        op.time = parse_double(f[0], line, 1);
        try {
            op.kind = ingest::op_kind_from_string(f[1]);
        } catch (const Error&) {
            bad("unknown operation", f[1], line, 2);
        }
        op.order_id = parse_uint(f[2], line, 3);
        try {
            op.side = lob::side_from_string(f[3]);
        } catch (const Error&) {
            bad("unknown side", f[3], line, 4);
        }
        op.price = parse_int(f[4], line, 5);
        op.volume = parse_int(f[5], line, 6);
        ops.push_back(op);
    }
    return ops;
}

}  // namespace mmsim::io
