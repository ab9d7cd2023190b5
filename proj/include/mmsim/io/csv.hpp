#pragma once

#include "mmsim/diagnostics/ks.hpp"
#include "mmsim/flow/replay.hpp"
#include "mmsim/hawkes/event_stream.hpp"
#include "mmsim/ingest/lobster.hpp"
#include "mmsim/lob/book.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mmsim::io {

/// Splits one CSV line on commas (no quoting) and trims spaces and a
/// trailing carriage return from each field.
std::vector<std::string_view> split_fields(std::string_view line);

// Field parsers. Each throws ParseError(line, column) on malformed text.
std::int64_t parse_int(std::string_view s, std::size_t line, std::size_t column);
std::uint64_t parse_uint(std::string_view s, std::size_t line, std::size_t column);
double parse_double(std::string_view s, std::size_t line, std::size_t column);
bool parse_bool(std::string_view s, std::size_t line, std::size_t column);
/// Non-negative decimal seconds to integer nanoseconds; digits past the 9th
/// fractional place are dropped.
std::int64_t parse_decimal_ns(std::string_view s, std::size_t line, std::size_t column);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);
/// Fixed 12 fractional digits, used for times.
std::string format_time(double t);

/// `time,dim,mark`.
void write_events_csv(std::ostream& out, const hawkes::EventStream& stream);

struct EventRows {
    std::vector<hawkes::Event> events;
    std::size_t dimension;  ///< 1 + largest dim seen (1 when empty)
};

/// Reads `time,dim,mark` (header required). Throws ParseError.
EventRows read_events_csv(std::istream& in);

/// Builds a stream; horizon defaults to the last event time and dimension to
/// the one seen in the file. Throws DataError via EventStream validation.
hawkes::EventStream to_stream(EventRows rows, std::optional<double> horizon = {},
                              std::optional<std::size_t> dimension = {});

/// `time,taker_side,price,volume,maker_id`, price in ticks.
void write_tape_csv(std::ostream& out, std::span<const lob::Execution> tape);
/// `time,best_bid,best_ask,mid,spread`; absent values are empty fields.
void write_quotes_csv(std::ostream& out, std::span<const flow::Quote> quotes);
/// `k,tau,u` with k from 1.
void write_residuals_csv(std::ostream& out, std::span<const double> tau, std::span<const double> u);
/// `theoretical,empirical`.
void write_qq_csv(std::ostream& out, std::span<const std::pair<double, double>> qq);
/// `lag,acf`.
void write_acf_csv(std::ostream& out, std::span<const double> acf);

/// `time,op,order_id,side,price,volume`.
void write_ops_csv(std::ostream& out, std::span<const ingest::OrderOp> ops);
std::vector<ingest::OrderOp> read_ops_csv(std::istream& in);

}  // namespace mmsim::io
