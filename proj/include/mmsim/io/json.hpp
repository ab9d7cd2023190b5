#pragma once

#include "mmsim/diagnostics/report.hpp"
#include "mmsim/flow/replay.hpp"
#include "mmsim/hawkes/fit.hpp"
#include "mmsim/hawkes/model.hpp"
#include "mmsim/hawkes/simulate.hpp"
#include "mmsim/lob/book.hpp"

#include <json.hpp>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

namespace mmsim::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Throws ConfigError naming the first key of `j` not in `allowed`.
void reject_unknown_keys(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view context);

/// Parses text; throws ParseError with the byte position on malformed JSON.
Json parse_json(std::string_view text);

Json to_json(const hawkes::Kernel& k);
hawkes::Kernel kernel_from_json(const Json& j);
Json to_json(const hawkes::MarkDistribution& m);
hawkes::MarkDistribution marks_from_json(const Json& j);
Json to_json(const hawkes::LinkFunction& l);
hawkes::LinkFunction link_from_json(const Json& j);

/// {"mu": [...], "kernels": [[...], ...], "marks": [...], "links": [...]}.
/// A univariate model may give "mu" as a number and "kernels" as one
/// object; marks and links default to unit marks and identity links.
Json to_json(const hawkes::HawkesModel& m);
hawkes::HawkesModel model_from_json(const Json& j);

Json to_json(const hawkes::FitResult& f);
/// The model of a params document: either a bare model or a fit result.
hawkes::HawkesModel model_from_params_json(const Json& j);

Json to_json(const diagnostics::DiagnosticsReport& r);
Json to_json(const lob::Snapshot& s);

Json to_json(const flow::FlowMapping& m);
flow::FlowMapping mapping_from_json(const Json& j);

/// "sim" section. Seed defaults to 0 and is normally overridden by --seed.
hawkes::SimConfig sim_from_json(const Json& j);
Json to_json(const hawkes::SimConfig& c);

struct FitSettings {
    hawkes::KernelFamily kernel = hawkes::KernelFamily::Exponential;
    hawkes::FitOptions options;
    std::size_t bootstrap = 0;
    std::size_t threads = 0;
};

struct DiagnosticsSettings {
    std::size_t max_lag = 20;
    double ks_level = 0.05;
    std::optional<std::size_t> dimension;
};

struct BookSettings {
    double tick_size = 0.01;
    std::size_t levels = 10;
};

struct IngestSettings {
    std::string source;
    double window = 0.1;
};

struct IoSettings {
    std::optional<std::string> input;
    std::optional<std::string> params;
    std::optional<std::string> output;
    std::optional<double> horizon;
};

/// Whole run description. Every section is optional; unknown keys anywhere
/// are rejected.
struct RunConfig {
    std::optional<hawkes::HawkesModel> model;
    hawkes::SimConfig sim;
    std::optional<flow::FlowMapping> mapping;
    FitSettings fit;
    DiagnosticsSettings diagnostics;
    BookSettings book;
    IngestSettings ingest;
    IoSettings io;
};

RunConfig config_from_json(const Json& j);

}  // namespace mmsim::io
