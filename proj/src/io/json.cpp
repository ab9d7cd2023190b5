#include "mmsim/io/json.hpp"

#include "mmsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace mmsim::io {

namespace {

using hawkes::Kernel;
using hawkes::LinkFunction;
using hawkes::MarkDistribution;

template <class T>
T get(const Json& j, std::string_view key, std::string_view context) {
    const auto it = j.find(std::string(key));
    if (it == j.end()) throw ConfigError(fmt::format("{}: missing '{}'", context, key));
    try {
        return it->template get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(fmt::format("{}: '{}' has the wrong type", context, key));
    }
}

template <class T>
T get_or(const Json& j, std::string_view key, T fallback, std::string_view context) {
    if (!j.contains(std::string(key)) || j.at(std::string(key)).is_null()) return fallback;
    return get<T>(j, key, context);
}

void require_object(const Json& j, std::string_view context) {
    if (!j.is_object()) throw ConfigError(fmt::format("{}: expected an object", context));
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
Json optional_number(const std::optional<std::int64_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

void reject_unknown_keys(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view context) {
    require_object(j, context);
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(fmt::format("{}: unknown key '{}'", context, key));
    }
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(fmt::format("malformed JSON: {}", e.what()), e.byte);
    }
}

Json to_json(const Kernel& k) {
    Json j;
    j["family"] = std::string(hawkes::to_string(k.family()));
    if (const auto* e = std::get_if<hawkes::ExponentialKernel>(&k.variant())) {
        j["alpha"] = e->alpha;
        j["beta"] = e->beta;
    } else if (const auto* p = std::get_if<hawkes::PowerLawKernel>(&k.variant())) {
        j["alpha"] = p->alpha;
        j["cutoff"] = p->cutoff;
        j["exponent"] = p->exponent;
    }
    return j;
}

Kernel kernel_from_json(const Json& j) {
    require_object(j, "kernel");
    const auto family = hawkes::kernel_family_from_string(get<std::string>(j, "family", "kernel"));
    switch (family) {
        case hawkes::KernelFamily::Zero:
            reject_unknown_keys(j, {"family"}, "kernel");
            return Kernel::zero();
        case hawkes::KernelFamily::Exponential:
            reject_unknown_keys(j, {"family", "alpha", "beta"}, "kernel");
            return Kernel::exponential(get<double>(j, "alpha", "kernel"), get<double>(j, "beta", "kernel"));
        case hawkes::KernelFamily::PowerLaw:
            reject_unknown_keys(j, {"family", "alpha", "cutoff", "exponent"}, "kernel");
            return Kernel::power_law(get<double>(j, "alpha", "kernel"), get<double>(j, "cutoff", "kernel"),
                                     get<double>(j, "exponent", "kernel"));
    }
    return Kernel::zero();
}

Json to_json(const MarkDistribution& m) {
    Json j;
    j["law"] = std::string(m.name());
    if (const auto* d = std::get_if<hawkes::DeterministicMarks>(&m.variant())) {
        j["value"] = d->value;
    } else if (const auto* e = std::get_if<hawkes::ExponentialMarks>(&m.variant())) {
        j["rate"] = e->rate;
    } else {
        const auto& l = std::get<hawkes::LogNormalMarks>(m.variant());
        j["log_mean"] = l.log_mean;
        j["log_sd"] = l.log_sd;
    }
    j["normalize_excitation"] = m.normalize_excitation();
    return j;
}

MarkDistribution marks_from_json(const Json& j) {
    require_object(j, "marks");
    const auto law = get<std::string>(j, "law", "marks");
    const bool normalize = get_or<bool>(j, "normalize_excitation", true, "marks");
    if (law == "deterministic") {
        reject_unknown_keys(j, {"law", "value", "normalize_excitation"}, "marks");
        return MarkDistribution::deterministic(get_or<double>(j, "value", 1.0, "marks"), normalize);
    }
    if (law == "exponential") {
        reject_unknown_keys(j, {"law", "rate", "normalize_excitation"}, "marks");
        return MarkDistribution::exponential(get<double>(j, "rate", "marks"), normalize);
    }
    if (law == "lognormal" || law == "log_normal") {
        reject_unknown_keys(j, {"law", "log_mean", "log_sd", "normalize_excitation"}, "marks");
        return MarkDistribution::log_normal(get<double>(j, "log_mean", "marks"), get<double>(j, "log_sd", "marks"),
                                            normalize);
    }
    throw ConfigError(fmt::format("marks: unknown law '{}'", law));
}

Json to_json(const LinkFunction& l) {
    Json j;
    j["type"] = std::string(l.name());
    if (const auto* p = std::get_if<hawkes::PositivePartLink>(&l.variant())) j["floor"] = p->floor;
    if (const auto* s = std::get_if<hawkes::SaturatedLinearLink>(&l.variant())) j["cap"] = s->cap;
    return j;
}

LinkFunction link_from_json(const Json& j) {
    require_object(j, "link");
    const auto type = get<std::string>(j, "type", "link");
    if (type == "identity") {
        reject_unknown_keys(j, {"type"}, "link");
        return LinkFunction::identity();
    }
    if (type == "positive_part") {
        reject_unknown_keys(j, {"type", "floor"}, "link");
        return LinkFunction::positive_part(get_or<double>(j, "floor", 0.0, "link"));
    }
    if (type == "saturated_linear") {
        reject_unknown_keys(j, {"type", "cap"}, "link");
        return LinkFunction::saturated_linear(get<double>(j, "cap", "link"));
    }
    throw ConfigError(fmt::format("link: unknown type '{}'", type));
}

Json to_json(const hawkes::HawkesModel& m) {
    const std::size_t d = m.dimension();
    Json j;
    j["mu"] = Json::array();
    for (double v : m.baselines()) j["mu"].push_back(v);
    j["kernels"] = Json::array();
    for (std::size_t i = 0; i < d; ++i) {
        Json row = Json::array();
        for (const Kernel& k : m.kernel_row(i)) row.push_back(to_json(k));
        j["kernels"].push_back(row);
    }
    j["marks"] = Json::array();
    for (const auto& mk : m.mark_laws()) j["marks"].push_back(to_json(mk));
    j["links"] = Json::array();
    for (const auto& l : m.links()) j["links"].push_back(to_json(l));
    return j;
}

hawkes::HawkesModel model_from_json(const Json& j) {
    reject_unknown_keys(j, {"mu", "kernels", "marks", "links"}, "model");
    std::vector<double> mu;
    const Json& jm = j.contains("mu") ? j.at("mu") : throw ConfigError("model: missing 'mu'");
    if (jm.is_number()) {
        mu.push_back(jm.get<double>());
    } else if (jm.is_array()) {
        for (const auto& v : jm) {
            if (!v.is_number()) throw ConfigError("model: 'mu' entries must be numbers");
            mu.push_back(v.get<double>());
        }
    } else {
        throw ConfigError("model: 'mu' must be a number or an array");
    }
    const std::size_t d = mu.size();
    if (d == 0) throw ConfigError("model: 'mu' is empty");

    std::vector<Kernel> kernels;
    if (!j.contains("kernels")) throw ConfigError("model: missing 'kernels'");
    const Json& jk = j.at("kernels");
    if (jk.is_object() && d == 1) {
        kernels.push_back(kernel_from_json(jk));
    } else if (jk.is_array()) {
        if (jk.size() != d) throw ConfigError(fmt::format("model: {} kernel rows for dimension {}", jk.size(), d));
        for (const auto& row : jk) {
            if (!row.is_array() || row.size() != d)
                throw ConfigError(fmt::format("model: every kernel row needs {} entries", d));
            for (const auto& k : row) kernels.push_back(kernel_from_json(k));
        }
    } else {
        throw ConfigError("model: 'kernels' must be a d x d array");
    }

    std::vector<MarkDistribution> marks(d);
    if (j.contains("marks")) {
        const Json& jk2 = j.at("marks");
        if (jk2.is_object()) {
            std::fill(marks.begin(), marks.end(), marks_from_json(jk2));
        } else if (jk2.is_array() && jk2.size() == d) {
            for (std::size_t i = 0; i < d; ++i) marks[i] = marks_from_json(jk2[i]);
        } else {
            throw ConfigError(fmt::format("model: 'marks' needs one entry per dimension ({})", d));
        }
    }
    std::vector<LinkFunction> links(d);
    if (j.contains("links")) {
        const Json& jl = j.at("links");
        if (jl.is_object()) {
            std::fill(links.begin(), links.end(), link_from_json(jl));
        } else if (jl.is_array() && jl.size() == d) {
            for (std::size_t i = 0; i < d; ++i) links[i] = link_from_json(jl[i]);
        } else {
            throw ConfigError(fmt::format("model: 'links' needs one entry per dimension ({})", d));
        }
    }
    return hawkes::HawkesModel(std::move(mu), std::move(kernels), std::move(marks), std::move(links));
}

Json to_json(const hawkes::FitResult& f) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = f.name;
    j["family"] = std::string(hawkes::to_string(f.family));
    j["model"] = to_json(f.model);
    j["loglik"] = finite_or_null(f.loglik);
    j["nll_per_event"] = finite_or_null(f.nll_per_event);
    j["aic"] = finite_or_null(f.aic);
    j["free_parameters"] = f.free_parameters;
    Json params = Json::object();
    const auto values = hawkes::parameter_vector(f.model, f.family);
    for (std::size_t k = 0; k < f.parameter_names.size(); ++k) params[f.parameter_names[k]] = values[k];
    j["parameters"] = params;
    if (f.std_errors) {
        Json se = Json::object();
        for (std::size_t k = 0; k < f.parameter_names.size(); ++k) se[f.parameter_names[k]] = (*f.std_errors)[k];
        j["std_errors"] = se;
    } else {
        j["std_errors"] = nullptr;
    }
    j["iterations"] = f.iterations;
    j["converged"] = f.converged;
    j["optimizer"] = {{"method", std::string(hawkes::to_string(f.options.method))},
                      {"max_iterations", f.options.max_iterations},
                      {"tolerance", f.options.tolerance}};
    j["horizon"] = f.horizon;
    j["event_count"] = f.event_count;
    j["warnings"] = f.warnings;
    return j;
}

hawkes::HawkesModel model_from_params_json(const Json& j) {
    require_object(j, "params");
    if (j.contains("model")) return model_from_json(j.at("model"));
    if (j.contains("schema_version")) {
        Json copy = j;
        copy.erase("schema_version");
        return model_from_json(copy);
    }
    return model_from_json(j);
}

Json to_json(const diagnostics::DiagnosticsReport& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["dimension"] = r.dimension ? Json(*r.dimension) : Json(nullptr);
    j["count"] = r.residuals.size();
    j["ks_stat"] = r.ks_stat;
    j["ks_pvalue"] = r.ks_pvalue;
    j["aic"] = finite_or_null(r.aic);
    j["acf"] = r.acf;
    j["residuals"] = r.residuals;
    j["uniforms"] = r.uniforms;
    Json qq = Json::array();
    for (const auto& [t, e] : r.qq) qq.push_back({t, e});
    j["qq"] = qq;
    return j;
}

Json to_json(const lob::Snapshot& s) {
    auto ladder = [](const std::vector<lob::LevelView>& levels) {
        Json a = Json::array();
        for (const auto& l : levels) a.push_back({{"price", l.price}, {"volume", l.volume}});
        return a;
    };
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["bids"] = ladder(s.bids);
    j["asks"] = ladder(s.asks);
    j["best_bid"] = optional_number(s.best_bid);
    j["best_ask"] = optional_number(s.best_ask);
    j["spread"] = optional_number(s.spread);
    j["mid"] = optional_number(s.mid);
    j["depth"] = optional_number(s.depth);
    j["bid_depth"] = s.bid_depth;
    j["ask_depth"] = s.ask_depth;
    j["imbalance"] = optional_number(s.imbalance);
    return j;
}

Json to_json(const flow::FlowMapping& m) {
    Json j;
    j["actions"] = Json::array();
    for (auto a : m.actions) j["actions"].push_back(std::string(flow::to_string(a)));
    j["offset_p"] = m.offset_p;
    j["volume_scale"] = m.volume_scale;
    j["reference_price"] = m.reference_price;
    j["snapshot_levels"] = m.snapshot_levels;
    return j;
}

flow::FlowMapping mapping_from_json(const Json& j) {
    reject_unknown_keys(j, {"actions", "offset_p", "volume_scale", "reference_price", "snapshot_levels"}, "mapping");
    flow::FlowMapping m;
    for (const auto& name : get<std::vector<std::string>>(j, "actions", "mapping"))
        m.actions.push_back(flow::action_from_string(name));
    m.offset_p = get_or<double>(j, "offset_p", m.offset_p, "mapping");
    m.volume_scale = get_or<double>(j, "volume_scale", m.volume_scale, "mapping");
    m.reference_price = get_or<std::int64_t>(j, "reference_price", m.reference_price, "mapping");
    m.snapshot_levels = get_or<std::size_t>(j, "snapshot_levels", m.snapshot_levels, "mapping");
    m.validate(m.actions.size());
    return m;
}

hawkes::SimConfig sim_from_json(const Json& j) {
    reject_unknown_keys(j, {"horizon", "seed", "method", "max_events", "burn_in"}, "sim");
    hawkes::SimConfig c;
    c.horizon = get_or<double>(j, "horizon", c.horizon, "sim");
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed, "sim");
    c.method = hawkes::sim_method_from_string(get_or<std::string>(j, "method", "auto", "sim"));
    c.max_events = get_or<std::size_t>(j, "max_events", c.max_events, "sim");
    c.burn_in = get_or<double>(j, "burn_in", c.burn_in, "sim");
    return c;
}

Json to_json(const hawkes::SimConfig& c) {
    return {{"horizon", c.horizon},
            {"seed", c.seed},
            {"method", std::string(hawkes::to_string(c.method))},
            {"max_events", c.max_events},
            {"burn_in", c.burn_in}};
}

RunConfig config_from_json(const Json& j) {
    reject_unknown_keys(j, {"schema_version", "model", "sim", "mapping", "fit", "diagnostics", "book", "ingest", "io"},
                        "config");
    const int version = get_or<int>(j, "schema_version", kSchemaVersion, "config");
    if (version != kSchemaVersion)
        throw ConfigError(fmt::format("config: schema_version {} is not supported (expected {})", version,
                                      kSchemaVersion));
    RunConfig c;
    if (j.contains("model")) c.model = model_from_json(j.at("model"));
    if (j.contains("sim")) c.sim = sim_from_json(j.at("sim"));
    if (j.contains("mapping")) c.mapping = mapping_from_json(j.at("mapping"));
    if (j.contains("fit")) {
        const Json& f = j.at("fit");
        reject_unknown_keys(f, {"kernel", "method", "max_iterations", "tolerance", "bootstrap", "threads",
                                "normalize_excitation"},
                            "fit");
        c.fit.kernel = hawkes::kernel_family_from_string(get_or<std::string>(f, "kernel", "exponential", "fit"));
        c.fit.options.method = hawkes::fit_method_from_string(get_or<std::string>(f, "method", "nelder-mead", "fit"));
        c.fit.options.max_iterations = get_or<std::size_t>(f, "max_iterations", 2000, "fit");
        c.fit.options.tolerance = get_or<double>(f, "tolerance", 1e-9, "fit");
        c.fit.options.normalize_excitation = get_or<bool>(f, "normalize_excitation", true, "fit");
        c.fit.bootstrap = get_or<std::size_t>(f, "bootstrap", 0, "fit");
        c.fit.threads = get_or<std::size_t>(f, "threads", 0, "fit");
    }
    if (j.contains("diagnostics")) {
        const Json& d = j.at("diagnostics");
        reject_unknown_keys(d, {"max_lag", "ks_level", "dimension"}, "diagnostics");
        c.diagnostics.max_lag = get_or<std::size_t>(d, "max_lag", 20, "diagnostics");
        c.diagnostics.ks_level = get_or<double>(d, "ks_level", 0.05, "diagnostics");
        if (d.contains("dimension") && !d.at("dimension").is_null())
            c.diagnostics.dimension = get<std::size_t>(d, "dimension", "diagnostics");
        if (!(c.diagnostics.ks_level > 0.0 && c.diagnostics.ks_level < 1.0))
            throw ConfigError("diagnostics: ks_level must lie in (0, 1)");
    }
    if (j.contains("book")) {
        const Json& b = j.at("book");
        reject_unknown_keys(b, {"tick_size", "levels"}, "book");
        c.book.tick_size = get_or<double>(b, "tick_size", 0.01, "book");
        c.book.levels = get_or<std::size_t>(b, "levels", 10, "book");
        if (!(c.book.tick_size > 0.0)) throw ConfigError("book: tick_size must be > 0");
        if (c.book.levels == 0) throw ConfigError("book: levels must be >= 1");
    }
    if (j.contains("ingest")) {
        const Json& g = j.at("ingest");
        reject_unknown_keys(g, {"source", "window"}, "ingest");
        c.ingest.source = get_or<std::string>(g, "source", "", "ingest");
        c.ingest.window = get_or<double>(g, "window", 0.1, "ingest");
    }
    if (j.contains("io")) {
        const Json& o = j.at("io");
        reject_unknown_keys(o, {"input", "params", "output", "horizon"}, "io");
        if (o.contains("input")) c.io.input = get<std::string>(o, "input", "io");
        if (o.contains("params")) c.io.params = get<std::string>(o, "params", "io");
        if (o.contains("output")) c.io.output = get<std::string>(o, "output", "io");
        if (o.contains("horizon")) c.io.horizon = get<double>(o, "horizon", "io");
    }
    return c;
}

}  // namespace mmsim::io
