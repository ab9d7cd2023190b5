#include "mmsim/cli/commands.hpp"

#include "mmsim/diagnostics/report.hpp"
#include "mmsim/error.hpp"
#include "mmsim/flow/replay.hpp"
#include "mmsim/hawkes/bootstrap.hpp"
#include "mmsim/hawkes/fit.hpp"
#include "mmsim/hawkes/simulate.hpp"
#include "mmsim/hawkes/stability.hpp"
#include "mmsim/ingest/binance.hpp"
#include "mmsim/ingest/lobster.hpp"
#include "mmsim/io/atomic_file.hpp"
#include "mmsim/io/csv.hpp"
#include "mmsim/io/json.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace mmsim::cli {

namespace {

using io::Json;

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "JSON run configuration");
    cmd->add_option("--seed", c.seed, "root seed (overrides the config)");
    cmd->add_option("--out", c.out, "output path or prefix")->required();
}

io::RunConfig load_config(const Common& c) {
    if (c.config.empty()) return {};
    return io::config_from_json(io::parse_json(io::read_file(c.config)));
}

std::uint64_t root_seed(const Common& c, const io::RunConfig& cfg) { return c.seed ? *c.seed : cfg.sim.seed; }

void write_json(const std::string& path, const Json& j) { io::write_file_atomic(path, j.dump(2) + "\n"); }

hawkes::EventStream load_events(const std::string& path, std::optional<double> horizon,
                                std::optional<std::size_t> dimension) {
    std::istringstream in(io::read_file(path));
    io::EventRows rows = io::read_events_csv(in);
    if (dimension && rows.dimension > *dimension && !rows.events.empty())
        throw ShapeError(fmt::format("events use {} dimensions but the model has {}", rows.dimension, *dimension));
    return io::to_stream(std::move(rows), horizon, dimension);
}

Json stability_json(const hawkes::HawkesModel& model, const hawkes::EventStream& stream,
                    const hawkes::SimConfig& sim, hawkes::SimMethod method) {
    const hawkes::StabilityReport rep = hawkes::stability_check(model);
    Json j;
    j["schema_version"] = io::kSchemaVersion;
    j["dimension"] = model.dimension();
    j["horizon"] = sim.horizon;
    j["seed"] = sim.seed;
    j["method"] = std::string(hawkes::to_string(method));
    j["branching_ratio"] = rep.branching;
    j["spectral_radius_lg"] = rep.rho;
    j["stable"] = rep.stable;
    if (rep.stable) {
        const Eigen::VectorXd mean = hawkes::stationary_mean_intensity(model);
        j["stationary_mean_intensity"] = std::vector<double>(mean.data(), mean.data() + mean.size());
    } else {
        j["stationary_mean_intensity"] = nullptr;
    }
    std::vector<double> rate(model.dimension());
    for (std::size_t i = 0; i < rate.size(); ++i)
        rate[i] = static_cast<double>(stream.count(i)) / sim.horizon;
    j["realized_rate"] = rate;
    j["event_count"] = stream.size();
    return j;
}

int cmd_simulate(const Common& c, bool allow_unstable, std::optional<double> horizon,
                 std::optional<std::string> method, std::ostream& out, std::ostream& err) {
    io::RunConfig cfg = load_config(c);
    if (!cfg.model) throw ConfigError("simulate needs a model in the config");
    hawkes::SimConfig sim = cfg.sim;
    sim.seed = root_seed(c, cfg);
    if (horizon) sim.horizon = *horizon;
    if (method) sim.method = hawkes::sim_method_from_string(*method);
    const hawkes::StabilityReport rep = hawkes::stability_check(*cfg.model);
    if (!rep.stable && !allow_unstable) {
        err << fmt::format("refusing to simulate: spectral radius rho(LG) = {:.6g} >= 1 (pass --allow-unstable)\n",
                           rep.rho);
        return kUnstable;
    }
    const hawkes::SimMethod resolved = hawkes::resolve_method(*cfg.model, sim.method);
    sim.method = resolved;
    const hawkes::EventStream stream = hawkes::simulate(*cfg.model, sim);
    std::ostringstream csv;
    io::write_events_csv(csv, stream);
    io::write_file_atomic(c.out, csv.str());
    write_json(c.out + ".stability.json", stability_json(*cfg.model, stream, sim, resolved));
    out << fmt::format("events={} rho={:.6g} method={}\n", stream.size(), rep.rho, hawkes::to_string(resolved));
    return kOk;
}

int cmd_fit(const Common& c, std::optional<std::string> input, std::optional<std::string> kernel,
            std::optional<double> horizon, std::optional<std::size_t> bootstrap, std::optional<std::string> method,
            std::optional<std::size_t> dim, std::ostream& out, std::ostream& err) {
    io::RunConfig cfg = load_config(c);
    const std::string path = input ? *input : cfg.io.input.value_or("");
    if (path.empty()) throw ConfigError("fit needs --input or io.input");
    const std::optional<double> h = horizon ? horizon : cfg.io.horizon;
    std::optional<std::size_t> d = dim;
    if (!d && cfg.model) d = cfg.model->dimension();
    const hawkes::EventStream stream = load_events(path, h, d);

    hawkes::FitOptions opts = cfg.fit.options;
    if (method) opts.method = hawkes::fit_method_from_string(*method);
    const hawkes::KernelFamily family = kernel ? hawkes::kernel_family_from_string(*kernel) : cfg.fit.kernel;
    hawkes::FitResult fit = hawkes::fit_mle(stream, family, stream.dimension(), opts);

    const std::size_t reps = bootstrap ? *bootstrap : cfg.fit.bootstrap;
    if (reps > 0) {
        if (!fit.converged) {
            fit.warnings.push_back("bootstrap skipped: fit did not converge");
        } else if (family != hawkes::KernelFamily::Zero) {
            const hawkes::BootstrapResult b =
                hawkes::bootstrap_std_errors(fit, {reps, root_seed(c, cfg), cfg.fit.threads, false});
            fit.std_errors = b.std_errors;
            if (b.excluded) fit.warnings.push_back(fmt::format("bootstrap excluded {} of {} replicates", b.excluded, reps));
        }
    }
    write_json(c.out, io::to_json(fit));
    for (const auto& w : fit.warnings) err << "warning: " << w << '\n';
    out << fmt::format("{} loglik={:.6f} aic={:.6f} converged={}\n", fit.name, fit.loglik, fit.aic, fit.converged);
    return fit.converged ? kOk : kNotConverged;
}

int cmd_diagnose(const Common& c, std::optional<std::string> input, std::optional<std::string> params,
                 std::optional<double> horizon, std::optional<std::size_t> dim, std::ostream& out) {
    io::RunConfig cfg = load_config(c);
    const std::string path = input ? *input : cfg.io.input.value_or("");
    if (path.empty()) throw ConfigError("diagnose needs --input or io.input");
    std::optional<hawkes::HawkesModel> model;
    const std::optional<std::string> params_path = params ? params : cfg.io.params;
    if (params_path)
        model = io::model_from_params_json(io::parse_json(io::read_file(*params_path)));
    else
        model = cfg.model;
    if (!model) throw ConfigError("diagnose needs --params or a model in the config");

    const std::optional<double> h = horizon ? horizon : cfg.io.horizon;
    const hawkes::EventStream stream = load_events(path, h, model->dimension());
    diagnostics::DiagnoseOptions opts;
    opts.max_lag = cfg.diagnostics.max_lag;
    opts.dimension = dim ? dim : cfg.diagnostics.dimension;
    const diagnostics::DiagnosticsReport rep = diagnostics::diagnose(*model, stream, opts);

    write_json(c.out, io::to_json(rep));
    std::ostringstream res, qq, acf;
    io::write_residuals_csv(res, rep.residuals, rep.uniforms);
    io::write_qq_csv(qq, rep.qq);
    io::write_acf_csv(acf, rep.acf);
    io::write_file_atomic(c.out + ".residuals.csv", res.str());
    io::write_file_atomic(c.out + ".qq.csv", qq.str());
    io::write_file_atomic(c.out + ".acf.csv", acf.str());
    const std::string acf1 = rep.acf.size() > 1 ? fmt::format("{:.4f}", rep.acf[1]) : "nan";
    out << fmt::format("KS={:.4f} p={:.4f} ACF1={} AIC={:.2f}\n", rep.ks_stat, rep.ks_pvalue, acf1, rep.aic);
    return kOk;
}

void check_quotes(const std::vector<flow::Quote>& quotes) {
    for (const auto& q : quotes)
        if (q.best_bid && q.best_ask && *q.best_bid >= *q.best_ask)
            throw std::logic_error(fmt::format("crossed quote at t = {}", q.time));
}

void write_replay(const std::string& prefix, const std::vector<lob::Execution>& tape,
                  const std::vector<flow::Quote>& quotes, const lob::Book& book, std::size_t levels) {
    std::ostringstream t, q;
    io::write_tape_csv(t, tape);
    io::write_quotes_csv(q, quotes);
    Json snap = io::to_json(book.snapshot(levels));
    snap["tick_size"] = book.tick_size();
    io::write_file_atomic(prefix + ".tape.csv", t.str());
    io::write_file_atomic(prefix + ".quotes.csv", q.str());
    write_json(prefix + ".snapshot.json", snap);
}

int cmd_replay(const Common& c, std::optional<std::string> lobster, std::optional<std::string> input,
               std::ostream& out, std::ostream& err) {
    io::RunConfig cfg = load_config(c);
    if (lobster) {
        std::istringstream in(io::read_file(*lobster));
        const std::vector<ingest::OrderOp> ops = io::read_ops_csv(in);
        lob::Book book(c.config.empty() ? ingest::kLobsterTick : cfg.book.tick_size);
        std::vector<flow::Quote> quotes;
        const ingest::ApplyResult r = ingest::apply_ops(book, ops, [&](std::size_t k, const lob::Book& b) {
            const lob::Snapshot s = b.snapshot(1);
            quotes.push_back({ops[k].time, s.best_bid, s.best_ask, s.mid, s.spread});
        });
        book.check_invariants();
        check_quotes(quotes);
        write_replay(c.out, r.tape, quotes, book, cfg.book.levels);
        for (const auto& e : r.errors) err << "warning: " << e << '\n';
        out << fmt::format("ops={} executions={} rejected={}\n", ops.size(), r.tape.size(), r.rejected);
        return kOk;
    }

    if (!cfg.mapping) throw ConfigError("replay needs a mapping in the config");
    hawkes::SimConfig sim = cfg.sim;
    sim.seed = root_seed(c, cfg);
    const lob::Book init(cfg.book.tick_size);
    std::optional<hawkes::EventStream> stream;
    if (input) {
        const std::size_t d = cfg.model ? cfg.model->dimension() : cfg.mapping->actions.size();
        stream = load_events(*input, cfg.io.horizon, d);
    } else if (sim.horizon == 0.0) {
        stream = hawkes::EventStream(0.0, cfg.model ? cfg.model->dimension() : cfg.mapping->actions.size());
    } else {
        if (!cfg.model) throw ConfigError("replay needs a model in the config or --input events");
        cfg.mapping->validate(cfg.model->dimension());
        stream = hawkes::simulate(*cfg.model, sim);
    }
    const flow::ReplayResult r = flow::replay_stream(*stream, *cfg.mapping, init, sim.seed);
    r.book.check_invariants();
    check_quotes(r.quotes);
    const lob::Volume expected = r.stats.rested_volume - r.stats.executed_volume - r.stats.cancelled_volume;
    if (r.book.resting_volume() != expected)
        throw std::logic_error(fmt::format("volume not conserved: book holds {}, accounting gives {}",
                                           r.book.resting_volume(), expected));
    write_replay(c.out, r.tape, r.quotes, r.book, cfg.mapping->snapshot_levels);
    out << fmt::format("events={} executions={} skipped_cancels={}\n", r.events.size(), r.tape.size(),
                       r.stats.skipped_cancels);
    return kOk;
}

int cmd_ingest(const Common& c, std::optional<std::string> source, std::optional<std::string> input,
               std::optional<double> window, std::ostream& out, std::ostream& err) {
    io::RunConfig cfg = load_config(c);
    const std::string src = source ? *source : cfg.ingest.source;
    const std::string path = input ? *input : cfg.io.input.value_or("");
    if (path.empty()) throw ConfigError("ingest needs --input or io.input");
    std::istringstream in(io::read_file(path));
    Json side;
    side["schema_version"] = io::kSchemaVersion;
    side["source"] = src;
    if (src == "binance") {
        const ingest::TradeParse parsed = ingest::parse_binance_trades(in);
        for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
        const ingest::Aggregation agg = ingest::aggregate_trades(parsed.trades, window ? *window : cfg.ingest.window);
        std::ostringstream csv;
        io::write_events_csv(csv, agg.stream);
        io::write_file_atomic(c.out, csv.str());
        side["origin_ns"] = agg.origin_ns;
        side["window_ns"] = agg.window_ns;
        side["horizon"] = agg.stream.horizon();
        side["trades"] = {agg.trades[0], agg.trades[1]};
        side["volume"] = {agg.volume[0], agg.volume[1]};
        side["events"] = {agg.stream.count(0), agg.stream.count(1)};
        Json marks = Json::array();
        for (const auto& m : agg.marks) marks.push_back(m ? io::to_json(*m) : Json(nullptr));
        side["marks"] = marks;
        side["warnings"] = parsed.warnings;
        write_json(c.out + ".ingest.json", side);
        out << fmt::format("trades={} events={}\n", parsed.trades.size(), agg.stream.size());
        return kOk;
    }
    if (src == "lobster") {
        const ingest::LobsterParse parsed = ingest::parse_lobster(in);
        for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
        const ingest::LobsterConversion conv = ingest::lobster_to_orders(parsed.messages);
        std::ostringstream csv;
        io::write_ops_csv(csv, conv.ops);
        io::write_file_atomic(c.out, csv.str());
        side["messages"] = parsed.messages.size();
        side["operations"] = conv.ops.size();
        side["hidden_skipped"] = conv.hidden_skipped;
        std::vector<std::size_t> orphan_lines;
        for (const auto& m : conv.orphans) orphan_lines.push_back(m.line);
        side["orphan_lines"] = orphan_lines;
        side["warnings"] = parsed.warnings;
        write_json(c.out + ".ingest.json", side);
        if (!conv.orphans.empty()) err << fmt::format("warning: {} messages refer to unknown orders\n", conv.orphans.size());
        out << fmt::format("messages={} operations={} hidden={} orphans={}\n", parsed.messages.size(),
                           conv.ops.size(), conv.hidden_skipped, conv.orphans.size());
        return kOk;
    }
    throw ConfigError(fmt::format("unknown ingest source '{}' (binance or lobster)", src));
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hawkes order-flow and limit order book simulator", "mmsim"};
    app.require_subcommand(1);

    Common common;
    bool allow_unstable = false;
    std::optional<double> horizon;
    std::optional<std::string> method, input, kernel, params, lobster, source;
    std::optional<std::size_t> bootstrap, dim;
    std::optional<double> window;

    auto* sim = app.add_subcommand("simulate", "simulate an event stream");
    add_common(sim, common);
    sim->add_flag("--allow-unstable", allow_unstable, "simulate even when rho(LG) >= 1");
    sim->add_option("--horizon", horizon, "override the configured horizon");
    sim->add_option("--method", method, "thinning, cluster or auto");

    auto* fit = app.add_subcommand("fit", "maximum-likelihood fit of an event stream");
    add_common(fit, common);
    fit->add_option("--input", input, "events CSV");
    fit->add_option("--kernel", kernel, "exponential, powerlaw or poisson");
    fit->add_option("--horizon", horizon, "observation horizon (default: last event time)");
    fit->add_option("--bootstrap", bootstrap, "parametric bootstrap replicates");
    fit->add_option("--method", method, "nelder-mead or bfgs");
    fit->add_option("--dim", dim, "model dimension (default: from the data)");

    auto* diag = app.add_subcommand("diagnose", "time-rescaling diagnostics");
    add_common(diag, common);
    diag->add_option("--input", input, "events CSV");
    diag->add_option("--params", params, "model or fit JSON");
    diag->add_option("--horizon", horizon, "observation horizon (default: last event time)");
    diag->add_option("--dim", dim, "diagnose one dimension (default: pooled)");

    auto* rep = app.add_subcommand("replay", "drive the order book with simulated flow");
    add_common(rep, common);
    rep->add_option("--lobster", lobster, "operations CSV from `ingest --source lobster`");
    rep->add_option("--input", input, "replay an events CSV instead of simulating");

    auto* ing = app.add_subcommand("ingest", "convert Binance trades or LOBSTER messages");
    add_common(ing, common);
    ing->add_option("--source", source, "binance or lobster");
    ing->add_option("--input", input, "input file");
    ing->add_option("--window", window, "aggregation window in seconds (binance)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (sim->parsed()) return cmd_simulate(common, allow_unstable, horizon, method, out, err);
        if (fit->parsed()) return cmd_fit(common, input, kernel, horizon, bootstrap, method, dim, out, err);
        if (diag->parsed()) return cmd_diagnose(common, input, params, horizon, dim, out);
        if (rep->parsed()) return cmd_replay(common, lobster, input, out, err);
        if (ing->parsed()) return cmd_ingest(common, source, input, window, out, err);
    } catch (const StabilityError& e) {
        err << "error: " << e.what() << '\n';
        return kUnstable;
    } catch (const ExplosionError& e) {
        err << "error: " << e.what() << '\n';
        return kUnstable;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ShapeError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}

}  // namespace mmsim::cli
