#include "mmsim/error.hpp"
#include "mmsim/hawkes/fit.hpp"
#include "mmsim/hawkes/simulate.hpp"
#include "mmsim/io/atomic_file.hpp"
#include "mmsim/io/csv.hpp"
#include "mmsim/io/json.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace mmsim;
using namespace mmsim::hawkes;
using namespace mmsim::io;

namespace {

HawkesModel rich_model() {
    return HawkesModel({0.3, 0.6},
                       {Kernel::exponential(0.4, 1.0), Kernel::zero(), Kernel::power_law(0.2, 0.5, 2.2),
                        Kernel::exponential(0.5, 1.5)},
                       {MarkDistribution::log_normal(0.1, 0.5), MarkDistribution::exponential(2.0, false)},
                       {LinkFunction::identity(), LinkFunction::saturated_linear(5.0)});
}

}  // namespace

TEST(Csv, EventsRoundTrip) {
    SimConfig c;
    c.horizon = 100.0;
    c.seed = 4;
    const HawkesModel m = rich_model();
    const EventStream s = simulate(m, c);
    std::ostringstream out;
    write_events_csv(out, s);
    std::istringstream in(out.str());
    EventRows rows = read_events_csv(in);
    EXPECT_EQ(rows.dimension, 2u);
    const EventStream back = to_stream(std::move(rows), 100.0, 2);
    ASSERT_EQ(back.size(), s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_NEAR(back[k].time, s[k].time, 1e-9);
        EXPECT_EQ(back[k].dim, s[k].dim);
        EXPECT_EQ(back[k].mark, s[k].mark);
    }
}

TEST(Csv, EventErrors) {
    std::istringstream no_header("0.5,0,1\n");
    EXPECT_THROW(read_events_csv(no_header), ParseError);
    std::istringstream bad("time,dim,mark\n0.5,x,1\n");
    EXPECT_THROW(read_events_csv(bad), ParseError);
    std::istringstream unsorted("time,dim,mark\n0.5,0,1\n0.2,0,1\n");
    EXPECT_THROW(to_stream(read_events_csv(unsorted)), DataError);
    std::istringstream empty("time,dim,mark\n");
    const EventStream e = to_stream(read_events_csv(empty), 5.0);
    EXPECT_TRUE(e.empty());
}

TEST(Csv, DecimalNanoseconds) {
    EXPECT_EQ(parse_decimal_ns("34200.000123456", 1, 1), 34200'000123456);
    EXPECT_EQ(parse_decimal_ns("1.5", 1, 1), 1'500000000);
    EXPECT_EQ(parse_decimal_ns("2", 1, 1), 2'000000000);
    EXPECT_EQ(parse_decimal_ns("0.1234567891", 1, 1), 123456789);
    EXPECT_THROW(parse_decimal_ns("-1.0", 1, 1), ParseError);
    EXPECT_THROW(parse_decimal_ns("1.2.3", 1, 1), ParseError);
}

TEST(Csv, FieldParsers) {
    EXPECT_EQ(split_fields(" a, b ,c\r").size(), 3u);
    EXPECT_EQ(split_fields(" a, b ,c\r")[1], "b");
    EXPECT_TRUE(parse_bool("true", 1, 1));
    EXPECT_FALSE(parse_bool("False", 1, 1));
    EXPECT_THROW(parse_double("1e", 3, 2), ParseError);
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_time(1.0), "1.000000000000");
}

TEST(Csv, QuotesLeaveAbsentFieldsBlank) {
    std::vector<flow::Quote> q{{1.0, 100, std::nullopt, std::nullopt, std::nullopt}};
    std::ostringstream out;
    write_quotes_csv(out, q);
    EXPECT_EQ(out.str(), "time,best_bid,best_ask,mid,spread\n1.000000000000,100,,,\n");
}

TEST(Json, ModelRoundTrip) {
    const HawkesModel m = rich_model();
    const Json j = to_json(m);
    EXPECT_EQ(model_from_json(j), m);
    EXPECT_EQ(model_from_json(parse_json(j.dump())), m);
}

TEST(Json, UnivariateShorthand) {
    const Json j = parse_json(R"({"mu": 0.5, "kernels": {"family": "exponential", "alpha": 1.2, "beta": 1.5}})");
    EXPECT_EQ(model_from_json(j), HawkesModel::univariate(0.5, Kernel::exponential(1.2, 1.5)));
}

TEST(Json, RejectsUnknownKeys) {
    EXPECT_THROW(model_from_json(parse_json(R"({"mu": 0.5, "kernels": {"family": "exponential", "alpha": 1, "beta": 2, "x": 0}})")),
                 ConfigError);
    EXPECT_THROW(config_from_json(parse_json(R"({"simulation": {}})")), ConfigError);
    EXPECT_THROW(config_from_json(parse_json(R"({"schema_version": 2})")), ConfigError);
    EXPECT_THROW(parse_json("{\"mu\": "), ParseError);
}

TEST(Json, FitDocumentCarriesModel) {
    SimConfig c;
    c.horizon = 200.0;
    c.seed = 1;
    const HawkesModel truth = HawkesModel::univariate(0.5, Kernel::exponential(1.2, 1.5));
    const FitResult f = fit_mle(simulate(truth, c), KernelFamily::Exponential, 1);
    const Json j = to_json(f);
    EXPECT_EQ(j.at("schema_version"), 1);
    EXPECT_EQ(j.at("parameters").size(), 3u);
    EXPECT_TRUE(j.at("std_errors").is_null());
    EXPECT_EQ(model_from_params_json(parse_json(j.dump())), f.model);
    EXPECT_EQ(model_from_params_json(to_json(truth)), truth);
}

TEST(Json, FullConfig) {
    const RunConfig c = config_from_json(parse_json(R"({
        "schema_version": 1,
        "model": {"mu": [0.5, 0.5], "kernels": [[{"family": "exponential", "alpha": 0.3, "beta": 1.0}, {"family": "zero"}],
                                                [{"family": "zero"}, {"family": "powerlaw", "alpha": 0.2, "cutoff": 1.0, "exponent": 2.0}]]},
        "sim": {"horizon": 50, "method": "thinning"},
        "mapping": {"actions": ["limit_buy", "market_sell"], "offset_p": 0.3},
        "fit": {"kernel": "exponential", "method": "bfgs", "bootstrap": 10},
        "diagnostics": {"max_lag": 5},
        "book": {"tick_size": 0.5},
        "io": {"input": "events.csv"}
    })"));
    ASSERT_TRUE(c.model);
    EXPECT_EQ(c.model->dimension(), 2u);
    EXPECT_EQ(c.sim.horizon, 50.0);
    EXPECT_EQ(c.sim.method, SimMethod::Thinning);
    EXPECT_EQ(c.mapping->actions[1], flow::Action::MarketSell);
    EXPECT_EQ(c.mapping->offset_p, 0.3);
    EXPECT_EQ(c.fit.options.method, FitMethod::Bfgs);
    EXPECT_EQ(c.fit.bootstrap, 10u);
    EXPECT_EQ(c.diagnostics.max_lag, 5u);
    EXPECT_EQ(c.book.tick_size, 0.5);
    EXPECT_EQ(c.io.input, "events.csv");
}

TEST(Json, MappingRoundTrip) {
    flow::FlowMapping m;
    m.actions = {flow::Action::CancelBuy, flow::Action::LimitSell};
    m.volume_scale = 3.0;
    const flow::FlowMapping back = mapping_from_json(to_json(m));
    EXPECT_EQ(back.actions, m.actions);
    EXPECT_EQ(back.volume_scale, 3.0);
}

TEST(AtomicFile, WritesAndReplaces) {
    const auto dir = std::filesystem::temp_directory_path() / "mmsim_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "out.txt").string();
    write_file_atomic(path, "first");
    write_file_atomic(path, "second");
    EXPECT_EQ(read_file(path), "second");
    for (const auto& e : std::filesystem::directory_iterator(dir)) EXPECT_EQ(e.path().filename(), "out.txt");
    std::filesystem::remove_all(dir);
    EXPECT_THROW(read_file((dir / "missing").string()), DataError);
}
