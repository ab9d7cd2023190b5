#include "mmsim/error.hpp"
#include "mmsim/flow/replay.hpp"
#include "mmsim/hawkes/simulate.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace mmsim;
using namespace mmsim::hawkes;
using namespace mmsim::flow;

namespace {

HawkesModel symmetric_six() {
    const std::vector<double> mu{1.0, 1.0, 0.3, 0.3, 0.5, 0.5};
    std::vector<Kernel> k(36);
    for (std::size_t i = 0; i < 6; ++i) k[i * 6 + i] = Kernel::exponential(0.3, 1.0);
    return HawkesModel(mu, k);
}

FlowMapping six_mapping() {
    FlowMapping m;
    m.actions = {Action::LimitBuy, Action::LimitSell, Action::MarketBuy,
                 Action::MarketSell, Action::CancelBuy, Action::CancelSell};
    m.volume_scale = 10.0;
    return m;
}

lob::Volume total(const std::vector<lob::Execution>& tape) {
    lob::Volume v = 0;
    for (const auto& e : tape) v += e.volume;
    return v;
}

}  // namespace

TEST(Flow, MarketBuysAgainstDeepLadder) {
    lob::Book init(0.01);
    for (lob::OrderId id = 1; id <= 20; ++id) init.submit_limit({id, lob::Side::Sell, 10000 + static_cast<lob::Price>(id), 1000, 0.0});
    FlowMapping m;
    m.actions = {Action::MarketBuy};
    SimConfig c;
    c.horizon = 100.0;
    c.seed = 3;
    const ReplayResult r = replay(HawkesModel::univariate(0.5, Kernel::exponential(0.5, 1.0)), m, c, init);
    ASSERT_GT(r.events.size(), 0u);
    EXPECT_EQ(r.tape.size(), r.events.size());
    EXPECT_EQ(r.quotes.size(), r.events.size());
    EXPECT_EQ(r.stats.market_orders, r.events.size());
}

TEST(Flow, CancelsOnEmptyBookAreSkipped) {
    FlowMapping m;
    m.actions = {Action::CancelBuy, Action::CancelSell};
    SimConfig c;
    c.horizon = 50.0;
    c.seed = 1;
    const ReplayResult r = replay(HawkesModel({0.5, 0.5}, std::vector<Kernel>(4)), m, c, lob::Book{});
    EXPECT_TRUE(r.tape.empty());
    EXPECT_EQ(r.stats.skipped_cancels, r.events.size());
    EXPECT_EQ(r.stats.cancels, 0u);
}

TEST(Flow, SymmetricImbalanceNearZero) {
    const HawkesModel model = symmetric_six();
    const FlowMapping m = six_mapping();
    std::vector<double> imbalance;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SimConfig c;
        c.horizon = 2000.0;
        c.seed = seed;
        const ReplayResult r = replay(model, m, c, lob::Book{});
        double signed_volume = 0.0, volume = 0.0;
        for (const auto& e : r.tape) {
            signed_volume += (e.taker_side == lob::Side::Buy ? 1.0 : -1.0) * static_cast<double>(e.volume);
            volume += static_cast<double>(e.volume);
        }
        ASSERT_GT(volume, 0.0);
        imbalance.push_back(signed_volume / volume);
    }
    const double n = static_cast<double>(imbalance.size());
    const double mean = std::accumulate(imbalance.begin(), imbalance.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : imbalance) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / (n - 1.0) / n);
    EXPECT_LE(std::abs(mean), 3.0 * se);
}

TEST(Flow, DeterministicCausalConservative) {
    SimConfig c;
    c.horizon = 300.0;
    c.seed = 8;
    lob::Book init(0.01);
    init.submit_limit({1, lob::Side::Buy, 9990, 50, 0.0});
    init.submit_limit({2, lob::Side::Sell, 10010, 50, 0.0});
    const ReplayResult a = replay(symmetric_six(), six_mapping(), c, init);
    const ReplayResult b = replay(symmetric_six(), six_mapping(), c, init);
    EXPECT_EQ(a.tape, b.tape);
    EXPECT_EQ(a.quotes, b.quotes);
    EXPECT_EQ(a.stats, b.stats);
    EXPECT_EQ(a.book.snapshot(50), b.book.snapshot(50));

    const auto times = a.events.all_times();
    EXPECT_TRUE(std::is_sorted(a.tape.begin(), a.tape.end(),
                               [](const auto& x, const auto& y) { return x.timestamp < y.timestamp; }));
    for (const auto& e : a.tape) EXPECT_TRUE(std::binary_search(times.begin(), times.end(), e.timestamp));

    EXPECT_EQ(a.stats.executed_volume, total(a.tape));
    EXPECT_EQ(a.book.resting_volume(),
              init.resting_volume() + a.stats.rested_volume - a.stats.executed_volume - a.stats.cancelled_volume);
    for (const Quote& q : a.quotes)
        if (q.best_bid && q.best_ask) EXPECT_LT(*q.best_bid, *q.best_ask);
    a.book.check_invariants();
}

TEST(Flow, MappingValidation) {
    FlowMapping m;
    m.actions = {Action::LimitBuy};
    EXPECT_THROW(m.validate(2), ConfigError);
    SimConfig c;
    c.horizon = 10.0;
    EXPECT_THROW(replay(HawkesModel({0.5, 0.5}, std::vector<Kernel>(4)), m, c, lob::Book{}), ConfigError);
    m.offset_p = 1.0;
    EXPECT_THROW(m.validate(1), ConfigError);
    m.offset_p = 0.5;
    m.volume_scale = 0.0;
    EXPECT_THROW(m.validate(1), ConfigError);
    EXPECT_EQ(action_from_string("cancel_sell"), Action::CancelSell);
    EXPECT_EQ(to_string(Action::MarketBuy), "market_buy");
    EXPECT_THROW(action_from_string("hold"), ConfigError);
}

TEST(Flow, LimitPlacementAnchorsToReference) {
    FlowMapping m;
    m.actions = {Action::LimitBuy, Action::LimitSell};
    m.reference_price = 5000;
    const EventStream s({{1.0, 0, 1.0}, {2.0, 1, 1.0}}, 3.0, 2);
    const ReplayResult r = replay_stream(s, m, lob::Book{}, 4);
    ASSERT_TRUE(r.quotes[1].best_bid && r.quotes[1].best_ask);
    EXPECT_LE(*r.quotes[1].best_bid, 4999);
    EXPECT_GE(*r.quotes[1].best_ask, 5001);
}
