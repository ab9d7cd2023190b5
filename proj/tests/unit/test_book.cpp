#include "differential.hpp"
#include "mmsim/error.hpp"
#include "mmsim/lob/book.hpp"

#include <gtest/gtest.h>

using namespace mmsim;
using namespace mmsim::lob;

namespace {

Order limit(OrderId id, Side side, Price price, Volume volume, double t = 0.0) {
    return {id, side, price, volume, t};
}

std::vector<OrderId> ids(const std::vector<Order>& q) {
    std::vector<OrderId> out;
    for (const Order& o : q) out.push_back(o.id);
    return out;
}

}  // namespace

TEST(Book, LimitBuyRestsBehindQueue) {
    Book b(1.0);
    b.submit_limit(limit(1, Side::Buy, 100, 30));
    b.submit_limit(limit(2, Side::Sell, 101, 10));
    EXPECT_TRUE(b.submit_limit(limit(3, Side::Buy, 100, 50)).empty());
    EXPECT_EQ(ids(b.queue(Side::Buy, 100)), (std::vector<OrderId>{1, 3}));
    b.check_invariants();
}

TEST(Book, MarketableLimitExecutesAtMakerPriceAndRemainderRests) {
    Book b(0.01);
    b.submit_limit(limit(1, Side::Buy, 10000, 30));
    b.submit_limit(limit(2, Side::Buy, 9990, 30));
    const auto ex = b.submit_limit(limit(3, Side::Sell, 9950, 100));
    ASSERT_EQ(ex.size(), 2u);
    EXPECT_EQ(ex[0].price, 10000);
    EXPECT_EQ(ex[0].maker_order_id, 1u);
    EXPECT_EQ(ex[1].price, 9990);
    EXPECT_EQ(ex[0].taker_side, Side::Sell);
    EXPECT_EQ(b.best_ask(), 9950);
    EXPECT_EQ(b.find(3)->volume, 40);
    EXPECT_FALSE(b.best_bid());
}

TEST(Book, LimitStopsWhenNoLongerCrossing) {
    Book b(0.01);
    b.submit_limit(limit(1, Side::Buy, 10000, 30));
    b.submit_limit(limit(2, Side::Buy, 9900, 30));
    const auto ex = b.submit_limit(limit(3, Side::Sell, 9950, 100));
    ASSERT_EQ(ex.size(), 1u);
    EXPECT_EQ(b.best_bid(), 9900);
    EXPECT_EQ(b.best_ask(), 9950);
}

TEST(Book, LimitIntoEmptyBookRests) {
    Book b;
    EXPECT_TRUE(b.submit_limit(limit(1, Side::Buy, 100, 5)).empty());
    EXPECT_EQ(b.order_count(), 1u);
}

TEST(Book, MarketSellReducesBestBid) {
    Book b(1.0);
    b.submit_limit(limit(1, Side::Buy, 100, 50));
    const MarketResult r = b.submit_market(Side::Sell, 20, 1.0);
    ASSERT_EQ(r.executions.size(), 1u);
    EXPECT_EQ(r.executions[0].price, 100);
    EXPECT_EQ(r.executions[0].volume, 20);
    EXPECT_EQ(r.unfilled, 0);
    EXPECT_EQ(b.find(1)->volume, 30);
}

TEST(Book, MarketIntoEmptySide) {
    Book b;
    const MarketResult r = b.submit_market(Side::Buy, 7, 0.0);
    EXPECT_TRUE(r.executions.empty());
    EXPECT_EQ(r.unfilled, 7);
    EXPECT_THROW(b.submit_market(Side::Buy, 0, 0.0), DataError);
}

TEST(Book, MarketSellWalksLevelsInMakerOrder) {
    Book b(1.0);
    b.submit_limit(limit(1, Side::Buy, 100, 50));
    b.submit_limit(limit(2, Side::Buy, 100, 40));
    b.submit_limit(limit(3, Side::Buy, 99, 100));
    const MarketResult r = b.submit_market(Side::Sell, 120, 2.0);
    ASSERT_EQ(r.executions.size(), 3u);
    EXPECT_EQ(r.executions[0], (Execution{Side::Sell, 1, 100, 50, 2.0}));
    EXPECT_EQ(r.executions[1], (Execution{Side::Sell, 2, 100, 40, 2.0}));
    EXPECT_EQ(r.executions[2], (Execution{Side::Sell, 3, 99, 30, 2.0}));
    EXPECT_EQ(b.best_bid(), 99);
    EXPECT_EQ(b.find(3)->volume, 70);
    EXPECT_FALSE(b.contains(1));
}

TEST(Book, CancelKeepsQueueOrder) {
    Book b(1.0);
    for (OrderId id = 1; id <= 3; ++id) b.submit_limit(limit(id, Side::Sell, 105, 10));
    EXPECT_EQ(b.cancel(2).volume, 10);
    EXPECT_EQ(ids(b.queue(Side::Sell, 105)), (std::vector<OrderId>{1, 3}));
    b.check_invariants();
}

TEST(Book, CancelOnlyOrderRemovesLevel) {
    Book b(1.0);
    b.submit_limit(limit(1, Side::Sell, 105, 10));
    b.submit_limit(limit(2, Side::Sell, 106, 10));
    b.cancel(1);
    const Snapshot s = b.snapshot(5);
    ASSERT_EQ(s.asks.size(), 1u);
    EXPECT_EQ(s.asks[0].price, 106);
}

TEST(Book, CancelReasons) {
    Book b(1.0);
    b.submit_limit(limit(1, Side::Buy, 100, 10));
    b.submit_limit(limit(2, Side::Buy, 100, 10));
    b.cancel(1);
    try {
        b.cancel(1);
        FAIL() << "second cancel succeeded";
    } catch (const NotFoundError& e) {
        EXPECT_EQ(e.reason(), NotFoundError::Reason::Cancelled);
    }
    b.submit_market(Side::Sell, 10, 0.0);
    try {
        b.cancel(2);
        FAIL();
    } catch (const NotFoundError& e) {
        EXPECT_EQ(e.reason(), NotFoundError::Reason::Filled);
    }
    try {
        b.cancel(77);
        FAIL();
    } catch (const NotFoundError& e) {
        EXPECT_EQ(e.reason(), NotFoundError::Reason::Unknown);
    }
}

TEST(Book, SnapshotSpread) {
    const double tick = 0.5;
    Book b(tick);
    OrderId id = 1;
    for (auto [p, v] : {std::pair{98.00, 200}, {98.50, 300}, {99.00, 500}})
        b.submit_limit(limit(id++, Side::Buy, to_ticks(p, tick), v));
    for (auto [p, v] : {std::pair{101.0, 500}, {101.5, 300}, {102.0, 200}})
        b.submit_limit(limit(id++, Side::Sell, to_ticks(p, tick), v));
    const Snapshot s = b.snapshot(10);
    ASSERT_TRUE(s.spread);
    EXPECT_DOUBLE_EQ(from_ticks(*s.spread, tick), 2.0);
    EXPECT_DOUBLE_EQ(from_ticks(*s.best_bid, tick), 99.0);
    EXPECT_DOUBLE_EQ(*s.mid, 200.0);  // ticks
    EXPECT_EQ(*s.depth, 2000);
    EXPECT_EQ(s.bid_depth, 1000);
    EXPECT_DOUBLE_EQ(*s.imbalance, 0.0);
    EXPECT_EQ(s.bids.front(), (LevelView{198, 500}));
    EXPECT_EQ(b.snapshot(1).bids.size(), 1u);
    EXPECT_EQ(*b.snapshot(1).depth, 1000);
}

TEST(Book, SnapshotEmptyAndOneSided) {
    Book b;
    const Snapshot e = b.snapshot(5);
    EXPECT_FALSE(e.best_bid || e.best_ask || e.spread || e.mid || e.depth || e.imbalance);
    b.submit_limit(limit(1, Side::Buy, 100, 40));
    const Snapshot s = b.snapshot(5);
    EXPECT_FALSE(s.spread || s.mid || s.best_ask);
    EXPECT_EQ(s.depth, 40);
    EXPECT_EQ(s.bid_depth, 40);
    EXPECT_DOUBLE_EQ(*s.imbalance, 1.0);
}

TEST(Book, InputErrors) {
    Book b;
    b.submit_limit(limit(1, Side::Buy, 100, 10));
    EXPECT_THROW(b.submit_limit(limit(1, Side::Buy, 100, 10)), IdError);
    EXPECT_THROW(b.submit_limit(limit(2, Side::Buy, 100, 0)), DataError);
    EXPECT_THROW(b.submit_limit(limit(3, Side::Buy, 0, 10)), DataError);
    b.cancel(1);
    EXPECT_THROW(b.submit_limit(limit(1, Side::Buy, 100, 10)), IdError);
}

TEST(Book, ReduceKeepsPriority) {
    Book b(1.0);
    b.submit_limit(limit(1, Side::Buy, 100, 10));
    b.submit_limit(limit(2, Side::Buy, 100, 10));
    b.reduce(1, 6);
    EXPECT_EQ(ids(b.queue(Side::Buy, 100)), (std::vector<OrderId>{1, 2}));
    EXPECT_EQ(b.find(1)->volume, 4);
    EXPECT_EQ(b.resting_volume(), 14);
    EXPECT_THROW(b.reduce(1, 4), DataError);
}

TEST(Book, ExecuteSpecificOrder) {
    Book b(1.0);
    b.submit_limit(limit(1, Side::Sell, 100, 10));
    b.submit_limit(limit(2, Side::Sell, 100, 10));
    const Execution e = b.execute(2, 10, 3.0);
    EXPECT_EQ(e, (Execution{Side::Buy, 2, 100, 10, 3.0}));
    EXPECT_FALSE(b.contains(2));
    EXPECT_THROW(b.execute(1, 11, 3.0), DataError);
}

TEST(Book, TickConversion) {
    EXPECT_EQ(to_ticks(585.90, 1e-4), 5859000);
    EXPECT_EQ(to_ticks(0.03, 0.01), 3);
    EXPECT_THROW(to_ticks(100.005, 0.01), DataError);
    EXPECT_THROW(to_ticks(-1.0, 0.01), DataError);
    EXPECT_DOUBLE_EQ(from_ticks(5859000, 1e-4), 585.9);
}

TEST(Book, Determinism) {
    auto run = [] {
        Book b(1.0);
        std::vector<Execution> tape;
        for (OrderId id = 1; id <= 50; ++id) {
            const Side s = id % 3 ? Side::Buy : Side::Sell;
            const auto ex = b.submit_limit(limit(id, s, 95 + static_cast<Price>(id % 11), 5 + id % 7));
            tape.insert(tape.end(), ex.begin(), ex.end());
        }
        return std::pair{tape, b.snapshot(20)};
    };
    EXPECT_EQ(run(), run());
}

TEST(Book, DifferentialAgainstReference) {
    const auto out = mmsim::testing::run_differential(100'000, 7, 97);
    EXPECT_TRUE(out.ok) << out.failure;
    EXPECT_EQ(out.operations, 100'000u);
    EXPECT_GT(out.executions, 1000u);
}

TEST(Book, CopiesAreIndependent) {
    Book a(1.0);
    a.submit_limit(limit(1, Side::Buy, 100, 10));
    a.submit_limit(limit(2, Side::Sell, 105, 10));
    Book b(a);
    b.cancel(1);
    b.submit_market(Side::Buy, 4, 0.0);
    EXPECT_EQ(a.find(1)->volume, 10);
    EXPECT_EQ(a.find(2)->volume, 10);
    EXPECT_EQ(b.find(2)->volume, 6);
    a.check_invariants();
    b.check_invariants();
    Book c;
    c = b;
    c.cancel(2);
    EXPECT_TRUE(b.contains(2));
    c.check_invariants();
}
