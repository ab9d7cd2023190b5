#pragma once

// Random operation driver shared by the unit and acceptance differential tests.

#include "mmsim/hawkes/rng.hpp"
#include "mmsim/lob/book.hpp"
#include "reference_book.hpp"

#include <string>

namespace mmsim::testing {

struct DifferentialOutcome {
    bool ok = true;
    std::size_t operations = 0;
    std::size_t executions = 0;
    std::string failure;
};

/// Runs `n` random submit/market/cancel operations on both books, comparing
/// every execution list and the 5-level snapshot after each step.
/// `check_every` controls how often Book::check_invariants runs. Prices stay
/// in a narrow band so that orders cross often.
inline DifferentialOutcome run_differential(std::size_t n, std::uint64_t seed, std::size_t check_every) {
    DifferentialOutcome out;
    hawkes::Rng rng(seed, "differential");
    lob::Book book(0.01);
    ReferenceBook ref;
    lob::OrderId next = 1;
    std::vector<lob::OrderId> issued;
    auto fail = [&](std::string why) {
        out.ok = false;
        out.failure = "op " + std::to_string(out.operations) + ": " + why;
    };
    for (std::size_t k = 0; k < n && out.ok; ++k) {
        ++out.operations;
        const double ts = static_cast<double>(k);
        const std::uint64_t kind = rng.below(10);
        const lob::Volume resting_before = book.resting_volume();
        lob::Volume executed = 0, cancelled = 0, rested = 0;
        if (kind < 5) {
            const lob::Side side = rng.below(2) ? lob::Side::Buy : lob::Side::Sell;
            const lob::Price price = 1000 + static_cast<lob::Price>(rng.below(21)) - 10;
            const lob::Volume vol = 1 + static_cast<lob::Volume>(rng.below(100));
            const lob::Order o{next++, side, price, vol, ts};
            issued.push_back(o.id);
            const auto a = book.submit_limit(o);
            const auto b = ref.submit_limit(o);
            if (a != b) fail("limit executions differ");
            for (const auto& e : a) executed += e.volume;
            rested = vol - executed;
            out.executions += a.size();
            for (std::size_t i = 1; i < a.size(); ++i)
                if (side == lob::Side::Sell ? a[i].price > a[i - 1].price : a[i].price < a[i - 1].price)
                    fail("execution prices not monotone");
        } else if (kind < 7) {
            const lob::Side side = rng.below(2) ? lob::Side::Buy : lob::Side::Sell;
            const lob::Volume vol = 1 + static_cast<lob::Volume>(rng.below(150));
            const auto a = book.submit_market(side, vol, ts);
            const auto b = ref.submit_market(side, vol, ts);
            if (a.executions != b.executions || a.unfilled != b.unfilled) fail("market executions differ");
            for (const auto& e : a.executions) executed += e.volume;
            out.executions += a.executions.size();
        } else if (!issued.empty()) {
            const lob::OrderId id = issued[static_cast<std::size_t>(rng.below(issued.size()))];
            const auto b = ref.cancel(id);
            try {
                const lob::Order a = book.cancel(id);
                if (!b || a != *b) fail("cancel differs");
                cancelled = a.volume;
            } catch (const NotFoundError&) {
                if (b) fail("book refused a cancel the reference accepted");
            }
        }
        if (book.resting_volume() != resting_before + rested - executed - cancelled) fail("volume not conserved");
        if (book.snapshot(5) != ref.snapshot(5)) fail("snapshots differ");
        const auto bb = book.best_bid(), ba = book.best_ask();
        if (bb && ba && *bb >= *ba) fail("crossed book");
        if (check_every && k % check_every == 0) {
            try {
                book.check_invariants();
            } catch (const std::exception& e) {
                fail(e.what());
            }
        }
    }
    if (out.ok && book.live_ids(lob::Side::Buy).size() + book.live_ids(lob::Side::Sell).size() != ref.size())
        fail("final order counts differ");
    return out;
}

}  // namespace mmsim::testing
