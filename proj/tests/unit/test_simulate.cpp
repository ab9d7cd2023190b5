#include "mmsim/error.hpp"
#include "mmsim/hawkes/simulate.hpp"
#include "mmsim/hawkes/stability.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace mmsim;
using namespace mmsim::hawkes;

namespace {

HawkesModel reference_model() { return HawkesModel::univariate(0.5, Kernel::exponential(1.2, 1.5)); }

SimConfig config(double horizon, std::uint64_t seed, SimMethod method = SimMethod::Auto) {
    SimConfig c;
    c.horizon = horizon;
    c.seed = seed;
    c.method = method;
    return c;
}

}  // namespace

TEST(Simulate, PoissonCountWithinThreeSigma) {
    const HawkesModel m = HawkesModel::univariate(2.0, Kernel::zero());
    for (SimMethod method : {SimMethod::Thinning, SimMethod::Cluster}) {
        const EventStream s = simulate(m, config(1000.0, 17, method));
        EXPECT_NEAR(static_cast<double>(s.size()), 2000.0, 3.0 * std::sqrt(2000.0));
    }
}

TEST(Simulate, LongRunRateAveragedOverSeeds) {
    const HawkesModel m = reference_model();
    for (SimMethod method : {SimMethod::Thinning, SimMethod::Cluster}) {
        double rate = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            rate += static_cast<double>(simulate(m, config(10'000.0, seed, method)).size()) / 10'000.0;
        EXPECT_NEAR(rate / 5.0, 2.5, 0.05 * 2.5) << to_string(method);
    }
}

TEST(Simulate, ClusterMeanSize) {
    const HawkesModel m = HawkesModel::univariate(1.0, Kernel::exponential(1.2, 1.5));
    std::vector<std::size_t> sizes;
    simulate_cluster(m, config(20'000.0, 8), &sizes);
    ASSERT_GE(sizes.size(), 10'000u);
    const double mean = std::accumulate(sizes.begin(), sizes.end(), 0.0) / static_cast<double>(sizes.size());
    EXPECT_NEAR(mean, 5.0, 0.05 * 5.0);
}

TEST(Simulate, DeterministicAndSeedSensitive) {
    const HawkesModel m = reference_model();
    for (SimMethod method : {SimMethod::Thinning, SimMethod::Cluster}) {
        const EventStream a = simulate(m, config(200.0, 42, method));
        const EventStream b = simulate(m, config(200.0, 42, method));
        const EventStream c = simulate(m, config(200.0, 43, method));
        EXPECT_EQ(a, b);
        EXPECT_NE(a, c);
    }
}

TEST(Simulate, TimesInsideHorizonAndStrictlyIncreasing) {
    const HawkesModel m = reference_model();
    for (SimMethod method : {SimMethod::Thinning, SimMethod::Cluster}) {
        const EventStream s = simulate(m, config(300.0, 9, method));
        ASSERT_FALSE(s.empty());
        EXPECT_GT(s[0].time, 0.0);
        EXPECT_LE(s[s.size() - 1].time, 300.0);
        for (std::size_t k = 1; k < s.size(); ++k) EXPECT_LT(s[k - 1].time, s[k].time);
    }
}

TEST(Simulate, ThinningEnvelope) {
    const HawkesModel m({0.4, 0.3}, {Kernel::exponential(0.8, 2.0), Kernel::power_law(0.2, 0.5, 2.5),
                                     Kernel::exponential(0.5, 1.0), Kernel::zero()});
    std::size_t candidates = 0, accepted = 0;
    simulate_thinning(m, config(200.0, 3), [&](const ThinningStep& step) {
        ++candidates;
        EXPECT_GE(step.bound * (1.0 + 1e-12), step.intensity);
        if (step.accepted) {
            ++accepted;
            EXPECT_LE(step.u, step.intensity / step.bound);
        }
    });
    EXPECT_GT(accepted, 0u);
    EXPECT_GT(candidates, accepted);
}

TEST(Simulate, OffDiagonalExcitationAgreesAcrossMethods) {
    // Dimension 0 excites dimension 1 only: rates (1, 0.2 + 0.6).
    const HawkesModel m({1.0, 0.2}, {Kernel::zero(), Kernel::zero(), Kernel::exponential(0.6, 1.0), Kernel::zero()});
    for (SimMethod method : {SimMethod::Thinning, SimMethod::Cluster}) {
        const EventStream s = simulate(m, config(20'000.0, 21, method));
        EXPECT_NEAR(static_cast<double>(s.count(0)) / 20'000.0, 1.0, 0.03) << to_string(method);
        EXPECT_NEAR(static_cast<double>(s.count(1)) / 20'000.0, 0.8, 0.03) << to_string(method);
    }
}

TEST(Simulate, MarksFollowTheLaw) {
    const HawkesModel m({1.0}, {Kernel::exponential(0.5, 1.0)}, {MarkDistribution::exponential(0.5)},
                        {LinkFunction::identity()});
    const EventStream s = simulate(m, config(5000.0, 2));
    double sum = 0.0;
    for (const Event& e : s) sum += e.mark;
    EXPECT_NEAR(sum / static_cast<double>(s.size()), 2.0, 0.1);
}

TEST(Simulate, ExplosionNamesRho) {
    const HawkesModel m = HawkesModel::univariate(1.0, Kernel::exponential(3.0, 1.5));
    SimConfig c = config(1000.0, 1, SimMethod::Thinning);
    c.max_events = 2000;
    try {
        simulate(m, c);
        FAIL();
    } catch (const ExplosionError& e) {
        EXPECT_NEAR(e.rho(), 2.0, 1e-12);
        EXPECT_NE(std::string(e.what()).find("rho"), std::string::npos);
    }
}

TEST(Simulate, ClusterRefusals) {
    const HawkesModel unstable = HawkesModel::univariate(1.0, Kernel::exponential(1.8, 1.5));
    EXPECT_THROW(simulate_cluster(unstable, config(10.0, 1)), StabilityError);
    const HawkesModel nonlinear =
        HawkesModel::univariate(1.0, Kernel::exponential(0.5, 1.5), {}, LinkFunction::saturated_linear(3.0));
    EXPECT_THROW(simulate_cluster(nonlinear, config(10.0, 1)), UnsupportedError);
}

TEST(Simulate, NonlinearThinningRespectsCap) {
    const HawkesModel m =
        HawkesModel::univariate(1.0, Kernel::exponential(1.4, 1.5), {}, LinkFunction::saturated_linear(2.0));
    const EventStream s = simulate(m, config(5000.0, 6));
    EXPECT_LT(static_cast<double>(s.size()) / 5000.0, 2.0);
    EXPECT_GT(static_cast<double>(s.size()) / 5000.0, 1.0);
}

TEST(Simulate, AutoRule) {
    EXPECT_EQ(resolve_method(reference_model(), SimMethod::Auto), SimMethod::Cluster);
    const HawkesModel near = HawkesModel::univariate(0.5, Kernel::exponential(1.44, 1.5));
    EXPECT_EQ(resolve_method(near, SimMethod::Auto), SimMethod::Thinning);
    const HawkesModel nonlinear =
        HawkesModel::univariate(1.0, Kernel::exponential(0.5, 1.5), {}, LinkFunction::positive_part(0.0));
    EXPECT_EQ(resolve_method(nonlinear, SimMethod::Auto), SimMethod::Thinning);
    EXPECT_EQ(resolve_method(near, SimMethod::Cluster), SimMethod::Cluster);
}

TEST(Simulate, BurnInShiftsToZero) {
    SimConfig c = config(100.0, 4);
    c.burn_in = 50.0;
    const EventStream s = simulate(reference_model(), c);
    ASSERT_FALSE(s.empty());
    EXPECT_GT(s[0].time, 0.0);
    EXPECT_LE(s[s.size() - 1].time, 100.0);
    EXPECT_EQ(s.horizon(), 100.0);
}

TEST(Simulate, ConfigValidation) {
    EXPECT_THROW(simulate(reference_model(), config(0.0, 1)), ConfigError);
    SimConfig c = config(1.0, 1);
    c.max_events = 0;
    EXPECT_THROW(simulate(reference_model(), c), ConfigError);
    EXPECT_THROW(sim_method_from_string("ogata"), ConfigError);
    EXPECT_EQ(sim_method_from_string("hybrid"), SimMethod::Auto);
}
