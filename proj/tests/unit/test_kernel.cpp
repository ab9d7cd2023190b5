#include "mmsim/error.hpp"
#include "mmsim/hawkes/kernel.hpp"
#include "mmsim/hawkes/link.hpp"
#include "mmsim/hawkes/marks.hpp"
#include "mmsim/hawkes/rng.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace mmsim;
using namespace mmsim::hawkes;

namespace {

// Independent oracle: adaptive quadrature of φ on [0, ∞).
double quad_integral(const Kernel& k) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([&](double u) { return k(u); });
}

double quad_integral_to(const Kernel& k, double t) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate([&](double u) { return k(u); }, 0.0, t);
}

}  // namespace

TEST(Kernel, ExponentialValues) {
    const Kernel k = Kernel::exponential(1.2, 1.5);
    EXPECT_DOUBLE_EQ(k(0.0), 1.2);
    EXPECT_NEAR(k(2.0), 1.2 * std::exp(-3.0), 1e-15);
    EXPECT_DOUBLE_EQ(k.integral(), 0.8);
}

TEST(Kernel, CalibratedBranchingRatio) {
    EXPECT_NEAR(Kernel::exponential(1.854, 2.321).integral(), 0.799, 0.0005);
}

TEST(Kernel, PowerLawValues) {
    const Kernel k = Kernel::power_law(0.3, 2.0, 2.5);
    EXPECT_DOUBLE_EQ(k(0.0), 0.3);
    EXPECT_NEAR(k(2.0), 0.3 * std::pow(2.0, -2.5), 1e-15);
    EXPECT_NEAR(k.integral(), 0.3 * 2.0 / 1.5, 1e-15);
}

TEST(Kernel, IntegralMatchesQuadrature) {
    for (const Kernel& k : {Kernel::exponential(0.7, 0.3), Kernel::exponential(5.0, 9.0),
                            Kernel::power_law(0.2, 0.5, 1.8), Kernel::power_law(1.0, 3.0, 4.0)}) {
        EXPECT_NEAR(k.integral(), quad_integral(k), 1e-8 * k.integral());
        for (double t : {0.01, 0.5, 3.0, 40.0})
            EXPECT_NEAR(k.integral_to(t), quad_integral_to(k, t), 1e-9 * k.integral());
    }
}

TEST(Kernel, IntegralToLimits) {
    const Kernel k = Kernel::power_law(0.2, 0.5, 1.8);
    EXPECT_EQ(k.integral_to(0.0), 0.0);
    EXPECT_DOUBLE_EQ(k.integral_to(std::numeric_limits<double>::infinity()), k.integral());
    EXPECT_EQ(Kernel::zero().integral_to(5.0), 0.0);
}

TEST(Kernel, ZeroKernel) {
    const Kernel z = Kernel::zero();
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z(1.0), 0.0);
    EXPECT_EQ(z.integral(), 0.0);
}

TEST(Kernel, RejectsBadParameters) {
    EXPECT_THROW(Kernel::exponential(-0.1, 1.0), ConfigError);
    EXPECT_THROW(Kernel::exponential(0.1, 0.0), ConfigError);
    EXPECT_THROW(Kernel::power_law(0.1, 1.0, 1.0), ConfigError);
    EXPECT_THROW(Kernel::power_law(0.1, 0.0, 2.0), ConfigError);
    EXPECT_THROW(Kernel::exponential(std::nan(""), 1.0), ConfigError);
}

TEST(Kernel, NegativeLagIsDomainError) {
    EXPECT_THROW(Kernel::exponential(1.0, 1.0)(-1e-9), DomainError);
    EXPECT_THROW(Kernel::power_law(1.0, 1.0, 2.0)(std::nan("")), DomainError);
}

TEST(Kernel, NegligibleAfter) {
    const Kernel e = Kernel::exponential(2.0, 0.5);
    const double ue = e.negligible_after(1e-12);
    EXPECT_NEAR(e(ue) / e(0.0), 1e-12, 1e-20);
    const Kernel p = Kernel::power_law(1.0, 0.1, 1.5);
    const double up = p.negligible_after(1e-12);
    EXPECT_NEAR(p(up) / p(0.0), 1e-12, 1e-18);
}

TEST(Kernel, FamilyNames) {
    EXPECT_EQ(kernel_family_from_string("powerlaw"), KernelFamily::PowerLaw);
    EXPECT_EQ(kernel_family_from_string("exp"), KernelFamily::Exponential);
    EXPECT_EQ(kernel_family_from_string("poisson"), KernelFamily::Zero);
    EXPECT_THROW(kernel_family_from_string("gaussian"), ConfigError);
}

TEST(Marks, DefaultIsUnitNormalized) {
    const MarkDistribution m;
    EXPECT_EQ(m.mean(), 1.0);
    EXPECT_EQ(m.excitation_weight(3.0), 3.0);
}

TEST(Marks, NormalizationDividesByMean) {
    const auto m = MarkDistribution::exponential(0.25);
    EXPECT_DOUBLE_EQ(m.mean(), 4.0);
    EXPECT_DOUBLE_EQ(m.excitation_weight(2.0), 0.5);
    EXPECT_EQ(m.excitation_mean(), 1.0);
    const auto raw = MarkDistribution::exponential(0.25, false);
    EXPECT_DOUBLE_EQ(raw.excitation_weight(2.0), 2.0);
    EXPECT_DOUBLE_EQ(raw.excitation_mean(), 4.0);
}

TEST(Marks, SampleMeansMatch) {
    Rng rng(11);
    for (const auto& m : {MarkDistribution::exponential(2.0), MarkDistribution::log_normal(0.3, 0.6),
                          MarkDistribution::deterministic(7.0)}) {
        double s = 0.0;
        const int n = 200000;
        for (int k = 0; k < n; ++k) s += m.sample(rng);
        EXPECT_NEAR(s / n, m.mean(), 0.01 * m.mean()) << m.name();
    }
}

TEST(Marks, RejectsBadParameters) {
    EXPECT_THROW(MarkDistribution::deterministic(0.0), ConfigError);
    EXPECT_THROW(MarkDistribution::exponential(-1.0), ConfigError);
    EXPECT_THROW(MarkDistribution::log_normal(0.0, -0.1), ConfigError);
}

TEST(Link, Values) {
    EXPECT_EQ(LinkFunction::identity()(-2.0), -2.0);
    EXPECT_EQ(LinkFunction::positive_part(0.1)(-2.0), 0.1);
    EXPECT_EQ(LinkFunction::positive_part(0.0)(3.0), 3.0);
    EXPECT_EQ(LinkFunction::saturated_linear(5.0)(7.0), 5.0);
    EXPECT_EQ(LinkFunction::saturated_linear(5.0)(-1.0), 0.0);
    EXPECT_EQ(LinkFunction::saturated_linear(5.0).lipschitz(), 1.0);
    EXPECT_THROW(LinkFunction::saturated_linear(0.0), ConfigError);
    EXPECT_THROW(LinkFunction::positive_part(-1.0), ConfigError);
}
