#pragma once

#include <span>
#include <utility>
#include <vector>

namespace mmsim::diagnostics {

enum class Reference { Exponential1, Uniform01 };

double reference_cdf(Reference ref, double x);
double reference_quantile(Reference ref, double p);

struct KsResult {
    double statistic;
    double p_value;
};

/// Q(λ) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}, summed until terms drop below
/// 1e-10. Below λ = 1.18 the equivalent theta-function form is used, which
/// converges fast there.
double kolmogorov_q(double lambda);

/// One-sample KS against a fixed reference. The sample does not need to be
/// sorted. p-value: Q((√n + 0.12 + 0.11/√n)·D). Throws DataError when empty.
KsResult ks_statistic(std::span<const double> sample, Reference ref);

/// Two-sample KS with n_e = n·m/(n+m) in the same p-value formula.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// (reference quantile at (k−½)/n, k-th order statistic) for k = 1..n.
std::vector<std::pair<double, double>> qq_pairs(std::span<const double> sample, Reference ref);

}  // namespace mmsim::diagnostics
