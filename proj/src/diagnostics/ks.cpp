#include "mmsim/diagnostics/ks.hpp"

#include "mmsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace mmsim::diagnostics {

namespace {

double p_value(double d, double effective_n) {
    const double root = std::sqrt(effective_n);
    return kolmogorov_q((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

double reference_cdf(Reference ref, double x) {
    if (ref == Reference::Exponential1) return x <= 0.0 ? 0.0 : -std::expm1(-x);
    return std::clamp(x, 0.0, 1.0);
}

double reference_quantile(Reference ref, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(fmt::format("probability {} outside [0, 1]", p));
    if (ref == Reference::Exponential1) return -std::log1p(-p);
    return p;
}

double kolmogorov_q(double lambda) {
    if (!(lambda > 0.0)) return 1.0;
    constexpr double pi = std::numbers::pi;
    if (lambda < 1.18) {
        const double y = std::exp(-pi * pi / (8.0 * lambda * lambda));
        if (y == 0.0) return 1.0;
        double sum = 0.0;
        for (int k = 1; k < 100; ++k) {
            const double term = std::pow(y, (2 * k - 1) * (2 * k - 1));
            sum += term;
            if (term < 1e-10 * sum) break;
        }
        return std::clamp(1.0 - std::sqrt(2.0 * pi) / lambda * sum, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k < 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-10) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_statistic(std::span<const double> sample, Reference ref) {
    if (sample.empty()) throw DataError("KS statistic of an empty sample");
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double f = reference_cdf(ref, x[k]);
        d = std::max({d, std::abs(f - static_cast<double>(k) / n), std::abs(f - static_cast<double>(k + 1) / n)});
    }
    return {d, p_value(d, n)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw DataError("two-sample KS needs two non-empty samples");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return {d, p_value(d, n * m / (n + m))};
}

std::vector<std::pair<double, double>> qq_pairs(std::span<const double> sample, Reference ref) {
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    std::vector<std::pair<double, double>> out;
    out.reserve(x.size());
    const double n = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        out.emplace_back(reference_quantile(ref, (static_cast<double>(k) + 0.5) / n), x[k]);
    return out;
}

}  // namespace mmsim::diagnostics
