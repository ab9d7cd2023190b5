#include "mmsim/hawkes/fit.hpp"

#include "mmsim/error.hpp"
#include "mmsim/hawkes/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace mmsim::hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Keeps e^x finite and away from zero inside the optimizer.
constexpr double kMaxLog = 40.0;

std::size_t per_kernel(KernelFamily family) {
    switch (family) {
        case KernelFamily::Zero: return 0;
        case KernelFamily::Exponential: return 2;
        case KernelFamily::PowerLaw: return 3;
    }
    return 0;
}

bool in_range(const std::vector<double>& x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v) && std::abs(v) <= kMaxLog; });
}

/// Row i parameters in log space: x[0] = log μ, then per source j the kernel
/// parameters.
struct RowCodec {
    KernelFamily family;
    std::size_t d;

    std::size_t size() const { return 1 + d * per_kernel(family); }

    Kernel kernel(const std::vector<double>& x, std::size_t j) const {
        const std::size_t o = 1 + j * per_kernel(family);
        if (family == KernelFamily::Exponential) return Kernel::exponential(std::exp(x[o]), std::exp(x[o + 1]));
        return Kernel::power_law(std::exp(x[o]), std::exp(x[o + 1]), 1.0 + std::exp(x[o + 2]));
    }

    std::vector<double> encode(double mu, const std::vector<Kernel>& row) const {
        std::vector<double> x{std::log(mu)};
        for (const Kernel& k : row) {
            if (const auto* e = std::get_if<ExponentialKernel>(&k.variant())) {
                x.push_back(std::log(e->alpha));
                x.push_back(std::log(e->beta));
            } else {
                const auto& p = std::get<PowerLawKernel>(k.variant());
                x.push_back(std::log(p.alpha));
                x.push_back(std::log(p.cutoff));
                x.push_back(std::log(p.exponent - 1.0));
            }
        }
        return x;
    }
};

class RowProblem {
public:
    RowProblem(const EventStream& stream, const HawkesModel& base, std::size_t i, RowCodec codec)
        : stream_(stream), base_(base), i_(i), codec_(codec) {}

    HawkesModel model(const std::vector<double>& x) const {
        std::vector<double> mu(base_.baselines().begin(), base_.baselines().end());
        std::vector<Kernel> kernels(base_.kernels().begin(), base_.kernels().end());
        mu[i_] = std::exp(x[0]);
        for (std::size_t j = 0; j < codec_.d; ++j) kernels[i_ * codec_.d + j] = codec_.kernel(x, j);
        return base_.with_parameters(std::move(mu), std::move(kernels));
    }

    double negative(const std::vector<double>& x) const {
        if (!in_range(x)) return kInf;
        const LogLikelihood ll = evaluate_log_likelihood(model(x), stream_, i_);
        return std::isfinite(ll.value) ? -ll.value : kInf;
    }

    /// Negative ℓ_i and its gradient with respect to x (exponential rows).
    double negative_with_gradient(const std::vector<double>& x, std::vector<double>& g) const {
        if (!in_range(x)) return kInf;
        const RowGradient rg = exponential_row_gradient(model(x), stream_, i_);
        if (!std::isfinite(rg.value)) return kInf;
        for (std::size_t k = 0; k < x.size(); ++k) g[k] = -rg.gradient[k] * std::exp(x[k]);
        return -rg.value;
    }

private:
    const EventStream& stream_;
    const HawkesModel& base_;
    std::size_t i_;
    RowCodec codec_;
};

double mean_interarrival(const std::vector<double>& times, double horizon) {
    if (times.size() < 2) return horizon;
    return (times.back() - times.front()) / static_cast<double>(times.size() - 1);
}

}  // namespace

std::string_view to_string(FitMethod method) {
    return method == FitMethod::Bfgs ? "bfgs" : "nelder-mead";
}

FitMethod fit_method_from_string(std::string_view name) {
    if (name == "nelder-mead" || name == "nelder_mead" || name == "nm") return FitMethod::NelderMead;
    if (name == "bfgs") return FitMethod::Bfgs;
    throw ConfigError(fmt::format("unknown optimizer '{}'", name));
}

std::string fit_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::Zero: return "Poisson";
        case KernelFamily::Exponential: return "Hawkes-Exp";
        case KernelFamily::PowerLaw: return "Hawkes-PL";
    }
    return "Poisson";
}

MarkDistribution fit_marks(const std::vector<double>& marks, bool normalize_excitation) {
    if (marks.empty()) throw DataError("cannot fit a mark law to an empty sample");
    double sum = 0.0;
    bool all_positive = true;
    for (double v : marks) {
        sum += v;
        all_positive = all_positive && v > 0.0;
    }
    const double mean = sum / static_cast<double>(marks.size());
    if (!(mean > 0.0)) throw DataError("marks average to zero; excitation weights are undefined");
    const auto [lo, hi] = std::minmax_element(marks.begin(), marks.end());
    if (*lo == *hi) return MarkDistribution::deterministic(*lo, normalize_excitation);
    if (!all_positive) return MarkDistribution::exponential(1.0 / mean, normalize_excitation);
    double ls = 0.0, lss = 0.0;
    for (double v : marks) {
        const double l = std::log(v);
        ls += l;
        lss += l * l;
    }
    const double n = static_cast<double>(marks.size());
    const double m = ls / n;
    const double var = std::max(lss / n - m * m, 0.0);
    if (!(var > 0.0)) return MarkDistribution::deterministic(mean, normalize_excitation);
    return MarkDistribution::log_normal(m, std::sqrt(var), normalize_excitation);
}

std::vector<std::string> parameter_names(std::size_t d, KernelFamily family) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) names.push_back(fmt::format("mu[{}]", i));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (family == KernelFamily::Exponential) {
                names.push_back(fmt::format("alpha[{},{}]", i, j));
                names.push_back(fmt::format("beta[{},{}]", i, j));
            } else if (family == KernelFamily::PowerLaw) {
                names.push_back(fmt::format("alpha[{},{}]", i, j));
                names.push_back(fmt::format("c[{},{}]", i, j));
                names.push_back(fmt::format("gamma[{},{}]", i, j));
            }
        }
    }
    return names;
}

std::vector<double> parameter_vector(const HawkesModel& model, KernelFamily family) {
    std::vector<double> out(model.baselines().begin(), model.baselines().end());
    if (family == KernelFamily::Zero) return out;
    for (const Kernel& k : model.kernels()) {
        if (const auto* e = std::get_if<ExponentialKernel>(&k.variant())) {
            if (family != KernelFamily::Exponential) throw ConfigError("model kernels do not match the family");
            out.push_back(e->alpha);
            out.push_back(e->beta);
        } else if (const auto* p = std::get_if<PowerLawKernel>(&k.variant())) {
            if (family != KernelFamily::PowerLaw) throw ConfigError("model kernels do not match the family");
            out.push_back(p->alpha);
            out.push_back(p->cutoff);
            out.push_back(p->exponent);
        } else {
            throw ConfigError("model kernels do not match the family");
        }
    }
    return out;
}

FitResult fit_mle(const EventStream& stream, KernelFamily family, std::size_t d, const FitOptions& opts) {
    if (d == 0) throw ConfigError("fit dimension must be >= 1");
    if (stream.dimension() > d)
        throw ShapeError(fmt::format("stream has {} dimensions, fit requested {}", stream.dimension(), d));
    const double horizon = stream.horizon();
    if (!(horizon > 0.0)) throw DataError("stream horizon must be > 0 to fit");
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t n = i < stream.dimension() ? stream.count(i) : 0;
        if (n < kMinEventsPerDimension)
            throw DataError(fmt::format("dimension {} has {} events, at least {} needed", i, n,
                                        kMinEventsPerDimension));
    }
    if (opts.marks && opts.marks->size() != d)
        throw ConfigError(fmt::format("{} mark laws given for dimension {}", opts.marks->size(), d));

    std::vector<MarkDistribution> marks;
    if (opts.marks) {
        marks = *opts.marks;
    } else {
        for (std::size_t i = 0; i < d; ++i) marks.push_back(fit_marks(stream.marks(i), opts.normalize_excitation));
    }

    std::vector<std::string> warnings;
    std::vector<double> mu(d);
    std::vector<Kernel> kernels(d * d);
    std::size_t iterations = 0;
    bool converged = true;

    if (family == KernelFamily::Zero) {
        for (std::size_t i = 0; i < d; ++i) mu[i] = static_cast<double>(stream.count(i)) / horizon;
    } else {
        FitMethod method = opts.method;
        if (method == FitMethod::Bfgs && family != KernelFamily::Exponential) {
            warnings.push_back("bfgs needs exponential kernels; used nelder-mead");
            method = FitMethod::NelderMead;
        }
        const RowCodec codec{family, d};
        for (std::size_t i = 0; i < d; ++i) {
            const double ia = mean_interarrival(stream.times(i), horizon);
            mu[i] = 0.5 * static_cast<double>(stream.count(i)) / horizon;
            for (std::size_t j = 0; j < d; ++j) {
                kernels[i * d + j] =
                    family == KernelFamily::Exponential
                        ? Kernel::exponential(0.5 / static_cast<double>(d) / ia, 1.0 / ia)
                        : Kernel::power_law(0.25 / (static_cast<double>(d) * ia), ia, 1.5);
            }
        }
        // Rows only read their own parameters, so later rows start from the
        // initial guesses of the others without affecting the result.
        const HawkesModel start(mu, kernels, marks, std::vector<LinkFunction>(d));
        const OptimizerOptions oo{opts.max_iterations, opts.tolerance, 0.5};
        for (std::size_t i = 0; i < d; ++i) {
            const RowProblem problem(stream, start, i, codec);
            const std::vector<Kernel> row(start.kernel_row(i).begin(), start.kernel_row(i).end());
            const std::vector<double> x0 = codec.encode(mu[i], row);
            OptimizerResult r =
                method == FitMethod::Bfgs
                    ? bfgs([&](const std::vector<double>& x,
                               std::vector<double>& g) { return problem.negative_with_gradient(x, g); },
                           x0, oo)
                    : nelder_mead([&](const std::vector<double>& x) { return problem.negative(x); }, x0, oo);
            if (!std::isfinite(r.fx)) throw DataError(fmt::format("likelihood of dimension {} is not finite", i));
            iterations += r.iterations;
            converged = converged && r.converged;
            mu[i] = std::exp(r.x[0]);
            for (std::size_t j = 0; j < d; ++j) kernels[i * d + j] = codec.kernel(r.x, j);
        }
    }

    HawkesModel fitted(mu, kernels, marks, std::vector<LinkFunction>(d));
    const LogLikelihood ll = evaluate_log_likelihood(fitted, stream);
    for (std::size_t i = 0; i < d; ++i) {
        const double expected = compensator(fitted, stream, i, horizon);
        const double n = static_cast<double>(stream.count(i));
        if (std::abs(expected - n) > 0.1 * n)
            warnings.push_back(
                fmt::format("dimension {}: compensator at horizon {:.4g} differs from event count {} by more than 10%",
                            i, expected, stream.count(i)));
    }
    if (!converged) warnings.push_back("optimizer stopped at the iteration cap");

    const std::size_t k = d + d * d * per_kernel(family);
    const double n_total = static_cast<double>(stream.size());
    return FitResult{fit_name(family),
                     std::move(fitted),
                     family,
                     ll.value,
                     -ll.value / n_total,
                     2.0 * static_cast<double>(k) - 2.0 * ll.value,
                     k,
                     parameter_names(d, family),
                     std::nullopt,
                     iterations,
                     converged,
                     opts,
                     horizon,
                     stream.size(),
                     std::move(warnings)};
}

}  // namespace mmsim::hawkes
