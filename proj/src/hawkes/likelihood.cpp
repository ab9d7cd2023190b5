#include "mmsim/hawkes/likelihood.hpp"

#include "mmsim/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <stdexcept>

namespace mmsim::hawkes {

namespace {

struct Past {
    double time;
    double weight;
};

/// Excitation state of one row i during a forward pass. Holds the right limit
/// at cur_: every event registered so far has time ≤ cur_.
class RowState {
public:
    RowState(const HawkesModel& model, std::size_t i, double truncate_rel_tol)
        : model_(model),
          row_(model.kernel_row(i)),
          mu_(model.baseline(i)),
          decayed_(row_.size(), 0.0),
          history_(row_.size()),
          start_(row_.size(), 0),
          window_(row_.size(), std::numeric_limits<double>::infinity()) {
        if (truncate_rel_tol > 0.0) {
            for (std::size_t j = 0; j < row_.size(); ++j)
                if (row_[j].family() == KernelFamily::PowerLaw) window_[j] = row_[j].negligible_after(truncate_rel_tol);
        }
    }

    double now() const noexcept { return cur_; }

    double argument_at(double s) const {
        double x = mu_;
        for (std::size_t j = 0; j < row_.size(); ++j) {
            switch (row_[j].family()) {
                case KernelFamily::Zero: break;
                case KernelFamily::Exponential: {
                    const auto& k = std::get<ExponentialKernel>(row_[j].variant());
                    x += k.alpha * decayed_[j] * std::exp(-k.beta * (s - cur_));
                    break;
                }
                case KernelFamily::PowerLaw: {
                    const auto& k = std::get<PowerLawKernel>(row_[j].variant());
                    double acc = 0.0;
                    const auto& past = history_[j];
                    for (std::size_t m = start_[j]; m < past.size(); ++m)
                        acc += past[m].weight * std::exp(-k.exponent * std::log1p((s - past[m].time) / k.cutoff));
                    x += k.alpha * acc;
                    break;
                }
            }
        }
        return x;
    }

    /// ∫_{cur}^{b} of the linear argument (μ included).
    double linear_integral(double b) const {
        const double dt = b - cur_;
        double total = mu_ * dt;
        for (std::size_t j = 0; j < row_.size(); ++j) {
            switch (row_[j].family()) {
                case KernelFamily::Zero: break;
                case KernelFamily::Exponential: {
                    const auto& k = std::get<ExponentialKernel>(row_[j].variant());
                    total += (k.alpha / k.beta) * decayed_[j] * -std::expm1(-k.beta * dt);
                    break;
                }
                case KernelFamily::PowerLaw: {
                    const auto& k = std::get<PowerLawKernel>(row_[j].variant());
                    const double mass = k.alpha * k.cutoff / (k.exponent - 1.0);
                    const double e = 1.0 - k.exponent;
                    double acc = 0.0;
                    const auto& past = history_[j];
                    for (std::size_t m = start_[j]; m < past.size(); ++m) {
                        const double from = std::exp(e * std::log1p((cur_ - past[m].time) / k.cutoff));
                        const double to = std::exp(e * std::log1p((b - past[m].time) / k.cutoff));
                        acc += past[m].weight * (from - to);
                    }
                    total += mass * acc;
                    break;
                }
            }
        }
        return total;
    }

    void move_to(double t) {
        const double dt = t - cur_;
        for (std::size_t j = 0; j < row_.size(); ++j) {
            if (row_[j].family() == KernelFamily::Exponential) {
                if (decayed_[j] != 0.0)
                    decayed_[j] *= std::exp(-std::get<ExponentialKernel>(row_[j].variant()).beta * dt);
            } else if (row_[j].family() == KernelFamily::PowerLaw) {
                auto& past = history_[j];
                while (start_[j] < past.size() && t - past[start_[j]].time > window_[j]) ++start_[j];
            }
        }
        cur_ = t;
    }

    void add(std::size_t j, double w) {
        if (row_[j].family() == KernelFamily::Exponential)
            decayed_[j] += w;
        else if (row_[j].family() == KernelFamily::PowerLaw)
            history_[j].push_back({cur_, w});
    }

    const HawkesModel& model() const noexcept { return model_; }

private:
    const HawkesModel& model_;
    std::span<const Kernel> row_;
    double mu_;
    double cur_ = 0.0;
    std::vector<double> decayed_;
    std::vector<std::vector<Past>> history_;
    std::vector<std::size_t> start_;
    std::vector<double> window_;
};

void check_shapes(const HawkesModel& model, const EventStream& stream, std::size_t i) {
    if (stream.dimension() > model.dimension())
        throw ShapeError(fmt::format("stream has {} dimensions, model has {}", stream.dimension(),
                                     model.dimension()));
    if (i >= model.dimension())
        throw std::out_of_range(fmt::format("dimension {} out of range (d = {})", i, model.dimension()));
}

double truncation_for(const EventStream& stream) {
    return stream.size() > kPowerLawTruncationThreshold ? kPowerLawTruncationTolerance : 0.0;
}

double weight_of(const HawkesModel& model, const Event& e) {
    return model.marks(e.dim).excitation_weight(e.mark);
}

/// ∫ over [state.now(), b] of λ*_i, before any event in (now, b).
double segment_integral(const RowState& state, const LinkFunction& link, double b) {
    if (link.is_identity()) return state.linear_integral(b);
    const double a = state.now();
    if (!(b > a)) return 0.0;
    auto f = [&](double s) { return link(state.argument_at(s)); };
    return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 15, 1e-12);
}

/// Λ_i(t) by segment accumulation (any link).
double accumulated_compensator(const HawkesModel& model, const EventStream& stream, std::size_t i, double t) {
    RowState state(model, i, truncation_for(stream));
    const LinkFunction& link = model.link(i);
    double total = 0.0;
    for (const Event& e : stream) {
        if (!(e.time < t)) break;
        total += segment_integral(state, link, e.time);
        state.move_to(e.time);
        state.add(e.dim, weight_of(model, e));
    }
    return total + segment_integral(state, link, t);
}

/// Λ_i(t) for identity links: μt + Σ_{t_k<t} w_k ∫_0^{t−t_k} φ_{i,dim_k}.
double closed_form_compensator(const HawkesModel& model, const EventStream& stream, std::size_t i, double t) {
    double total = model.baseline(i) * t;
    for (const Event& e : stream) {
        if (!(e.time < t)) break;
        total += weight_of(model, e) * model.kernel(i, e.dim).integral_to(t - e.time);
    }
    return total;
}

}  // namespace

std::vector<double> excitation_state(std::span<const double> times, std::span<const double> weights, double beta) {
    if (!(beta > 0.0)) throw DomainError(fmt::format("decay rate must be > 0, got {}", beta));
    if (times.size() != weights.size())
        throw ShapeError(fmt::format("{} times but {} weights", times.size(), weights.size()));
    std::vector<double> r(times.size(), 0.0);
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double dt = times[k] - times[k - 1];
        if (!(dt > 0.0))
            throw DataError(fmt::format("times not strictly increasing at index {} ({} after {})", k, times[k],
                                        times[k - 1]));
        r[k] = std::exp(-beta * dt) * (weights[k - 1] + r[k - 1]);
    }
    return r;
}

std::vector<double> excitation_state(const EventStream& stream, double beta, std::size_t dim,
                                     const MarkDistribution& marks) {
    std::vector<double> times, weights;
    for (const Event& e : stream) {
        if (e.dim != dim) continue;
        times.push_back(e.time);
        weights.push_back(marks.excitation_weight(e.mark));
    }
    return excitation_state(times, weights, beta);
}

LogLikelihood evaluate_log_likelihood(const HawkesModel& model, const EventStream& stream, std::size_t i) {
    check_shapes(model, stream, i);
    RowState state(model, i, truncation_for(stream));
    const LinkFunction& link = model.link(i);
    double log_sum = 0.0;
    std::optional<std::string> diagnostic;
    for (std::size_t k = 0; k < stream.size(); ++k) {
        const Event& e = stream[k];
        state.move_to(e.time);
        if (e.dim == i) {
            const double lambda = link(state.argument_at(e.time));
            if (!(lambda > 0.0)) {
                if (!diagnostic)
                    diagnostic = fmt::format("zero intensity in dimension {} at event {} (t = {})", i, k, e.time);
            } else {
                log_sum += std::log(lambda);
            }
        }
        state.add(e.dim, weight_of(model, e));
    }
    if (diagnostic) return {-std::numeric_limits<double>::infinity(), diagnostic};
    const double t = stream.horizon();
    const double comp = link.is_identity() ? closed_form_compensator(model, stream, i, t)
                                           : accumulated_compensator(model, stream, i, t);
    return {log_sum - comp, std::nullopt};
}

LogLikelihood evaluate_log_likelihood(const HawkesModel& model, const EventStream& stream) {
    double total = 0.0;
    for (std::size_t i = 0; i < model.dimension(); ++i) {
        LogLikelihood row = evaluate_log_likelihood(model, stream, i);
        if (row.diagnostic) return row;
        total += row.value;
    }
    return {total, std::nullopt};
}

double compensator(const HawkesModel& model, const EventStream& stream, std::size_t i, double t) {
    check_shapes(model, stream, i);
    if (!(t >= 0.0) || t > stream.horizon())
        throw DomainError(fmt::format("compensator time {} outside [0, {}]", t, stream.horizon()));
    return model.link(i).is_identity() ? closed_form_compensator(model, stream, i, t)
                                       : accumulated_compensator(model, stream, i, t);
}

std::vector<double> compensator(const HawkesModel& model, const EventStream& stream, double t) {
    std::vector<double> out(model.dimension());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = compensator(model, stream, i, t);
    return out;
}

std::vector<double> compensator_path(const HawkesModel& model, const EventStream& stream, std::size_t i) {
    check_shapes(model, stream, i);
    RowState state(model, i, truncation_for(stream));
    const LinkFunction& link = model.link(i);
    std::vector<double> path;
    path.reserve(stream.size());
    double total = 0.0;
    for (const Event& e : stream) {
        total += segment_integral(state, link, e.time);
        path.push_back(total);
        state.move_to(e.time);
        state.add(e.dim, weight_of(model, e));
    }
    return path;
}

RowGradient exponential_row_gradient(const HawkesModel& model, const EventStream& stream, std::size_t i) {
    check_shapes(model, stream, i);
    if (!model.link(i).is_identity()) throw UnsupportedError("analytic gradient needs an identity link");
    const std::size_t d = model.dimension();
    std::vector<double> alpha(d), beta(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto* k = std::get_if<ExponentialKernel>(&model.kernel(i, j).variant());
        if (!k) throw UnsupportedError("analytic gradient needs exponential kernels on the whole row");
        alpha[j] = k->alpha;
        beta[j] = k->beta;
    }
    const double mu = model.baseline(i);
    const double horizon = stream.horizon();

    // s = Σ w e^{-β(t−t_m)}, dsum = Σ w (t−t_m) e^{-β(t−t_m)}, both right limits.
    std::vector<double> s(d, 0.0), dsum(d, 0.0);
    std::vector<double> grad(1 + 2 * d, 0.0);
    double log_sum = 0.0;
    double cur = 0.0;
    for (const Event& e : stream) {
        const double dt = e.time - cur;
        for (std::size_t j = 0; j < d; ++j) {
            const double decay = std::exp(-beta[j] * dt);
            dsum[j] = decay * (dsum[j] + dt * s[j]);
            s[j] *= decay;
        }
        cur = e.time;
        if (e.dim == i) {
            double lambda = mu;
            for (std::size_t j = 0; j < d; ++j) lambda += alpha[j] * s[j];
            if (!(lambda > 0.0)) return {-std::numeric_limits<double>::infinity(), grad};
            log_sum += std::log(lambda);
            grad[0] += 1.0 / lambda;
            for (std::size_t j = 0; j < d; ++j) {
                grad[1 + 2 * j] += s[j] / lambda;
                grad[2 + 2 * j] -= alpha[j] * dsum[j] / lambda;
            }
        }
        s[e.dim] += weight_of(model, e);
    }

    // Compensator terms per source dimension.
    double comp = mu * horizon;
    grad[0] -= horizon;
    std::vector<double> mass(d, 0.0), lagged(d, 0.0);
    for (const Event& e : stream) {
        const double w = weight_of(model, e);
        const double u = horizon - e.time;
        const std::size_t j = e.dim;
        const double decay = std::exp(-beta[j] * u);
        mass[j] += w * -std::expm1(-beta[j] * u);
        lagged[j] += w * u * decay;
    }
    for (std::size_t j = 0; j < d; ++j) {
        comp += alpha[j] / beta[j] * mass[j];
        grad[1 + 2 * j] -= mass[j] / beta[j];
        grad[2 + 2 * j] += alpha[j] / (beta[j] * beta[j]) * mass[j] - alpha[j] / beta[j] * lagged[j];
    }
    return {log_sum - comp, grad};
}

}  // namespace mmsim::hawkes
