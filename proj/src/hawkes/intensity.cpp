#include "mmsim/hawkes/intensity.hpp"

#include "mmsim/error.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace mmsim::hawkes {

double intensity_at(const HawkesModel& model, const EventStream& history, std::size_t i, double t) {
    const std::size_t d = model.dimension();
    if (i >= d) throw std::out_of_range(fmt::format("dimension {} out of range (d = {})", i, d));
    if (!(t >= 0.0)) throw DomainError(fmt::format("intensity queried at negative time {}", t));
    if (history.dimension() > d)
        throw ShapeError(fmt::format("stream has {} dimensions, model has {}", history.dimension(), d));
    double x = model.baseline(i);
    for (const Event& e : history) {
        if (!(e.time < t)) break;
        x += model.marks(e.dim).excitation_weight(e.mark) * model.kernel(i, e.dim)(t - e.time);
    }
    return model.link(i)(x);
}

IntensityTracker::IntensityTracker(const HawkesModel& model, double truncate_rel_tol)
    : model_(&model),
      d_(model.dimension()),
      decayed_(d_ * d_, 0.0),
      history_(d_),
      keep_history_(d_, 0),
      first_live_(d_ * d_, 0),
      window_(d_ * d_, std::numeric_limits<double>::infinity()) {
    for (std::size_t i = 0; i < d_; ++i) {
        for (std::size_t j = 0; j < d_; ++j) {
            const Kernel& k = model.kernel(i, j);
            if (k.family() == KernelFamily::PowerLaw) {
                keep_history_[j] = 1;
                if (truncate_rel_tol > 0.0) window_[i * d_ + j] = k.negligible_after(truncate_rel_tol);
            }
        }
    }
}

void IntensityTracker::advance(double t) {
    if (t < time_) throw DomainError(fmt::format("tracker cannot move back from {} to {}", time_, t));
    const double dt = t - time_;
    if (dt > 0.0) {
        const auto kernels = model_->kernels();
        for (std::size_t idx = 0; idx < decayed_.size(); ++idx) {
            if (decayed_[idx] == 0.0) continue;
            const auto& k = std::get<ExponentialKernel>(kernels[idx].variant());
            decayed_[idx] *= std::exp(-k.beta * dt);
        }
    }
    time_ = t;
}

void IntensityTracker::add_event(std::size_t dim, double raw_mark) {
    const double w = model_->marks(dim).excitation_weight(raw_mark);
    for (std::size_t i = 0; i < d_; ++i) {
        if (model_->kernel(i, dim).family() == KernelFamily::Exponential) decayed_[i * d_ + dim] += w;
    }
    if (keep_history_[dim]) history_[dim].push_back({time_, w});
}

double IntensityTracker::argument(std::size_t i) {
    double x = model_->baseline(i);
    for (std::size_t j = 0; j < d_; ++j) {
        const std::size_t idx = i * d_ + j;
        const Kernel& k = model_->kernel(i, j);
        switch (k.family()) {
            case KernelFamily::Zero: break;
            case KernelFamily::Exponential:
                x += std::get<ExponentialKernel>(k.variant()).alpha * decayed_[idx];
                break;
            case KernelFamily::PowerLaw: {
                const auto& p = std::get<PowerLawKernel>(k.variant());
                const auto& past = history_[j];
                std::size_t& start = first_live_[idx];
                while (start < past.size() && time_ - past[start].time > window_[idx]) ++start;
                double acc = 0.0;
                for (std::size_t m = start; m < past.size(); ++m) {
                    const double u = time_ - past[m].time;
                    acc += past[m].weight * std::exp(-p.exponent * std::log1p(u / p.cutoff));
                }
                x += p.alpha * acc;
                break;
            }
        }
    }
    return x;
}

double IntensityTracker::total_intensity() {
    double total = 0.0;
    for (std::size_t i = 0; i < d_; ++i) total += intensity(i);
    return total;
}

}  // namespace mmsim::hawkes
