#include "mmsim/hawkes/event_stream.hpp"

#include "mmsim/error.hpp"

#include <cmath>
#include <fmt/format.h>

namespace mmsim::hawkes {

EventStream::EventStream(std::vector<Event> events, double horizon, std::size_t dimension)
    : events_(std::move(events)), horizon_(horizon), dimension_(dimension) {
    if (dimension_ == 0) throw DataError("event stream needs at least one dimension");
    if (!(horizon_ >= 0.0) || !std::isfinite(horizon_))
        throw DataError(fmt::format("event stream horizon must be finite and >= 0, got {}", horizon_));
    double prev = -1.0;
    for (std::size_t k = 0; k < events_.size(); ++k) {
        const Event& e = events_[k];
        if (!std::isfinite(e.time) || e.time < 0.0)
            throw DataError(fmt::format("event {}: invalid time {}", k, e.time));
        if (!(e.time > prev))
            throw DataError(fmt::format("event {}: time {} not strictly after previous {}", k, e.time, prev));
        if (e.time > horizon_)
            throw DataError(fmt::format("event {}: time {} beyond horizon {}", k, e.time, horizon_));
        if (e.dim >= dimension_)
            throw DataError(fmt::format("event {}: dimension {} out of range (d = {})", k, e.dim, dimension_));
        if (!std::isfinite(e.mark) || e.mark < 0.0)
            throw DataError(fmt::format("event {}: invalid mark {}", k, e.mark));
        prev = e.time;
    }
}

std::size_t EventStream::count(std::size_t dim) const {
    std::size_t n = 0;
    for (const Event& e : events_) n += e.dim == dim;
    return n;
}

std::vector<double> EventStream::times(std::size_t dim) const {
    std::vector<double> out;
    for (const Event& e : events_)
        if (e.dim == dim) out.push_back(e.time);
    return out;
}

std::vector<double> EventStream::marks(std::size_t dim) const {
    std::vector<double> out;
    for (const Event& e : events_)
        if (e.dim == dim) out.push_back(e.mark);
    return out;
}

std::vector<double> EventStream::all_times() const {
    std::vector<double> out;
    out.reserve(events_.size());
    for (const Event& e : events_) out.push_back(e.time);
    return out;
}

}  // namespace mmsim::hawkes
