#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mmsim::hawkes {

struct Event {
    double time;
    std::size_t dim;
    double mark;
    friend bool operator==(const Event&, const Event&) = default;
};

/// Time-sorted marked events across `dimension()` dimensions observed on
/// [0, horizon]. Construction validates: times finite, ≥ 0, strictly
/// increasing and ≤ horizon; marks finite and ≥ 0; dims < dimension.
class EventStream {
public:
    EventStream(std::vector<Event> events, double horizon, std::size_t dimension);

    /// Empty stream.
    EventStream(double horizon, std::size_t dimension) : EventStream({}, horizon, dimension) {}

    std::size_t size() const noexcept { return events_.size(); }
    bool empty() const noexcept { return events_.empty(); }
    const Event& operator[](std::size_t k) const { return events_[k]; }
    auto begin() const noexcept { return events_.begin(); }
    auto end() const noexcept { return events_.end(); }
    std::span<const Event> events() const noexcept { return events_; }

    double horizon() const noexcept { return horizon_; }
    std::size_t dimension() const noexcept { return dimension_; }

    std::size_t count(std::size_t dim) const;
    std::vector<double> times(std::size_t dim) const;
    std::vector<double> marks(std::size_t dim) const;
    std::vector<double> all_times() const;

    friend bool operator==(const EventStream&, const EventStream&) = default;

private:
    std::vector<Event> events_;
    double horizon_;
    std::size_t dimension_;
};

}  // namespace mmsim::hawkes
