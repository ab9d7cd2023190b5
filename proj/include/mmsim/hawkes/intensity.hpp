#pragma once

#include "mmsim/hawkes/event_stream.hpp"
#include "mmsim/hawkes/model.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace mmsim::hawkes {

/// λ*_i(t) from the definition: sums over events strictly before t (left
/// limit), then applies ψ_i. Throws std::out_of_range for i ≥ d and
/// DomainError for t < 0.
double intensity_at(const HawkesModel& model, const EventStream& history, std::size_t i, double t);

/// Incremental intensity state for forward passes over a stream.
///
/// Exponential entries are kept as decayed sums and advance in O(d²);
/// power-law entries keep the history of their source dimension and are summed
/// on demand. With a finite `truncate_rel_tol`, power-law terms whose kernel
/// value fell below that fraction of φ(0) are dropped.
class IntensityTracker {
public:
    explicit IntensityTracker(const HawkesModel& model,
                              double truncate_rel_tol = 0.0);

    double time() const noexcept { return time_; }

    /// Move the clock forward; t must not be earlier than time().
    void advance(double t);

    /// Register an event of dimension `dim` at the current time.
    void add_event(std::size_t dim, double raw_mark);

    /// μ_i plus the excitation from every registered event, at time().
    double argument(std::size_t i);

    /// ψ_i(argument(i)).
    double intensity(std::size_t i) { return model_->link(i)(argument(i)); }

    double total_intensity();

private:
    struct Past {
        double time;
        double weight;
    };

    const HawkesModel* model_;
    std::size_t d_;
    double time_ = 0.0;
    std::vector<double> decayed_;       // d×d, exponential entries only
    std::vector<std::vector<Past>> history_;  // per source dim, power-law columns only
    std::vector<char> keep_history_;
    std::vector<std::size_t> first_live_;  // d×d start index into history_[j]
    std::vector<double> window_;           // d×d truncation lag
};

}  // namespace mmsim::hawkes
