#pragma once

#include "mmsim/hawkes/event_stream.hpp"
#include "mmsim/hawkes/model.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mmsim::hawkes {

/// Marked form of the exponential recursion over one dimension's events:
///   R(t_1) = 0,  R(t_{k+1}) = e^{-β(t_{k+1} − t_k)} (w_k + R(t_k)).
/// With unit weights this is Σ_{j<k} e^{-β(t_k − t_j)}.
/// Throws DataError for unsorted times, DomainError for β ≤ 0.
std::vector<double> excitation_state(std::span<const double> times, std::span<const double> weights,
                                     double beta);

/// Projection of `stream` onto `dim`, weights from `marks.excitation_weight`.
std::vector<double> excitation_state(const EventStream& stream, double beta, std::size_t dim,
                                     const MarkDistribution& marks = {});

/// Power-law intensity sums switch to a truncated history above this size.
inline constexpr std::size_t kPowerLawTruncationThreshold = 10'000;
/// Relative kernel value below which a truncated power-law term is dropped.
inline constexpr double kPowerLawTruncationTolerance = 1e-12;

struct LogLikelihood {
    double value;
    /// Set when an observed event had zero intensity (value is then −inf).
    std::optional<std::string> diagnostic;
};

/// ℓ = Σ_i [ Σ_{k: dim k = i} log λ*_i(t_k) − Λ_i(T) ], T = stream horizon.
/// O(n·d) for exponential kernels; power-law rows are O(n²).
LogLikelihood evaluate_log_likelihood(const HawkesModel& model, const EventStream& stream);

/// Contribution of dimension i only (depends on row i of the kernel matrix).
LogLikelihood evaluate_log_likelihood(const HawkesModel& model, const EventStream& stream, std::size_t i);

inline double log_likelihood(const HawkesModel& model, const EventStream& stream) {
    return evaluate_log_likelihood(model, stream).value;
}

/// Λ_i(t) = ∫_0^t λ*_i(s) ds. Closed form for identity links; nonlinear links
/// integrate ψ_i numerically between events. Throws DomainError unless
/// 0 ≤ t ≤ horizon.
double compensator(const HawkesModel& model, const EventStream& stream, std::size_t i, double t);

/// Λ_i(t) for every dimension.
std::vector<double> compensator(const HawkesModel& model, const EventStream& stream, double t);

/// Λ_i at every event time of the stream (all dimensions, stream order),
/// accumulated segment by segment.
std::vector<double> compensator_path(const HawkesModel& model, const EventStream& stream, std::size_t i);

/// ℓ_i and its gradient for a row whose kernels are all exponential with an
/// identity link. Gradient order: μ_i, then (α_ij, β_ij) for j = 0..d−1.
struct RowGradient {
    double value;
    std::vector<double> gradient;
};
RowGradient exponential_row_gradient(const HawkesModel& model, const EventStream& stream, std::size_t i);

}  // namespace mmsim::hawkes
