#pragma once

#include "mmsim/hawkes/event_stream.hpp"
#include "mmsim/hawkes/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mmsim::diagnostics {

/// τ_k = Λ_i(T_k) − Λ_i(T_{k−1}) over the events of dimension i, with
/// Λ_i(T_0) = 0. Empty when the dimension has no events.
std::vector<double> rescaled_residuals(const hawkes::HawkesModel& model, const hawkes::EventStream& stream,
                                       std::size_t i);

/// Residuals of every dimension, concatenated in dimension order.
std::vector<double> rescaled_residuals(const hawkes::HawkesModel& model, const hawkes::EventStream& stream);

/// U_k = 1 − e^{−τ_k}. Throws DomainError for negative or NaN input.
std::vector<double> uniform_residuals(std::span<const double> tau);

}  // namespace mmsim::diagnostics
