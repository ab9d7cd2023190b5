#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mmsim::diagnostics {

/// Sample autocorrelation for lags 0..max_lag with the biased 1/n
/// normalization. Throws DataError when the series is not longer than
/// max_lag or has zero variance.
std::vector<double> acf(std::span<const double> series, std::size_t max_lag);

}  // namespace mmsim::diagnostics
