#include "mmsim/diagnostics/acf.hpp"

#include "mmsim/error.hpp"

#include <fmt/format.h>

namespace mmsim::diagnostics {

std::vector<double> acf(std::span<const double> series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (n <= max_lag) throw DataError(fmt::format("series of length {} is too short for lag {}", n, max_lag));
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double c0 = 0.0;
    for (double v : series) c0 += (v - mean) * (v - mean);
    if (!(c0 > 0.0)) throw DataError("autocorrelation of a constant series is undefined");
    std::vector<double> out(max_lag + 1);
    out[0] = 1.0;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        double c = 0.0;
        for (std::size_t t = lag; t < n; ++t) c += (series[t] - mean) * (series[t - lag] - mean);
        out[lag] = c / c0;
    }
    return out;
}

}  // namespace mmsim::diagnostics
