#pragma once

#include "mmsim/diagnostics/ks.hpp"
#include "mmsim/hawkes/event_stream.hpp"
#include "mmsim/hawkes/fit.hpp"
#include "mmsim/hawkes/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mmsim::diagnostics {

struct DiagnosticsReport {
    std::vector<double> residuals;
    std::vector<double> uniforms;
    double ks_stat;
    double ks_pvalue;
    std::vector<double> acf;
    std::vector<std::pair<double, double>> qq;
    double aic;
    /// Diagnosed dimension; absent when residuals of all dimensions are pooled.
    std::optional<std::size_t> dimension;
};

struct DiagnoseOptions {
    std::optional<std::size_t> dimension;
    std::size_t max_lag = 20;
};

/// Number of free parameters of a linear model: d baselines plus the
/// parameters of each non-zero kernel.
std::size_t free_parameter_count(const hawkes::HawkesModel& model);

/// Residual diagnostics of a model on a stream. The ACF is truncated to
/// residuals − 1 lags and left empty for fewer than two residuals or zero
/// variance. AIC uses free_parameter_count.
DiagnosticsReport diagnose(const hawkes::HawkesModel& model, const hawkes::EventStream& stream,
                           const DiagnoseOptions& opts = {});

/// Same, with the fit's AIC.
DiagnosticsReport diagnose(const hawkes::FitResult& fit, const hawkes::EventStream& stream,
                           const DiagnoseOptions& opts = {});

struct ComparisonRow {
    std::string name;
    double nll_per_event;
    double ks_stat;
    double acf1;  ///< lag-1 ACF of the pooled residuals
    double aic;
};

/// One row per fit, sorted by AIC then name. Throws DataError when a fit's
/// horizon or event count differs from the stream.
std::vector<ComparisonRow> compare_models(const std::vector<hawkes::FitResult>& fits,
                                          const hawkes::EventStream& stream);

}  // namespace mmsim::diagnostics
