#include "mmsim/diagnostics/report.hpp"

#include "mmsim/diagnostics/acf.hpp"
#include "mmsim/diagnostics/residuals.hpp"
#include "mmsim/error.hpp"
#include "mmsim/hawkes/likelihood.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <limits>

namespace mmsim::diagnostics {

namespace {

std::vector<double> safe_acf(const std::vector<double>& r, std::size_t max_lag) {
    if (r.size() < 2) return {};
    try {
        return acf(r, std::min(max_lag, r.size() - 1));
    } catch (const DataError&) {
        return {};
    }
}

DiagnosticsReport build(const hawkes::HawkesModel& model, const hawkes::EventStream& stream,
                        const DiagnoseOptions& opts, double aic) {
    DiagnosticsReport rep;
    rep.dimension = opts.dimension;
    if (opts.dimension && *opts.dimension >= model.dimension())
        throw ConfigError(fmt::format("dimension {} out of range (d = {})", *opts.dimension, model.dimension()));
    rep.residuals = opts.dimension ? rescaled_residuals(model, stream, *opts.dimension)
                                   : rescaled_residuals(model, stream);
    rep.uniforms = uniform_residuals(rep.residuals);
    if (rep.residuals.empty()) throw DataError("no events to diagnose");
    const KsResult ks = ks_statistic(rep.residuals, Reference::Exponential1);
    rep.ks_stat = ks.statistic;
    rep.ks_pvalue = ks.p_value;
    rep.acf = safe_acf(rep.residuals, opts.max_lag);
    rep.qq = qq_pairs(rep.residuals, Reference::Exponential1);
    rep.aic = aic;
    return rep;
}

}  // namespace

std::size_t free_parameter_count(const hawkes::HawkesModel& model) {
    std::size_t k = model.dimension();
    for (const hawkes::Kernel& kernel : model.kernels()) {
        switch (kernel.family()) {
            case hawkes::KernelFamily::Zero: break;
            case hawkes::KernelFamily::Exponential: k += 2; break;
            case hawkes::KernelFamily::PowerLaw: k += 3; break;
        }
    }
    return k;
}

DiagnosticsReport diagnose(const hawkes::HawkesModel& model, const hawkes::EventStream& stream,
                           const DiagnoseOptions& opts) {
    const double ll = hawkes::log_likelihood(model, stream);
    return build(model, stream, opts, 2.0 * static_cast<double>(free_parameter_count(model)) - 2.0 * ll);
}

DiagnosticsReport diagnose(const hawkes::FitResult& fit, const hawkes::EventStream& stream,
                           const DiagnoseOptions& opts) {
    return build(fit.model, stream, opts, fit.aic);
}

std::vector<ComparisonRow> compare_models(const std::vector<hawkes::FitResult>& fits,
                                          const hawkes::EventStream& stream) {
    std::vector<ComparisonRow> rows;
    for (const hawkes::FitResult& fit : fits) {
        if (fit.horizon != stream.horizon() || fit.event_count != stream.size())
            throw DataError(fmt::format("fit '{}' was made on horizon {} with {} events, stream has {} and {}",
                                        fit.name, fit.horizon, fit.event_count, stream.horizon(), stream.size()));
        const std::vector<double> r = rescaled_residuals(fit.model, stream);
        const double ks = r.empty() ? std::numeric_limits<double>::quiet_NaN()
                                    : ks_statistic(r, Reference::Exponential1).statistic;
        const std::vector<double> a = safe_acf(r, 1);
        rows.push_back({fit.name, fit.nll_per_event, ks,
                        a.size() > 1 ? a[1] : std::numeric_limits<double>::quiet_NaN(), fit.aic});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
        if (a.aic != b.aic) return a.aic < b.aic;
        return a.name < b.name;
    });
    return rows;
}

}  // namespace mmsim::diagnostics
