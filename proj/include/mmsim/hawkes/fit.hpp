#pragma once

#include "mmsim/hawkes/event_stream.hpp"
#include "mmsim/hawkes/kernel.hpp"
#include "mmsim/hawkes/model.hpp"
#include "mmsim/hawkes/optimizer.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mmsim::hawkes {

enum class FitMethod { NelderMead, Bfgs };

std::string_view to_string(FitMethod method);
FitMethod fit_method_from_string(std::string_view name);

struct FitOptions {
    FitMethod method = FitMethod::NelderMead;
    std::size_t max_iterations = 2000;
    double tolerance = 1e-9;
    /// Mark laws for the fitted model. Estimated from the stream when absent.
    std::optional<std::vector<MarkDistribution>> marks;
    bool normalize_excitation = true;
};

/// Minimum events per dimension accepted by fit_mle.
inline constexpr std::size_t kMinEventsPerDimension = 10;

struct FitResult {
    std::string name;  ///< "Hawkes-Exp", "Hawkes-PL" or "Poisson"
    HawkesModel model;
    KernelFamily family;
    double loglik;
    double nll_per_event;
    double aic;  ///< 2k − 2·loglik
    std::size_t free_parameters;
    std::vector<std::string> parameter_names;
    std::optional<std::vector<double>> std_errors;
    std::size_t iterations;
    bool converged;
    FitOptions options;
    double horizon;
    std::size_t event_count;
    std::vector<std::string> warnings;
};

/// Display name of a fitted family.
std::string fit_name(KernelFamily family);

/// Maximum-likelihood fit of a linear Hawkes model (identity links) of
/// dimension d. Rows are fitted independently in log-parameter space:
/// μ = e^x, α = e^x, β = e^x, c = e^x, γ = 1 + e^x. The Zero family is the
/// homogeneous Poisson MLE μ_i = n_i / T.
///
/// Throws DataError when a dimension has fewer than kMinEventsPerDimension
/// events and ShapeError when the stream has more than d dimensions.
FitResult fit_mle(const EventStream& stream, KernelFamily family, std::size_t d, const FitOptions& opts = {});

/// Per-dimension mark law estimated from observed marks: deterministic if all
/// equal, log-normal by moment matching of log v if all positive, exponential
/// otherwise. Throws DataError for an empty or all-zero sample.
MarkDistribution fit_marks(const std::vector<double>& marks, bool normalize_excitation = true);

/// Natural-space parameters in parameter_names order: μ_0..μ_{d−1}, then each
/// kernel row-major with its own parameters (α, β) or (α, c, γ).
std::vector<double> parameter_vector(const HawkesModel& model, KernelFamily family);
std::vector<std::string> parameter_names(std::size_t d, KernelFamily family);

}  // namespace mmsim::hawkes
