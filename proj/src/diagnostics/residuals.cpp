#include "mmsim/diagnostics/residuals.hpp"

#include "mmsim/error.hpp"
#include "mmsim/hawkes/likelihood.hpp"

#include <cmath>
#include <fmt/format.h>

namespace mmsim::diagnostics {

std::vector<double> rescaled_residuals(const hawkes::HawkesModel& model, const hawkes::EventStream& stream,
                                       std::size_t i) {
    std::vector<double> tau;
    if (stream.empty()) return tau;
    const std::vector<double> path = hawkes::compensator_path(model, stream, i);
    double prev = 0.0;
    for (std::size_t k = 0; k < stream.size(); ++k) {
        if (stream[k].dim != i) continue;
        tau.push_back(path[k] - prev);
        prev = path[k];
    }
    return tau;
}

std::vector<double> rescaled_residuals(const hawkes::HawkesModel& model, const hawkes::EventStream& stream) {
    std::vector<double> all;
    for (std::size_t i = 0; i < model.dimension(); ++i) {
        const std::vector<double> tau = rescaled_residuals(model, stream, i);
        all.insert(all.end(), tau.begin(), tau.end());
    }
    return all;
}

std::vector<double> uniform_residuals(std::span<const double> tau) {
    std::vector<double> u;
    u.reserve(tau.size());
    for (std::size_t k = 0; k < tau.size(); ++k) {
        if (!(tau[k] >= 0.0)) throw DomainError(fmt::format("residual {} is negative ({})", k, tau[k]));
        u.push_back(-std::expm1(-tau[k]));
    }
    return u;
}

}  // namespace mmsim::diagnostics
