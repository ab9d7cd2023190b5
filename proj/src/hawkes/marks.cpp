#include "mmsim/hawkes/marks.hpp"

#include "mmsim/error.hpp"

#include <cmath>
#include <fmt/format.h>

namespace mmsim::hawkes {

MarkDistribution MarkDistribution::deterministic(double value, bool normalize_excitation) {
    // Zero would give a zero mean, which neither the excitation matrix nor the
    // normalization can use.
    if (!(value > 0.0) || !std::isfinite(value))
        throw ConfigError(fmt::format("deterministic mark value must be > 0, got {}", value));
    return {DeterministicMarks{value}, normalize_excitation};
}

MarkDistribution MarkDistribution::exponential(double rate, bool normalize_excitation) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw ConfigError(fmt::format("exponential mark rate must be > 0, got {}", rate));
    return {ExponentialMarks{rate}, normalize_excitation};
}

MarkDistribution MarkDistribution::log_normal(double log_mean, double log_sd, bool normalize_excitation) {
    if (!std::isfinite(log_mean))
        throw ConfigError(fmt::format("log-normal log-mean must be finite, got {}", log_mean));
    if (!(log_sd > 0.0) || !std::isfinite(log_sd))
        throw ConfigError(fmt::format("log-normal log-sd must be > 0, got {}", log_sd));
    if (!std::isfinite(std::exp(log_mean + 0.5 * log_sd * log_sd)))
        throw ConfigError("log-normal mark mean overflows");
    return {LogNormalMarks{log_mean, log_sd}, normalize_excitation};
}

std::string_view MarkDistribution::name() const noexcept {
    switch (v_.index()) {
        case 0: return "deterministic";
        case 1: return "exponential";
        default: return "lognormal";
    }
}

double MarkDistribution::mean() const noexcept {
    if (const auto* d = std::get_if<DeterministicMarks>(&v_)) return d->value;
    if (const auto* e = std::get_if<ExponentialMarks>(&v_)) return 1.0 / e->rate;
    const auto& l = std::get<LogNormalMarks>(v_);
    return std::exp(l.log_mean + 0.5 * l.log_sd * l.log_sd);
}

double MarkDistribution::sample(Rng& rng) const {
    if (const auto* d = std::get_if<DeterministicMarks>(&v_)) return d->value;
    if (const auto* e = std::get_if<ExponentialMarks>(&v_)) return rng.exponential(e->rate);
    const auto& l = std::get<LogNormalMarks>(v_);
    return std::exp(l.log_mean + l.log_sd * rng.normal());
}

}  // namespace mmsim::hawkes
