#pragma once

#include "mmsim/hawkes/rng.hpp"

#include <string_view>
#include <variant>

namespace mmsim::hawkes {

/// log V ~ N(log_mean, log_sd²)
struct LogNormalMarks {
    double log_mean;
    double log_sd;
    friend bool operator==(const LogNormalMarks&, const LogNormalMarks&) = default;
};

struct ExponentialMarks {
    double rate;
    friend bool operator==(const ExponentialMarks&, const ExponentialMarks&) = default;
};

struct DeterministicMarks {
    double value;
    friend bool operator==(const DeterministicMarks&, const DeterministicMarks&) = default;
};

/// Per-dimension i.i.d. mark law ν_i.
///
/// When normalize_excitation is set, the mark that enters the intensity sum is
/// v / mean(), so excitation sees unit-mean marks while the raw value keeps
/// its scale for order volumes.
class MarkDistribution {
public:
    using Variant = std::variant<DeterministicMarks, ExponentialMarks, LogNormalMarks>;

    /// Unit deterministic marks with normalization on.
    MarkDistribution() = default;

    static MarkDistribution deterministic(double value, bool normalize_excitation = true);
    static MarkDistribution exponential(double rate, bool normalize_excitation = true);
    static MarkDistribution log_normal(double log_mean, double log_sd, bool normalize_excitation = true);

    const Variant& variant() const noexcept { return v_; }
    bool normalize_excitation() const noexcept { return normalize_; }
    std::string_view name() const noexcept;

    double mean() const noexcept;

    /// Mean of the mark as seen by the intensity: 1 when normalizing.
    double excitation_mean() const noexcept { return normalize_ ? 1.0 : mean(); }

    /// The weight an observed mark v contributes to the intensity sum.
    double excitation_weight(double v) const noexcept { return normalize_ ? v / mean() : v; }

    double sample(Rng& rng) const;

    friend bool operator==(const MarkDistribution&, const MarkDistribution&) = default;

private:
    MarkDistribution(Variant v, bool normalize) : v_(v), normalize_(normalize) {}
    Variant v_{DeterministicMarks{1.0}};
    bool normalize_ = true;
};

}  // namespace mmsim::hawkes
