#include "mmsim/hawkes/link.hpp"

#include "mmsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace mmsim::hawkes {

LinkFunction LinkFunction::positive_part(double floor) {
    if (!(floor >= 0.0) || !std::isfinite(floor))
        throw ConfigError(fmt::format("positive-part floor must be >= 0, got {}", floor));
    return LinkFunction{PositivePartLink{floor}};
}

LinkFunction LinkFunction::saturated_linear(double cap) {
    if (!(cap > 0.0) || !std::isfinite(cap))
        throw ConfigError(fmt::format("saturation cap must be > 0, got {}", cap));
    return LinkFunction{SaturatedLinearLink{cap}};
}

std::string_view LinkFunction::name() const noexcept {
    switch (v_.index()) {
        case 0: return "identity";
        case 1: return "positive_part";
        default: return "saturated_linear";
    }
}

double LinkFunction::operator()(double x) const noexcept {
    if (const auto* p = std::get_if<PositivePartLink>(&v_)) return std::max(x, p->floor);
    if (const auto* s = std::get_if<SaturatedLinearLink>(&v_)) return std::clamp(x, 0.0, s->cap);
    return x;
}

}  // namespace mmsim::hawkes
