#pragma once

#include <string_view>
#include <variant>

namespace mmsim::hawkes {

struct IdentityLink {
    friend bool operator==(const IdentityLink&, const IdentityLink&) = default;
};

/// ψ(x) = max(x, floor)
struct PositivePartLink {
    double floor;
    friend bool operator==(const PositivePartLink&, const PositivePartLink&) = default;
};

/// ψ(x) = min(max(x, 0), cap)
struct SaturatedLinearLink {
    double cap;
    friend bool operator==(const SaturatedLinearLink&, const SaturatedLinearLink&) = default;
};

/// Non-decreasing link ψ_i applied to the linear excitation sum. All three
/// variants are 1-Lipschitz; lipschitz() reports the constant used by the
/// ρ(LG) stability check.
class LinkFunction {
public:
    using Variant = std::variant<IdentityLink, PositivePartLink, SaturatedLinearLink>;

    LinkFunction() = default;

    static LinkFunction identity() { return LinkFunction{}; }
    static LinkFunction positive_part(double floor);
    static LinkFunction saturated_linear(double cap);

    const Variant& variant() const noexcept { return v_; }
    bool is_identity() const noexcept { return v_.index() == 0; }
    std::string_view name() const noexcept;

    double operator()(double x) const noexcept;
    double lipschitz() const noexcept { return 1.0; }

    friend bool operator==(const LinkFunction&, const LinkFunction&) = default;

private:
    explicit LinkFunction(Variant v) : v_(v) {}
    Variant v_{IdentityLink{}};
};

}  // namespace mmsim::hawkes
