#include "mmsim/hawkes/kernel.hpp"

#include "mmsim/error.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace mmsim::hawkes {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view to_string(KernelFamily family) {
    switch (family) {
        case KernelFamily::Zero: return "zero";
        case KernelFamily::Exponential: return "exponential";
        case KernelFamily::PowerLaw: return "powerlaw";
    }
    return "unknown";
}

KernelFamily kernel_family_from_string(std::string_view name) {
    if (name == "zero" || name == "poisson" || name == "none") return KernelFamily::Zero;
    if (name == "exponential" || name == "exp") return KernelFamily::Exponential;
    if (name == "powerlaw" || name == "power_law" || name == "power-law") return KernelFamily::PowerLaw;
    throw ConfigError(fmt::format("unknown kernel family '{}'", name));
}

Kernel Kernel::exponential(double alpha, double beta) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw ConfigError(fmt::format("exponential kernel needs alpha >= 0, got {}", alpha));
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ConfigError(fmt::format("exponential kernel needs beta > 0, got {}", beta));
    return Kernel{ExponentialKernel{alpha, beta}};
}

Kernel Kernel::power_law(double alpha, double cutoff, double exponent) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw ConfigError(fmt::format("power-law kernel needs alpha >= 0, got {}", alpha));
    if (!(cutoff > 0.0) || !std::isfinite(cutoff))
        throw ConfigError(fmt::format("power-law kernel needs c > 0, got {}", cutoff));
    if (!(exponent > 1.0) || !std::isfinite(exponent))
        throw ConfigError(fmt::format("power-law kernel needs gamma > 1, got {}", exponent));
    return Kernel{PowerLawKernel{alpha, cutoff, exponent}};
}

KernelFamily Kernel::family() const noexcept {
    return std::visit(overloaded{[](const ZeroKernel&) { return KernelFamily::Zero; },
                                 [](const ExponentialKernel&) { return KernelFamily::Exponential; },
                                 [](const PowerLawKernel&) { return KernelFamily::PowerLaw; }},
                      v_);
}

double Kernel::operator()(double u) const {
    if (!(u >= 0.0)) throw DomainError(fmt::format("kernel evaluated at negative lag {}", u));
    return std::visit(
        overloaded{[](const ZeroKernel&) { return 0.0; },
                   [u](const ExponentialKernel& k) { return k.alpha * std::exp(-k.beta * u); },
                   [u](const PowerLawKernel& k) {
                       return k.alpha * std::exp(-k.exponent * std::log1p(u / k.cutoff));
                   }},
        v_);
}

double Kernel::integral() const noexcept {
    return std::visit(overloaded{[](const ZeroKernel&) { return 0.0; },
                                 [](const ExponentialKernel& k) { return k.alpha / k.beta; },
                                 [](const PowerLawKernel& k) {
                                     return k.alpha * k.cutoff / (k.exponent - 1.0);
                                 }},
                      v_);
}

double Kernel::integral_to(double u) const {
    if (!(u >= 0.0)) throw DomainError(fmt::format("kernel integral to negative lag {}", u));
    return std::visit(
        overloaded{[](const ZeroKernel&) { return 0.0; },
                   [u](const ExponentialKernel& k) {
                       return (k.alpha / k.beta) * -std::expm1(-k.beta * u);
                   },
                   [u](const PowerLawKernel& k) {
                       const double mass = k.alpha * k.cutoff / (k.exponent - 1.0);
                       return mass * -std::expm1((1.0 - k.exponent) * std::log1p(u / k.cutoff));
                   }},
        v_);
}

double Kernel::negligible_after(double rel_tol) const noexcept {
    return std::visit(overloaded{[](const ZeroKernel&) { return 0.0; },
                                 [rel_tol](const ExponentialKernel& k) {
                                     return -std::log(rel_tol) / k.beta;
                                 },
                                 [rel_tol](const PowerLawKernel& k) {
                                     return k.cutoff * (std::pow(rel_tol, -1.0 / k.exponent) - 1.0);
                                 }},
                      v_);
}

}  // namespace mmsim::hawkes
