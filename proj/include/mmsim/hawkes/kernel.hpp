#pragma once

#include <string_view>
#include <variant>

namespace mmsim::hawkes {

enum class KernelFamily { Zero, Exponential, PowerLaw };

std::string_view to_string(KernelFamily family);
KernelFamily kernel_family_from_string(std::string_view name);

/// φ(u) = α e^{-βu}
struct ExponentialKernel {
    double alpha;
    double beta;
    friend bool operator==(const ExponentialKernel&, const ExponentialKernel&) = default;
};

/// φ(u) = α (1 + u/c)^{-γ}, γ > 1
struct PowerLawKernel {
    double alpha;
    double cutoff;
    double exponent;
    friend bool operator==(const PowerLawKernel&, const PowerLawKernel&) = default;
};

struct ZeroKernel {
    friend bool operator==(const ZeroKernel&, const ZeroKernel&) = default;
};

/// Excitation kernel φ_ij. The per-unit-mark response of dimension i to an
/// event in dimension j. Every constructible value has a finite integral.
class Kernel {
public:
    using Variant = std::variant<ZeroKernel, ExponentialKernel, PowerLawKernel>;

    Kernel() = default;

    static Kernel zero() { return Kernel{}; }
    static Kernel exponential(double alpha, double beta);
    static Kernel power_law(double alpha, double cutoff, double exponent);

    const Variant& variant() const noexcept { return v_; }
    KernelFamily family() const noexcept;
    bool is_zero() const noexcept { return family() == KernelFamily::Zero; }

    /// φ(u); throws DomainError for u < 0 or NaN.
    double operator()(double u) const;

    /// ∫_0^∞ φ(u) du in closed form.
    double integral() const noexcept;

    /// ∫_0^u φ(s) ds in closed form; u may be +inf.
    double integral_to(double u) const;

    /// Smallest lag beyond which φ(u) < rel_tol · φ(0). Infinite for the zero
    /// kernel is never needed, so it returns 0 there.
    double negligible_after(double rel_tol) const noexcept;

    friend bool operator==(const Kernel&, const Kernel&) = default;

private:
    explicit Kernel(Variant v) : v_(v) {}
    Variant v_{ZeroKernel{}};
};

inline double kernel_eval(const Kernel& k, double u) { return k(u); }
inline double kernel_integral(const Kernel& k) noexcept { return k.integral(); }

}  // namespace mmsim::hawkes
