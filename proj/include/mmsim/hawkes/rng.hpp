#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace mmsim::hawkes {

/// Mix a root seed with a stream label into an independent 64-bit seed.
///
/// The label is hashed with 64-bit FNV-1a, then
///   derive_seed(root, label) = splitmix64(splitmix64(root) ^ fnv1a(label)).
/// Deterministic on every platform; distinct labels give distinct seeds with
/// overwhelming probability. All module streams derive from one root seed
/// through fixed labels ("times", "marks/0", "bootstrap/17", ...).
std::uint64_t derive_seed(std::uint64_t root, std::string_view label);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seeded generator owned by a single simulation run. Wraps mt19937_64, whose
/// output sequence is fixed by the standard; uniform and exponential draws are
/// computed here so they do not depend on library distribution internals.
class Rng {
public:
    using engine_type = std::mt19937_64;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t root, std::string_view label) : Rng(derive_seed(root, label)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    double exponential(double rate) { return -std::log(uniform_open()) / rate; }

    double normal() { return normal_(engine_); }

    std::uint64_t poisson(double mean);

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }

    engine_type& engine() noexcept { return engine_; }

private:
    engine_type engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mmsim::hawkes
