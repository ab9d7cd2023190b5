#include "mmsim/hawkes/model.hpp"

#include "mmsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace mmsim::hawkes {

HawkesModel::HawkesModel(std::vector<double> mu, std::vector<Kernel> kernels,
                         std::vector<MarkDistribution> marks, std::vector<LinkFunction> links)
    : mu_(std::move(mu)), kernels_(std::move(kernels)), marks_(std::move(marks)), links_(std::move(links)) {
    const std::size_t d = mu_.size();
    if (d == 0) throw ConfigError("Hawkes model needs at least one dimension");
    for (std::size_t i = 0; i < d; ++i) {
        if (!(mu_[i] > 0.0) || !std::isfinite(mu_[i]))
            throw ConfigError(fmt::format("baseline mu[{}] must be > 0, got {}", i, mu_[i]));
    }
    if (kernels_.size() != d * d)
        throw ConfigError(fmt::format("kernel matrix must be {}x{}, got {} entries", d, d, kernels_.size()));
    if (marks_.size() != d)
        throw ConfigError(fmt::format("expected {} mark distributions, got {}", d, marks_.size()));
    if (links_.size() != d)
        throw ConfigError(fmt::format("expected {} link functions, got {}", d, links_.size()));
}

HawkesModel::HawkesModel(std::vector<double> mu, std::vector<Kernel> kernels)
    : HawkesModel(mu, std::move(kernels), std::vector<MarkDistribution>(mu.size()),
                  std::vector<LinkFunction>(mu.size())) {}

HawkesModel HawkesModel::univariate(double mu, Kernel kernel, MarkDistribution marks, LinkFunction link) {
    return HawkesModel({mu}, {kernel}, {marks}, {link});
}

const Kernel& HawkesModel::kernel(std::size_t i, std::size_t j) const {
    const std::size_t d = dimension();
    if (i >= d || j >= d) throw std::out_of_range(fmt::format("kernel index ({}, {}) out of range", i, j));
    return kernels_[i * d + j];
}

std::span<const Kernel> HawkesModel::kernel_row(std::size_t i) const {
    const std::size_t d = dimension();
    if (i >= d) throw std::out_of_range(fmt::format("kernel row {} out of range", i));
    return std::span<const Kernel>(kernels_).subspan(i * d, d);
}

bool HawkesModel::all_identity_links() const noexcept {
    return std::all_of(links_.begin(), links_.end(), [](const LinkFunction& l) { return l.is_identity(); });
}

HawkesModel HawkesModel::with_parameters(std::vector<double> mu, std::vector<Kernel> kernels) const {
    return HawkesModel(std::move(mu), std::move(kernels), marks_, links_);
}

}  // namespace mmsim::hawkes
