#pragma once

#include "mmsim/hawkes/kernel.hpp"
#include "mmsim/hawkes/link.hpp"
#include "mmsim/hawkes/marks.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mmsim::hawkes {

/// Full parameterization of a d-dimensional marked Hawkes process:
///
///   λ*_i(t) = ψ_i( μ_i + Σ_j Σ_{T_k^{(j)} < t} w_j(V_k^{(j)}) φ_ij(t − T_k^{(j)}) )
///
/// kernel(i, j) is the influence of dimension j on dimension i and w_j is the
/// excitation weight of dimension j's mark law. Immutable once built.
class HawkesModel {
public:
    /// Throws ConfigError unless every μ_i > 0 and the kernel matrix is d×d
    /// (row-major in `kernels`) with d marks and d links.
    HawkesModel(std::vector<double> mu, std::vector<Kernel> kernels, std::vector<MarkDistribution> marks,
                std::vector<LinkFunction> links);

    /// Unit normalized marks, identity links.
    HawkesModel(std::vector<double> mu, std::vector<Kernel> kernels);

    static HawkesModel univariate(double mu, Kernel kernel, MarkDistribution marks = {},
                                  LinkFunction link = {});

    std::size_t dimension() const noexcept { return mu_.size(); }
    double baseline(std::size_t i) const { return mu_.at(i); }
    std::span<const double> baselines() const noexcept { return mu_; }
    const Kernel& kernel(std::size_t i, std::size_t j) const;
    std::span<const Kernel> kernel_row(std::size_t i) const;
    std::span<const Kernel> kernels() const noexcept { return kernels_; }
    const MarkDistribution& marks(std::size_t i) const { return marks_.at(i); }
    std::span<const MarkDistribution> mark_laws() const noexcept { return marks_; }
    const LinkFunction& link(std::size_t i) const { return links_.at(i); }
    std::span<const LinkFunction> links() const noexcept { return links_; }

    bool all_identity_links() const noexcept;

    /// The same model with different baselines and kernels (validated again).
    HawkesModel with_parameters(std::vector<double> mu, std::vector<Kernel> kernels) const;

    friend bool operator==(const HawkesModel&, const HawkesModel&) = default;

private:
    std::vector<double> mu_;
    std::vector<Kernel> kernels_;
    std::vector<MarkDistribution> marks_;
    std::vector<LinkFunction> links_;
};

}  // namespace mmsim::hawkes
