#include "mmsim/hawkes/stability.hpp"

#include "mmsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace mmsim::hawkes {

namespace {

constexpr int kMaxPowerIterations = 10'000;
constexpr double kPowerTolerance = 1e-12;

double radius_2x2(const Eigen::MatrixXd& g) {
    // λ² − tr λ + det = 0; the discriminant (a−d)² + 4bc is ≥ 0 for
    // non-negative entries, so the Perron root is the larger real root.
    const double a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    const double half_tr = 0.5 * (a + d);
    const double disc = 0.25 * (a - d) * (a - d) + b * c;
    return half_tr + std::sqrt(std::max(disc, 0.0));
}

}  // namespace

Eigen::MatrixXd excitation_matrix(const HawkesModel& model) {
    const std::size_t d = model.dimension();
    Eigen::MatrixXd g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            g(i, j) = model.marks(j).excitation_mean() * model.kernel(i, j).integral();
    return g;
}

double spectral_radius(const Eigen::MatrixXd& g) {
    if (g.rows() != g.cols())
        throw ShapeError(fmt::format("spectral radius needs a square matrix, got {}x{}", g.rows(), g.cols()));
    if (g.size() == 0) throw ShapeError("spectral radius of an empty matrix");
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        const double v = g.data()[k];
        if (!std::isfinite(v) || v < 0.0)
            throw DomainError(fmt::format("spectral radius needs non-negative finite entries, got {}", v));
    }
    const Eigen::Index d = g.rows();
    if (d == 1) return g(0, 0);
    if (d == 2) return radius_2x2(g);

    Eigen::MatrixXd shifted = g + Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(d);
    for (int it = 0; it < kMaxPowerIterations; ++it) {
        Eigen::VectorXd y = shifted * x;
        const Eigen::ArrayXd ratio = y.array() / x.array();
        const double lo = ratio.minCoeff();
        const double hi = ratio.maxCoeff();
        if (hi - lo <= kPowerTolerance * hi) return 0.5 * (lo + hi) - 1.0;
        x = y / y.maxCoeff();
        // Reducible matrices can drive components to zero; the bounds are then
        // no longer informative.
        if (x.minCoeff() < 1e-250) break;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(g, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

StabilityReport stability_check(const HawkesModel& model) {
    const Eigen::MatrixXd g = excitation_matrix(model);
    const double branching = spectral_radius(g);
    double rho = branching;
    if (!model.all_identity_links()) {
        Eigen::VectorXd lip(model.dimension());
        for (std::size_t i = 0; i < model.dimension(); ++i) lip(i) = model.link(i).lipschitz();
        rho = spectral_radius(lip.asDiagonal() * g);
    }
    return {rho < 1.0, rho, branching};
}

Eigen::VectorXd stationary_mean_intensity(const HawkesModel& model) {
    const StabilityReport report = stability_check(model);
    if (!report.stable)
        throw StabilityError(
            fmt::format("no stationary mean intensity: spectral radius rho(LG) = {:.6g} >= 1", report.rho),
            report.rho);
    const Eigen::Index d = static_cast<Eigen::Index>(model.dimension());
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(d, d) - excitation_matrix(model);
    Eigen::VectorXd mu(d);
    for (Eigen::Index i = 0; i < d; ++i) mu(i) = model.baseline(static_cast<std::size_t>(i));
    return a.partialPivLu().solve(mu);
}

}  // namespace mmsim::hawkes
