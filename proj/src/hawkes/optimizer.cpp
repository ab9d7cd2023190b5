#include "mmsim/hawkes/optimizer.hpp"

#include "mmsim/error.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mmsim::hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe(double v) { return std::isfinite(v) ? v : kInf; }

bool small_spread(double best, double worst, double tol) {
    return std::abs(worst - best) <= tol * (std::abs(best) + 1e-12);
}

OptimizerResult simplex(const Objective& f, const std::vector<double>& x0, std::size_t budget,
                        const OptimizerOptions& opts) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> val(n + 1);
    for (std::size_t k = 0; k < n; ++k) pts[k + 1][k] += opts.initial_step;
    for (std::size_t k = 0; k <= n; ++k) val[k] = safe(f(pts[k]));

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    std::size_t it = 0;
    bool converged = false;
    for (; it < budget; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
        if (std::isfinite(val[worst]) && small_spread(val[best], val[worst], opts.tolerance)) {
            converged = true;
            break;
        }
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k <= n; ++k)
            if (k != worst)
                for (std::size_t c = 0; c < n; ++c) centroid[c] += pts[k][c] / static_cast<double>(n);

        auto along = [&](double coef, std::vector<double>& out) {
            for (std::size_t c = 0; c < n; ++c) out[c] = centroid[c] + coef * (pts[worst][c] - centroid[c]);
            return safe(f(out));
        };
        const double fr = along(-1.0, trial);
        if (fr < val[best]) {
            const double fe = along(-2.0, trial2);
            if (fe < fr) {
                pts[worst] = trial2;
                val[worst] = fe;
            } else {
                pts[worst] = trial;
                val[worst] = fr;
            }
            continue;
        }
        if (fr < val[second]) {
            pts[worst] = trial;
            val[worst] = fr;
            continue;
        }
        // Outside contraction when the reflection beat the worst, inside otherwise.
        const bool outside = fr < val[worst];
        const double fc = along(outside ? -0.5 : 0.5, trial2);
        if (fc < (outside ? fr : val[worst])) {
            pts[worst] = trial2;
            val[worst] = fc;
            continue;
        }
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == best) continue;
            for (std::size_t c = 0; c < n; ++c) pts[k][c] = pts[best][c] + 0.5 * (pts[k][c] - pts[best][c]);
            val[k] = safe(f(pts[k]));
        }
    }
    const std::size_t best = static_cast<std::size_t>(std::min_element(val.begin(), val.end()) - val.begin());
    return {pts[best], val[best], it, converged};
}

}  // namespace

OptimizerResult nelder_mead(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts) {
    if (x0.empty()) throw ConfigError("nelder_mead needs at least one parameter");
    OptimizerResult first = simplex(f, x0, opts.max_iterations, opts);
    if (!std::isfinite(first.fx)) return first;
    if (!first.converged) return first;
    // Restart from the optimum to guard against a collapsed simplex.
    const std::size_t left = opts.max_iterations - std::min(first.iterations, opts.max_iterations);
    if (left == 0) return first;
    OptimizerResult second = simplex(f, first.x, left, opts);
    second.iterations += first.iterations;
    if (!(second.fx < first.fx)) {
        first.iterations = second.iterations;
        first.converged = second.converged;
        return first;
    }
    return second;
}

OptimizerResult bfgs(const GradientObjective& f, std::vector<double> x0, const OptimizerOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0) throw ConfigError("bfgs needs at least one parameter");
    using Vec = Eigen::VectorXd;
    auto eval = [&](const Vec& x, Vec& g) {
        std::vector<double> xv(x.data(), x.data() + n), gv(n, 0.0);
        const double v = f(xv, gv);
        g = Eigen::Map<Vec>(gv.data(), static_cast<Eigen::Index>(n));
        return v;
    };
    Vec x = Eigen::Map<Vec>(x0.data(), static_cast<Eigen::Index>(n));
    Vec g(n);
    double fx = eval(x, g);
    if (!std::isfinite(fx) || !g.allFinite()) return {x0, safe(fx), 0, false};
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

    std::size_t it = 0;
    bool converged = false;
    Vec g_new(n);
    for (; it < opts.max_iterations; ++it) {
        if (g.norm() <= 1e-12 * (1.0 + std::abs(fx))) {
            converged = true;
            break;
        }
        Vec p = -h * g;
        double slope = g.dot(p);
        if (!(slope < 0.0)) {
            h.setIdentity();
            p = -g;
            slope = -g.squaredNorm();
        }
        double step = 1.0;
        Vec x_new = x;
        double f_new = kInf;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = x + step * p;
            f_new = eval(x_new, g_new);
            if (std::isfinite(f_new) && g_new.allFinite() && f_new <= fx + 1e-4 * step * slope) break;
            step *= 0.5;
            f_new = kInf;
        }
        if (!std::isfinite(f_new)) {
            converged = small_spread(fx, fx, opts.tolerance) && g.norm() < 1e-6 * (1.0 + std::abs(fx));
            break;
        }
        const Vec s = x_new - x;
        const Vec y = g_new - g;
        const double improvement = fx - f_new;
        x = x_new;
        g = g_new;
        const double prev = fx;
        fx = f_new;
        if (improvement <= opts.tolerance * (std::abs(prev) + 1e-12)) {
            converged = true;
            ++it;
            break;
        }
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const double r = 1.0 / sy;
            const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(h.rows(), h.cols());
            h = (eye - r * s * y.transpose()) * h * (eye - r * y * s.transpose()) + r * s * s.transpose();
        }
    }
    return {std::vector<double>(x.data(), x.data() + n), fx, it, converged};
}

}  // namespace mmsim::hawkes
