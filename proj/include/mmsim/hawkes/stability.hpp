#pragma once

#include "mmsim/hawkes/model.hpp"

#include <Eigen/Dense>

namespace mmsim::hawkes {

/// G_ij = m_j · ∫φ_ij, where m_j is the excitation mean of dimension j's marks
/// (1 when normalize_excitation is set).
Eigen::MatrixXd excitation_matrix(const HawkesModel& model);

/// Largest eigenvalue modulus of a non-negative square matrix.
///
/// d ≤ 2 uses the characteristic polynomial directly. Larger matrices use
/// power iteration on G + I from the all-ones vector (the shift keeps the
/// Perron root strictly dominant even for periodic G), stopping when the
/// Collatz-Wielandt bounds agree to 1e-12 relative or after 10 000 steps.
/// Non-convergence falls back to a dense eigen-decomposition.
///
/// Throws ShapeError for non-square input and DomainError for negative or
/// non-finite entries.
double spectral_radius(const Eigen::MatrixXd& g);

struct StabilityReport {
    bool stable;
    double rho;        ///< ρ(LG)
    double branching;  ///< ρ(G)
};

StabilityReport stability_check(const HawkesModel& model);

/// Λ̄ = (I − G)^{-1} μ. Throws StabilityError when ρ(LG) ≥ 1.
Eigen::VectorXd stationary_mean_intensity(const HawkesModel& model);

}  // namespace mmsim::hawkes
