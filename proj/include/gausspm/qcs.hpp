#pragma once

// Quadrature coherence scale C^2 (squared), relative QCS gain and the
// purity half-life estimate.

#include <optional>
#include <vector>

#include "gausspm/photon_ops.hpp"

namespace gausspm {

enum class QcsMethod { gaussian_closed_form, moment_engine, pure_state_total_noise };

const char* to_string(QcsMethod m);

struct QcsReport {
    double qcs_squared = 0.0;
    QcsMethod method = QcsMethod::gaussian_closed_form;
    std::optional<double> relative_gain;
};

/// Tr V^-1 / (2n).
QcsReport qcs_gaussian(const GaussianState& state);

/// ||xi chi||^2 / (n ||chi||^2) with both integrals done exactly on
/// |chi_+-|^2 = |P(xi)|^2 exp(-xi^T Omega V Omega^T xi).
QcsReport qcs_photon_tuned(const PhotonTunedState& ps);

/// Pure states only: C^2 = (1/n) sum_i [Var(x_i) + Var(p_i)], where the
/// variances use the vacuum value 1/2. Takes one (Var x + Var p) per mode.
QcsReport qcs_pure_total_noise(const std::vector<double>& mode_noise);

/// (C^2(rho_+-) - C^2(rho)) / C^2(rho) with rho the Gaussian mother.
double relative_gain(const PhotonTunedState& ps);

/// Closed forms for photon-added / subtracted squeezed thermal states.
/// Throws DomainError outside 0 <= q < 1, r >= 0. Throws
/// AnnihilatingSubtraction at (0, 0, subtract).
double qcs_closed_form_sqth(double q, double r, Sign sign);

/// r -> infinity limit of relative_gain for SqTh+- (both signs agree).
double relative_gain_limit_sqth(double q);

/// tau_P ~ (t_R / 2) / ((2 nbar_env + 1) C^2 - 1); requires the denominator > 0.
double purity_half_life(double qcs_squared, double n_bar_env, double t_relax);

}  // namespace gausspm
