#include "gausspm/qcs.hpp"

#include <cmath>

namespace gausspm {

const char* to_string(QcsMethod m) {
    switch (m) {
        case QcsMethod::gaussian_closed_form: return "gaussian-closed-form";
        case QcsMethod::moment_engine: return "moment-engine";
        case QcsMethod::pure_state_total_noise: return "pure-state-total-noise";
    }
    return "unknown";
}

QcsReport qcs_gaussian(const GaussianState& state) {
    return {state.inverse_covariance().trace() / (2.0 * state.modes()),
            QcsMethod::gaussian_closed_form, std::nullopt};
}

QcsReport qcs_photon_tuned(const PhotonTunedState& ps) {
    const int n = ps.modes();
    const RMat omega = symplectic_form(n);
    const GaussianWeight weight(omega * ps.mother().covariance() * omega.transpose(),
                                RVec::Zero(2 * n));
    const PolyExpr p = ps.char_prefactor().to_poly();
    const PolyExpr p2 = poly_product(p, p.conjugate());
    const cplx norm2 = integrate_poly_gaussian(p2, weight);
    const cplx moment2 = integrate_poly_gaussian(poly_product(PolyExpr::squared_norm(2 * n), p2), weight);
    return {moment2.real() / (n * norm2.real()), QcsMethod::moment_engine, std::nullopt};
}

QcsReport qcs_pure_total_noise(const std::vector<double>& mode_noise) {
    if (mode_noise.empty()) throw DomainError("total noise needs at least one mode");
    double sum = 0.0;
    for (double v : mode_noise) sum += v;
    return {sum / static_cast<double>(mode_noise.size()), QcsMethod::pure_state_total_noise,
            std::nullopt};
}

double relative_gain(const PhotonTunedState& ps) {
    const double mother = qcs_gaussian(ps.mother()).qcs_squared;
    return (qcs_photon_tuned(ps).qcs_squared - mother) / mother;
}

double qcs_closed_form_sqth(double q, double r, Sign sign) {
    if (!(q >= 0.0 && q < 1.0) || !(r >= 0.0) || !std::isfinite(r)) {
        throw DomainError("squeezed thermal parameters need 0 <= q < 1 and r >= 0");
    }
    if (sign == Sign::subtract && q == 0.0 && r == 0.0) {
        throw AnnihilatingSubtraction("AnnihilatingSubtraction: a|0> = 0, C^2 undefined",
                                      CVec());
    }
    const double c2 = std::cosh(2.0 * r);
    const double q2 = q * q, q3 = q2 * q, q4 = q2 * q2;
    if (sign == Sign::add) {
        const double s2 = std::sinh(2.0 * r);
        const double den = 2.0 * (1.0 - q4) * c2 + 2.0 * (1.0 + q2) * (1.0 + q2) +
                           (q4 + 10.0 * q2 + 1.0) * s2 * s2;
        const double num = -8.0 * q * (q2 - 1.0) +
                           3.0 * (q4 - 4.0 * q3 + 10.0 * q2 - 4.0 * q + 1.0) * c2 * c2 * c2 +
                           6.0 * (q - 1.0) * (q - 1.0) * (1.0 - q2) * c2 * c2 +
                           (3.0 * q4 + 8.0 * q3 - 26.0 * q2 + 8.0 * q + 3.0) * c2;
        return (1.0 - q) / (1.0 + q) * num / den;
    }
    const double c4 = std::cosh(4.0 * r);
    const double c6 = std::cosh(6.0 * r);
    const double den = 2.0 * (q + 1.0) *
                       (4.0 * (q4 - 1.0) * c2 + 3.0 * q4 - 2.0 * q2 +
                        (q4 + 10.0 * q2 + 1.0) * c4 + 3.0);
    const double num = 12.0 * (q + 1.0) * std::pow(q - 1.0, 3) * c4 +
                       (21.0 * q4 - 4.0 * q3 - 14.0 * q2 - 4.0 * q + 21.0) * c2 +
                       3.0 * (1.0 - 4.0 * q + 10.0 * q2 - 4.0 * q3 + q4) * c6 +
                       4.0 * (q + 1.0) * (3.0 * q2 + 2.0 * q + 3.0) * (q - 1.0);
    return (1.0 - q) * num / den;
}

double relative_gain_limit_sqth(double q) {
    if (!(q >= 0.0 && q < 1.0)) throw DomainError("q must lie in [0, 1)");
    const double q2 = q * q;
    return 2.0 - 12.0 * q * (q2 + 1.0) / (q2 * q2 + 10.0 * q2 + 1.0);
}

double purity_half_life(double qcs_squared, double n_bar_env, double t_relax) {
    if (!(n_bar_env >= 0.0) || !(t_relax > 0.0)) {
        throw DomainError("half-life needs n_bar_env >= 0 and t_relax > 0");
    }
    const double denom = (2.0 * n_bar_env + 1.0) * qcs_squared - 1.0;
    if (!(denom > 0.0)) {
        throw DomainError("half-life estimate requires (2 n_bar_env + 1) C^2 > 1");
    }
    return 0.5 * t_relax / denom;
}

}  // namespace gausspm
