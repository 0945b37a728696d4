#include "gausspm/states.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "gausspm/qcs.hpp"

namespace gausspm {

GaussianState make_sqth(double q, double r) {
    if (!(q >= 0.0 && q < 1.0) || !(r >= 0.0) || !std::isfinite(r)) {
        throw DomainError("squeezed thermal parameters need 0 <= q < 1 and r >= 0");
    }
    const double nu = (1.0 + q) / (1.0 - q);
    RMat v = RMat::Zero(2, 2);
    v(0, 0) = nu * std::exp(-2.0 * r);
    v(1, 1) = nu * std::exp(2.0 * r);
    return GaussianState(v, RVec::Zero(2));
}

GaussianState make_coherent(const CVec& z) {
    if (z.size() == 0) throw DomainError("coherent state needs at least one mode");
    return GaussianState(RMat::Identity(2 * z.size(), 2 * z.size()),
                         std::numbers::sqrt2 * xi_from_z(z));
}

GaussianState make_product(const std::vector<GaussianState>& factors) {
    if (factors.empty()) throw DomainError("product needs at least one factor");
    int dim = 0;
    for (const auto& f : factors) dim += 2 * f.modes();
    RMat v = RMat::Zero(dim, dim);
    RVec d(dim);
    int at = 0;
    for (const auto& f : factors) {
        const int k = 2 * f.modes();
        v.block(at, at, k, k) = f.covariance();
        d.segment(at, k) = f.displacement();
        at += k;
    }
    return GaussianState(v, d);
}

namespace {

// Real 2n x 2n form of the passive transform a -> u a.
RMat passive(const CMat& u) {
    const Eigen::Index n = u.rows();
    RMat s(2 * n, 2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            s(2 * j, 2 * k) = u(j, k).real();
            s(2 * j, 2 * k + 1) = -u(j, k).imag();
            s(2 * j + 1, 2 * k) = u(j, k).imag();
            s(2 * j + 1, 2 * k + 1) = u(j, k).real();
        }
    }
    return s;
}

CMat random_unitary(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss;
    CMat z(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) z(j, k) = cplx(gauss(rng), gauss(rng));
    }
    return Eigen::HouseholderQR<CMat>(z).householderQ() * CMat::Identity(n, n);
}

}  // namespace

GaussianState random_gaussian_state(std::mt19937_64& rng, int modes, double max_thermal,
                                    double max_squeeze, double max_shift) {
    if (modes < 1) throw DomainError("mode count must be positive");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int dim = 2 * modes;
    RMat thermal = RMat::Zero(dim, dim);
    RMat squeeze = RMat::Zero(dim, dim);
    for (int k = 0; k < modes; ++k) {
        const double nu = 1.0 + max_thermal * unit(rng);
        thermal(2 * k, 2 * k) = thermal(2 * k + 1, 2 * k + 1) = nu;
        const double r = max_squeeze * (2.0 * unit(rng) - 1.0);
        squeeze(2 * k, 2 * k) = std::exp(-r);
        squeeze(2 * k + 1, 2 * k + 1) = std::exp(r);
    }
    const RMat s = passive(random_unitary(rng, modes)) * squeeze *
                   passive(random_unitary(rng, modes));
    RVec d(dim);
    for (int i = 0; i < dim; ++i) d[i] = max_shift * (2.0 * unit(rng) - 1.0);
    RMat v = s * thermal * s.transpose();
    return GaussianState(0.5 * (v + v.transpose()), d);
}

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

ModeVector even_odd_mode(Parity parity) {
    CVec c(2);
    c << 1.0, parity == Parity::even ? 1.0 : -1.0;
    return ModeVector(c / std::numbers::sqrt2);
}

PhotonTunedState make_even_odd(const TwoModeCoherentPlus& s) {
    CVec z(2);
    z << s.alpha, s.alpha;
    return make_photon_tuned(make_coherent(z), Sign::add, even_odd_mode(s.parity));
}

EvenOddScalars even_odd_scalars(const TwoModeCoherentPlus& s) {
    const cplx alpha = s.alpha;
    const double pm = s.parity == Parity::even ? 1.0 : -1.0;
    const CVec c = even_odd_mode(s.parity).coefficients();

    // a^dag(c)|z>: first and second moments in closed form, w = cbar . z.
    const cplx w = std::conj(c[0]) * alpha + std::conj(c[1]) * alpha;
    const double n2 = 1.0 / (1.0 + std::norm(w));
    std::vector<double> noise;
    for (int i = 0; i < 2; ++i) {
        const cplx mean_a = n2 * (alpha * (1.0 + std::norm(w)) + c[i] * w);
        const double mean_n =
            n2 * (std::norm(alpha) * (1.0 + std::norm(w)) + std::norm(c[i]) +
                  2.0 * (std::conj(alpha) * c[i] * w).real());
        // Var x + Var p = 2<n> + 1 - 2|<a>|^2 with vacuum variance 1/2 each.
        noise.push_back(2.0 * mean_n + 1.0 - 2.0 * std::norm(mean_a));
    }
    const double qcs2 = qcs_pure_total_noise(noise).qcs_squared;

    // |psi> ~ phi1 x phi0 +- phi0 x phi1 in the basis phi0 = |alpha>, phi1 = a^dag|alpha>.
    CMat gram(2, 2);
    gram << 1.0, std::conj(alpha), alpha, 1.0 + std::norm(alpha);
    CMat coeff(2, 2);
    coeff << 0.0, pm, 1.0, 0.0;
    const CMat reduced = coeff * gram.transpose() * coeff.adjoint() * gram;
    Eigen::ComplexEigenSolver<CMat> eig(reduced);
    std::vector<double> lambda;
    double total = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double l = std::max(0.0, eig.eigenvalues()[i].real());
        lambda.push_back(l);
        total += l;
    }
    double sqrt_sum = 0.0, entropy = 0.0;
    for (double l : lambda) {
        const double p = l / total;
        sqrt_sum += std::sqrt(p);
        if (p > 1e-10) entropy -= p * std::log(p);
    }
    return {qcs2, sqrt_sum * sqrt_sum - 1.0, entropy};
}

double two_mode_sqthp_qcs(double q, double r, const ModeVector& c) {
    if (c.modes() != 2) throw DomainError("two-mode state needs a two-component mode vector");
    const GaussianState sqth = make_sqth(q, r);
    const GaussianState mother = make_product({sqth, sqth});
    const double value = qcs_photon_tuned(make_photon_tuned(mother, Sign::add, c)).qcs_squared;
    // Real c (up to a global phase) is a real beam splitter, which leaves the
    // identical-mode mother invariant; a relative phase rotates one squeezing axis.
    const CVec& cc = c.coefficients();
    if (std::abs((cc[0] * std::conj(cc[1])).imag()) > 1e-12) return value;
    const double reference =
        qcs_photon_tuned(make_photon_tuned(mother, Sign::add, ModeVector::unit(2, 0))).qcs_squared;
    if (std::abs(value - reference) > 1e-8 * std::abs(reference)) {
        throw std::logic_error("two-mode SqTh+ QCS depends on the mode vector");
    }
    return value;
}

}  // namespace gausspm
