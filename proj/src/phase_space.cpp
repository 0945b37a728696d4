#include "gausspm/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace gausspm {

namespace {

constexpr double kValidationTol = 1e-10;

}  // namespace

GaussianState::GaussianState(RMat covariance, RVec displacement)
    : v_(std::move(covariance)), d_(std::move(displacement)) {
    if (v_.rows() == 0 || v_.rows() != v_.cols() || v_.rows() % 2 != 0) {
        throw DomainError("covariance matrix must be square with even dimension");
    }
    if (d_.size() != v_.rows()) {
        throw DomainError("displacement length must match covariance dimension");
    }
    if (!v_.allFinite() || !d_.allFinite()) {
        throw DomainError("covariance and displacement must be finite");
    }
    modes_ = static_cast<int>(v_.rows() / 2);

    const double scale = std::max(1.0, v_.cwiseAbs().maxCoeff());
    if ((v_ - v_.transpose()).cwiseAbs().maxCoeff() > kValidationTol * scale) {
        throw DomainError("covariance matrix is not symmetric");
    }
    v_ = 0.5 * (v_ + v_.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<RMat> eig(v_);
    if (eig.eigenvalues().minCoeff() <= 0.0) {
        throw DomainError("covariance matrix is not positive definite");
    }

    // Eigenvalues of Omega V Omega^T V are the squared symplectic eigenvalues.
    const RMat omega = symplectic_form(modes_);
    const RMat product = omega * v_ * omega.transpose() * v_;
    Eigen::EigenSolver<RMat> sym(product, false);
    double nu2_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < sym.eigenvalues().size(); ++i) {
        nu2_min = std::min(nu2_min, std::abs(sym.eigenvalues()[i]));
    }
    nu_min_ = std::sqrt(nu2_min);
    if (nu_min_ < 1.0 - kValidationTol * scale) {
        std::ostringstream msg;
        msg << "covariance violates the uncertainty relation (min symplectic eigenvalue "
            << nu_min_ << " < 1)";
        throw DomainError(msg.str());
    }

    det_ = eig.eigenvalues().prod();
    v_inv_ = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
             eig.eigenvectors().transpose();
}

GaussianState GaussianState::vacuum(int modes) {
    if (modes < 1) {
        throw DomainError("mode count must be positive");
    }
    return GaussianState(RMat::Identity(2 * modes, 2 * modes), RVec::Zero(2 * modes));
}

ModeVector::ModeVector(CVec c) : c_(std::move(c)) {
    if (c_.size() == 0) {
        throw DomainError("mode vector must be nonempty");
    }
    if (std::abs(c_.squaredNorm() - 1.0) > 1e-12) {
        throw DomainError("mode vector must be normalized (sum |c_i|^2 = 1)");
    }
}

ModeVector ModeVector::unit(int modes, int k) {
    CVec c = CVec::Zero(modes);
    c[k] = 1.0;
    return ModeVector(c);
}

RMat symplectic_form(int modes) {
    RMat omega = RMat::Zero(2 * modes, 2 * modes);
    for (int j = 0; j < modes; ++j) {
        omega(2 * j, 2 * j + 1) = 1.0;
        omega(2 * j + 1, 2 * j) = -1.0;
    }
    return omega;
}

CMat u_matrix(int modes) {
    const double s = 1.0 / std::numbers::sqrt2;
    const cplx i(0.0, 1.0);
    CMat u = CMat::Zero(2 * modes, 2 * modes);
    for (int j = 0; j < modes; ++j) {
        u(2 * j, 2 * j) = s;
        u(2 * j, 2 * j + 1) = s * i;
        u(2 * j + 1, 2 * j) = s;
        u(2 * j + 1, 2 * j + 1) = -s * i;
    }
    return u;
}

CVec m_vector(const ModeVector& c) {
    const int n = c.modes();
    CVec padded = CVec::Zero(2 * n);
    for (int j = 0; j < n; ++j) {
        padded[2 * j] = c.coefficients()[j];
    }
    return u_matrix(n).adjoint() * padded;
}

RVec xi_from_z(const CVec& z) {
    RVec xi(2 * z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        xi[2 * j] = z[j].real();
        xi[2 * j + 1] = z[j].imag();
    }
    return xi;
}

CVec z_from_xi(const RVec& xi) {
    CVec z(xi.size() / 2);
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        z[j] = cplx(xi[2 * j], xi[2 * j + 1]);
    }
    return z;
}

cplx gaussian_char_xi(const GaussianState& state, const RVec& xi) {
    const RMat omega = symplectic_form(state.modes());
    const RVec w = omega.transpose() * xi;
    const double quad = w.dot(state.covariance() * w);
    const double lin = std::numbers::sqrt2 * (omega * state.displacement()).dot(xi);
    return std::exp(cplx(-0.5 * quad, -lin));
}

cplx gaussian_char(const GaussianState& state, const CVec& z) {
    if (z.size() != state.modes()) {
        throw DomainError("z must have one entry per mode");
    }
    return gaussian_char_xi(state, xi_from_z(z));
}

double gaussian_wigner(const GaussianState& state, const RVec& r) {
    if (r.size() != 2 * state.modes()) {
        throw DomainError("phase-space point has wrong dimension");
    }
    const RVec y = r - state.displacement();
    const double norm =
        std::pow(std::numbers::pi, state.modes()) * std::sqrt(state.det_covariance());
    return std::exp(-y.dot(state.inverse_covariance() * y)) / norm;
}

double purity(const GaussianState& state) { return 1.0 / std::sqrt(state.det_covariance()); }

double mean_photon_number(const GaussianState& state) {
    return (state.covariance().trace() - 2.0 * state.modes()) / 4.0 +
           state.displacement().squaredNorm() / 2.0;
}

std::string describe(const GaussianState& state) {
    std::ostringstream out;
    Eigen::IOFormat fmt(Eigen::StreamPrecision, Eigen::DontAlignCols, ",", ";", "", "", "[", "]");
    out << "modes=" << state.modes() << " V=" << state.covariance().format(fmt)
        << " d=" << state.displacement().transpose().format(fmt);
    return out.str();
}

}  // namespace gausspm
