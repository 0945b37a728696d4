#pragma once

// Gaussian states in the (x1,p1,...,xn,pn) quadrature ordering with their
// characteristic and Wigner functions.
//
// Conventions: V_ij = 2 Cov(r_i, r_j) (vacuum V = I), x = (a + a^dag)/sqrt2.
// Wigner functions are densities over dx1 dp1 ... dxn dpn, so the vacuum
// peaks at 1/pi.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gausspm {

using cplx = std::complex<double>;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Raised when an input lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class GaussianState {
public:
    /// Requires a symmetric V obeying the uncertainty relation (all
    /// symplectic eigenvalues >= 1); throws DomainError otherwise.
    GaussianState(RMat covariance, RVec displacement);

    static GaussianState vacuum(int modes);

    int modes() const { return modes_; }
    const RMat& covariance() const { return v_; }
    const RMat& inverse_covariance() const { return v_inv_; }
    const RVec& displacement() const { return d_; }
    double det_covariance() const { return det_; }

    /// Smallest symplectic eigenvalue.
    double min_symplectic_eigenvalue() const { return nu_min_; }

private:
    int modes_;
    RMat v_;
    RMat v_inv_;
    RVec d_;
    double det_;
    double nu_min_;
};

/// Normalized complex mode vector c selecting the photon mode a(c).
class ModeVector {
public:
    explicit ModeVector(CVec c);

    /// c = e_k (photon added to / subtracted from mode k only).
    static ModeVector unit(int modes, int k);

    int modes() const { return static_cast<int>(c_.size()); }
    const CVec& coefficients() const { return c_; }

private:
    CVec c_;
};

/// Block-diagonal Omega with blocks [[0,1],[-1,0]].
RMat symplectic_form(int modes);

/// Block-diagonal U with blocks (1/sqrt2)[[1,i],[1,-i]].
CMat u_matrix(int modes);

/// m_c = U^dag (c1,0,...,cn,0); per mode (c_k, -i c_k)/sqrt2.
CVec m_vector(const ModeVector& c);

/// Canonical z <-> xi map: z_j = xi_{j1} + i xi_{j2}.
RVec xi_from_z(const CVec& z);
CVec z_from_xi(const RVec& xi);

/// chi^G(xi) = exp(-1/2 xi^T Omega V Omega^T xi - i sqrt2 (Omega d)^T xi).
cplx gaussian_char(const GaussianState& state, const CVec& z);
cplx gaussian_char_xi(const GaussianState& state, const RVec& xi);

/// W^G(r) = exp(-(r-d)^T V^-1 (r-d)) / (pi^n sqrt det V).
double gaussian_wigner(const GaussianState& state, const RVec& r);

/// 1 / sqrt(det V).
double purity(const GaussianState& state);

/// (Tr V - 2n)/4 + |d|^2/2.
double mean_photon_number(const GaussianState& state);

std::string describe(const GaussianState& state);

}  // namespace gausspm
