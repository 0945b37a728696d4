#include "gausspm/photon_ops.hpp"

#include <atomic>
#include <cassert>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gausspm {

namespace {

std::atomic<double> g_wigner_offset{0.0};

// x^T (1/2)(a b^T + b a^T) x == (a.x)(b.x)
CMat symmetric_outer(const CVec& a, const CVec& b) {
    return 0.5 * (a * b.transpose() + b * a.transpose());
}

}  // namespace

const char* to_string(Sign s) { return s == Sign::add ? "add" : "subtract"; }

cplx QuadraticForm::evaluate(const RVec& x) const {
    const CVec xc = x.cast<cplx>();
    return constant + linear.cwiseProduct(xc).sum() + xc.cwiseProduct(quadratic * xc).sum();
}

PolyExpr QuadraticForm::to_poly() const {
    const int dim = static_cast<int>(linear.size());
    PolyExpr p = PolyExpr::affine(constant, linear);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            PolyExpr::Exponent e{};
            e[i] += 1;
            e[j] += 1;
            const cplx coeff = i == j ? quadratic(i, i) : quadratic(i, j) + quadratic(j, i);
            if (coeff != cplx(0.0)) p.add_term(e, coeff);
        }
    }
    return p;
}

double PhotonTunedState::wigner_constant() const {
    const CVec vinv_m = mother_.inverse_covariance().cast<cplx>() * m_;
    return -0.5 * sign_value(sign_) - 0.5 * m_.dot(vinv_m).real();
}

bool is_annihilating(const GaussianState& mother, const ModeVector& c) {
    if (c.modes() != mother.modes()) {
        throw DomainError("mode vector length must equal the mode count");
    }
    const CVec m = m_vector(c);
    const RMat& v = mother.covariance();
    const RMat shifted = v - RMat::Identity(v.rows(), v.cols());
    const double kernel_residual = (shifted.cast<cplx>() * m).norm();
    const double v_norm = v.operatorNorm();
    const cplx overlap = m.dot(mother.displacement().cast<cplx>());
    const double d_scale = std::max(1.0, mother.displacement().norm());
    return kernel_residual <= 1e-9 * v_norm && std::abs(overlap) <= 1e-9 * d_scale;
}

PhotonTunedState make_photon_tuned(const GaussianState& mother, Sign sign, const ModeVector& c) {
    if (c.modes() != mother.modes()) {
        throw DomainError("mode vector length must equal the mode count");
    }
    if (sign == Sign::subtract && is_annihilating(mother, c)) {
        const CVec m = m_vector(c);
        std::ostringstream msg;
        msg << "AnnihilatingSubtraction: a(c) rho a^dag(c) = 0 since m_c lies in Ker(V-I) "
               "and conj(m_c).d = 0; m_c = (";
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            msg << (i ? "," : "") << m[i].real() << (m[i].imag() < 0 ? "" : "+") << m[i].imag()
                << "i";
        }
        msg << ")";
        throw AnnihilatingSubtraction(msg.str(), m);
    }

    PhotonTunedState ps(mother, sign, c);
    const int n = mother.modes();
    const int dim = 2 * n;
    const double s = sign_value(sign);
    const RMat& v = mother.covariance();
    const RMat omega = symplectic_form(n);
    const RVec omega_d = omega * mother.displacement();
    const CVec m = m_vector(c);
    const CVec mbar = m.conjugate();
    ps.m_ = m;

    const double mvm = m.dot(v.cast<cplx>() * m).real();
    const cplx dm = omega_d.cast<cplx>().dot(m);  // (Omega d)^T m, real vector so no conj issue
    ps.norm_ = 1.0 / (0.5 * mvm + 0.5 * s + std::norm(dm));
    if (!std::isfinite(ps.norm_) || ps.norm_ <= 0.0) {
        throw DomainError("photon-tuned state has no finite normalization");
    }
    const double norm = ps.norm_;

    // beta = B xi - i Omega d with B = (Omega V Omega - s I)/sqrt2, since U^dag Z = sqrt2 xi.
    // The sign of the shift term follows from differentiating chi^G, whose
    // linear exponent is -i sqrt2 (Omega d).xi.
    const RMat b = (omega * v * omega - s * RMat::Identity(dim, dim)) / std::numbers::sqrt2;
    const CVec g = b.cast<cplx>() * m;     // beta^T m = g.xi + g0
    const CVec h = b.cast<cplx>() * mbar;  // conj(m)^T beta = h.xi + h0
    const cplx i(0.0, 1.0);
    const cplx g0 = -i * omega_d.cast<cplx>().cwiseProduct(m).sum();
    const cplx h0 = -i * omega_d.cast<cplx>().cwiseProduct(mbar).sum();
    const double kappa = 0.5 * mvm + 0.5 * s;
    ps.char_prefactor_.constant = norm * (kappa - g0 * h0);
    ps.char_prefactor_.linear = -norm * (g0 * h + h0 * g);
    ps.char_prefactor_.quadratic = -norm * symmetric_outer(g, h);

    // lambda = A r - V^-1 d with A = V^-1 + s I.
    const RMat a = mother.inverse_covariance() + s * RMat::Identity(dim, dim);
    const RVec vinv_d = mother.inverse_covariance() * mother.displacement();
    const CVec u = a.cast<cplx>() * m;
    const CVec w = a.cast<cplx>() * mbar;
    const cplx u0 = -vinv_d.cast<cplx>().cwiseProduct(m).sum();
    const cplx w0 = -vinv_d.cast<cplx>().cwiseProduct(mbar).sum();
    ps.wigner_prefactor_.constant = norm * (ps.wigner_constant() + u0 * w0);
    ps.wigner_prefactor_.linear = norm * (u0 * w + w0 * u);
    ps.wigner_prefactor_.quadratic = norm * symmetric_outer(u, w);
    return ps;
}

cplx char_pm_xi(const PhotonTunedState& ps, const RVec& xi) {
    return ps.char_prefactor().evaluate(xi) * gaussian_char_xi(ps.mother(), xi);
}

cplx char_pm(const PhotonTunedState& ps, const CVec& z) {
    if (z.size() != ps.modes()) throw DomainError("z must have one entry per mode");
    return char_pm_xi(ps, xi_from_z(z));
}

double wigner_pm(const PhotonTunedState& ps, const RVec& r) {
    const cplx poly =
        ps.wigner_prefactor().evaluate(r) + ps.norm() * debug::wigner_constant_offset();
    assert(std::abs(poly.imag()) <= 1e-12 * std::max(1.0, std::abs(poly)));
    return poly.real() * gaussian_wigner(ps.mother(), r);
}

cplx general_char_derivative_form(const std::function<cplx(const RVec&)>& chi,
                                  const ModeVector& c, Sign sign, const CVec& z, double step) {
    if (!(step >= 1e-8) || !std::isfinite(step)) {
        throw DomainError("finite-difference step underflow");
    }
    const int n = c.modes();
    const int dim = 2 * n;
    const double s = sign_value(sign);
    const cplx i(0.0, 1.0);
    const CVec& cc = c.coefficients();

    auto raw = [&](const CVec& zz) {
        const RVec x0 = xi_from_z(zz);
        auto grad_hess = [&](double hh, CVec& grad, CMat& hess) {
            const cplx f0 = chi(x0);
            grad.resize(dim);
            hess.resize(dim, dim);
            for (int a = 0; a < dim; ++a) {
                RVec xp = x0, xm = x0;
                xp[a] += hh;
                xm[a] -= hh;
                const cplx fp = chi(xp), fm = chi(xm);
                grad[a] = (fp - fm) / (2.0 * hh);
                hess(a, a) = (fp - 2.0 * f0 + fm) / (hh * hh);
                for (int b = a + 1; b < dim; ++b) {
                    RVec pp = x0, pm = x0, mp = x0, mm = x0;
                    pp[a] += hh; pp[b] += hh;
                    pm[a] += hh; pm[b] -= hh;
                    mp[a] -= hh; mp[b] += hh;
                    mm[a] -= hh; mm[b] -= hh;
                    hess(a, b) = (chi(pp) - chi(pm) - chi(mp) + chi(mm)) / (4.0 * hh * hh);
                    hess(b, a) = hess(a, b);
                }
            }
            return f0;
        };
        CVec g1, g2;
        CMat h1, h2;
        const cplx f0 = grad_hess(step, g1, h1);
        grad_hess(0.5 * step, g2, h2);
        const CVec grad = (4.0 * g2 - g1) / 3.0;
        const CMat hess = (4.0 * h2 - h1) / 3.0;

        // Wirtinger derivatives: d_z = (d1 - i d2)/2, d_zbar = (d1 + i d2)/2.
        cplx d1 = 0.0, d2 = 0.0, d1d2 = 0.0;
        for (int j = 0; j < n; ++j) {
            d1 += cc[j] * 0.5 * (grad[2 * j] - i * grad[2 * j + 1]);
            d2 += std::conj(cc[j]) * 0.5 * (grad[2 * j] + i * grad[2 * j + 1]);
            for (int k = 0; k < n; ++k) {
                const cplx mixed = 0.25 * (hess(2 * j, 2 * k) + hess(2 * j + 1, 2 * k + 1) +
                                           i * hess(2 * j, 2 * k + 1) - i * hess(2 * j + 1, 2 * k));
                d1d2 += cc[j] * std::conj(cc[k]) * mixed;
            }
        }
        const cplx a = cc.cwiseProduct(zz.conjugate()).sum();  // c . zbar
        const cplx b = cc.dot(zz);                        // cbar . z
        return -(d1d2 - s * 0.5 * f0 - s * 0.5 * b * d1 - s * 0.5 * a * d2 + 0.25 * a * b * f0);
    };
    return raw(z) / raw(CVec::Zero(n));
}

namespace debug {
void set_wigner_constant_offset(double offset) { g_wigner_offset.store(offset); }
double wigner_constant_offset() { return g_wigner_offset.load(); }
}  // namespace debug

}  // namespace gausspm
