#pragma once

// Photon-added (a^dag(c) rho a(c)) and photon-subtracted (a(c) rho a^dag(c))
// Gaussian states. Both chi and W are a quadratic polynomial times the
// mother's Gaussian, so a state is fully described by two QuadraticForms.

#include <functional>

#include "gausspm/moments.hpp"
#include "gausspm/phase_space.hpp"

namespace gausspm {

enum class Sign : int { add = 1, subtract = -1 };

inline double sign_value(Sign s) { return static_cast<int>(s); }
const char* to_string(Sign s);

/// Subtraction would give the zero operator: a(c) rho a^dag(c) = 0.
class AnnihilatingSubtraction : public DomainError {
public:
    AnnihilatingSubtraction(const std::string& what, CVec kernel_vector)
        : DomainError(what), kernel_vector_(std::move(kernel_vector)) {}

    /// m_c, which lies in Ker(V - I).
    const CVec& kernel_vector() const { return kernel_vector_; }

private:
    CVec kernel_vector_;
};

/// constant + linear^T x + x^T quadratic x, with quadratic symmetric.
struct QuadraticForm {
    cplx constant;
    CVec linear;
    CMat quadratic;

    cplx evaluate(const RVec& x) const;
    PolyExpr to_poly() const;
};

class PhotonTunedState {
public:
    const GaussianState& mother() const { return mother_; }
    Sign sign() const { return sign_; }
    const ModeVector& mode() const { return mode_; }
    int modes() const { return mother_.modes(); }

    /// N_+- = 1 / Tr[a^dag(c) rho a(c)] or 1 / Tr[a(c) rho a^dag(c)].
    double norm() const { return norm_; }
    const CVec& m() const { return m_; }

    /// M_+-(V,c) = -+1/2 - 1/2 conj(m)^T V^-1 m.
    double wigner_constant() const;

    /// chi_+-(xi) / chi^G(xi), including the normalization.
    const QuadraticForm& char_prefactor() const { return char_prefactor_; }
    /// W_+-(r) / W^G(r), including the normalization.
    const QuadraticForm& wigner_prefactor() const { return wigner_prefactor_; }

private:
    friend PhotonTunedState make_photon_tuned(const GaussianState&, Sign, const ModeVector&);

    PhotonTunedState(GaussianState mother, Sign sign, ModeVector mode)
        : mother_(std::move(mother)), sign_(sign), mode_(std::move(mode)) {}

    GaussianState mother_;
    Sign sign_;
    ModeVector mode_;
    double norm_ = 0.0;
    CVec m_;
    QuadraticForm char_prefactor_;
    QuadraticForm wigner_prefactor_;
};

/// True iff m_c in Ker(V - I) (||(V-I)m_c|| <= 1e-9 ||V||) and conj(m_c).d = 0.
bool is_annihilating(const GaussianState& mother, const ModeVector& c);

/// Throws AnnihilatingSubtraction for sign = subtract on an annihilating pair.
PhotonTunedState make_photon_tuned(const GaussianState& mother, Sign sign, const ModeVector& c);

cplx char_pm(const PhotonTunedState& ps, const CVec& z);
cplx char_pm_xi(const PhotonTunedState& ps, const RVec& xi);

/// Real by construction; the imaginary residue is asserted below 1e-12
/// (relative) in debug builds and dropped.
double wigner_pm(const PhotonTunedState& ps, const RVec& r);

/// Applies -[c.(d_z -+ zbar/2)][cbar.(d_zbar -+ z/2)] to a sampled
/// characteristic function by central differences with one Richardson
/// step, then divides by the same expression at z = 0.
/// Cross-check oracle only.
cplx general_char_derivative_form(const std::function<cplx(const RVec&)>& chi,
                                  const ModeVector& c, Sign sign, const CVec& z,
                                  double step = 1e-4);

namespace debug {
/// Added to M_+- in every Wigner evaluation. Mutation testing only.
void set_wigner_constant_offset(double offset);
double wigner_constant_offset();
}  // namespace debug

}  // namespace gausspm
