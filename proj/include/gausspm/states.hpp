#pragma once

// Named Gaussian state families, plus the photon-added two-mode coherent
// (even/odd) states.

#include <random>
#include <vector>

#include "gausspm/photon_ops.hpp"

namespace gausspm {

/// V = (1+q)/(1-q) diag(e^{-2r}, e^{2r}), d = 0. Needs 0 <= q < 1, r >= 0.
GaussianState make_sqth(double q, double r);

/// V = I, d = sqrt2 (Re z1, Im z1, ...).
GaussianState make_coherent(const CVec& z);

/// Direct sum of independent modes.
GaussianState make_product(const std::vector<GaussianState>& factors);

/// V = S diag(nu_k I) S^T with S = passive . squeeze . passive; nu_k in
/// [1, 1 + max_thermal], squeezing |r_k| <= max_squeeze, |d_i| <= max_shift.
GaussianState random_gaussian_state(std::mt19937_64& rng, int modes, double max_thermal = 2.0,
                                    double max_squeeze = 1.0, double max_shift = 1.0);

enum class Parity { even, odd };

const char* to_string(Parity p);

/// a^dag(c)|alpha, alpha> with c = (1, +-1)/sqrt2; alpha is the coherent
/// amplitude of each input mode.
struct TwoModeCoherentPlus {
    cplx alpha;
    Parity parity;
};

ModeVector even_odd_mode(Parity parity);

/// The same state through the generic photon_ops path.
PhotonTunedState make_even_odd(const TwoModeCoherentPlus& s);

struct EvenOddScalars {
    double qcs_squared;
    double npt;  ///< ||rho^{T_B}||_1 - 1
    double eof;  ///< entropy of the reduced state, natural log
};

/// QCS from the pure-state total noise; NPT and EoF from the Schmidt
/// spectrum, obtained through the 2x2 Gram matrix of {|alpha>, a^dag|alpha>}.
EvenOddScalars even_odd_scalars(const TwoModeCoherentPlus& s);

/// C^2 of a^dag(c) (SqTh(q,r) x SqTh(q,r)) via the moment engine. For c real
/// up to a global phase, also evaluates c = (1,0) and throws std::logic_error
/// if they differ by > 1e-8. A relative phase genuinely changes the value.
double two_mode_sqthp_qcs(double q, double r, const ModeVector& c);

}  // namespace gausspm
