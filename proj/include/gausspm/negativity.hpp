#pragma once

// Wigner negative volume N_W = |integral of W over {W < 0}|, negative-region
// geometry and the W(0) quantum non-Gaussianity witness.

#include <cstdint>
#include <stdexcept>

#include "gausspm/photon_ops.hpp"
#include "gausspm/states.hpp"

namespace gausspm {

/// A numerical procedure exhausted its budget before reaching tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RegionKind { empty, ellipse, generic };
enum class NegativityMethod { ellipse_quadrature, radial_bessel, monte_carlo, closed_form };

const char* to_string(RegionKind k);
const char* to_string(NegativityMethod m);

struct NegativeRegion {
    RegionKind kind = RegionKind::empty;
    double semi_axis_x = 0.0;  ///< set for ellipse only
    double semi_axis_p = 0.0;
};

struct NegativityReport {
    double volume = 0.0;
    NegativityMethod method = NegativityMethod::ellipse_quadrature;
    double error_estimate = 0.0;
};

/// The SqTh+- state is negative inside x^2/kx^2 + p^2/kp^2 < 1.
NegativeRegion negative_region_sqth(double q, double r, Sign sign);

/// n = 1 only. Polar Gauss-Legendre over the negative region; the order is
/// doubled from 8 until successive values differ by < tolerance. Throws
/// ConvergenceError past order 256.
NegativityReport negative_volume_single_mode(const PhotonTunedState& ps,
                                             double tolerance = 1e-6);

/// r -> infinity limit of N_W(SqTh+-)(q, r), from a periodic theta-integral.
double negative_volume_asymptotic(double q);
/// (2/sqrt(e) - 1) mu^3 with mu = (1-q)/(1+q).
double negative_volume_asymptotic_approx(double q);

/// Radial Bessel integral for even states; 2/sqrt(e) - 1 for odd ones.
NegativityReport negative_volume_even_odd(double alpha, Parity parity);

struct MonteCarloOptions {
    std::uint64_t seed = 20240501;
    std::uint64_t stream = 0;
    int replicates = 16;
    std::uint64_t initial_points = 1u << 14;  ///< per replicate
    std::uint64_t max_points = 1u << 20;
    double tolerance = 1e-3;                  ///< on the standard error
    int threads = 0;                          ///< 0 = hardware concurrency
};

/// Randomized quasi Monte Carlo (Sobol + random shifts) for any n:
/// N_W = E_{r ~ W^G}[max(0, -P(r))] with W = P W^G.
NegativityReport negative_volume_monte_carlo(const PhotonTunedState& ps,
                                             const MonteCarloOptions& options = {});

/// a^dag(c) applied to SqTh(q,r) x SqTh(q,r).
NegativityReport negative_volume_two_mode_sqthp(double q, double r, const ModeVector& c,
                                                const MonteCarloOptions& options = {});

struct QngReport {
    bool certified = false;
    double wigner_origin = 0.0;  ///< W(0) over d^2 alpha, i.e. 2 x the dx dp value
    double bound = 0.0;          ///< (2/pi) exp(-2 nbar (1 + nbar))
    double mean_photon_number = 0.0;
};

/// <a^dag a> of rho_+- by integrating ((x^2 + p^2) - 1)/2 against W exactly.
double mean_photon_number(const PhotonTunedState& ps);

/// Single mode, centred mother. Certified iff W(0) <= (2/pi) e^{-2 nbar(1+nbar)}.
QngReport qng_witness(const PhotonTunedState& ps);

}  // namespace gausspm
