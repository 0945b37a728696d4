#pragma once

// Test oracle: W(r) = (2 pi^2)^-1 * integral chi(xi) exp(i sqrt2 (Omega r).xi) d^2 xi
// for n = 1, by the trapezoid rule on a square grid (spectrally accurate
// for the rapidly decaying integrands used here).

#include <cmath>
#include <functional>
#include <numbers>

#include "gausspm/phase_space.hpp"

namespace oracle {

inline double wigner_from_char(const std::function<gausspm::cplx(const gausspm::RVec&)>& chi,
                               const gausspm::RVec& r, double half_width, int points) {
    const double h = 2.0 * half_width / points;
    gausspm::cplx sum = 0.0;
    gausspm::RVec xi(2);
    // Omega r = (p, -x)
    const double kx = std::numbers::sqrt2 * r[1], kp = -std::numbers::sqrt2 * r[0];
    for (int i = 0; i < points; ++i) {
        xi[0] = -half_width + (i + 0.5) * h;
        for (int j = 0; j < points; ++j) {
            xi[1] = -half_width + (j + 0.5) * h;
            sum += chi(xi) * std::exp(gausspm::cplx(0.0, kx * xi[0] + kp * xi[1]));
        }
    }
    return (sum * h * h).real() / (2.0 * std::numbers::pi * std::numbers::pi);
}

// Midpoint rule over [-L, L]^2.
inline double plane_integral(const std::function<double(double, double)>& f, double half_width,
                             int points) {
    const double h = 2.0 * half_width / points;
    double sum = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = -half_width + (i + 0.5) * h;
        for (int j = 0; j < points; ++j) sum += f(x, -half_width + (j + 0.5) * h);
    }
    return sum * h * h;
}

}  // namespace oracle
