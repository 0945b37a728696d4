#pragma once

#include <vector>

namespace gausspm {

/// Modified Bessel function I0 (power series below x = 30, Hankel
/// asymptotic series above). Relative accuracy about 1e-14.
double bessel_i0(double x);

/// exp(-|x|) I0(x); finite for every x.
double bessel_i0_scaled(double x);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1], computed by Newton iteration on P_n.
/// Rules are cached per order and safe to request from several threads.
const QuadratureRule& gauss_legendre(int order);

/// Same rule mapped to [a, b].
QuadratureRule gauss_legendre(int order, double a, double b);

}  // namespace gausspm
