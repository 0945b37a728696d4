#pragma once

// Exact integrals of (complex polynomial) x (Gaussian) over R^d.
//
// The Gaussian is scale * exp(-(x-s)^T Q (x-s)); its normalized form has
// covariance Q^-1/2, and polynomial moments are reduced to pair sums
// (Isserlis/Wick) after shifting to the centre s.

#include <array>
#include <cstdint>
#include <map>

#include "gausspm/phase_space.hpp"

namespace gausspm {

inline constexpr int kMaxPolyVariables = 8;
inline constexpr int kMaxPolyDegree = 6;

class PolyExpr {
public:
    using Exponent = std::array<std::uint8_t, kMaxPolyVariables>;

    explicit PolyExpr(int variables);

    static PolyExpr constant(int variables, cplx value);
    static PolyExpr variable(int variables, int index);
    /// c0 + sum_i coeffs_i x_i
    static PolyExpr affine(cplx c0, const CVec& coeffs);
    /// sum_i x_i^2
    static PolyExpr squared_norm(int variables);

    int variables() const { return variables_; }
    int degree() const;
    const std::map<Exponent, cplx>& terms() const { return terms_; }

    void add_term(const Exponent& exponent, cplx coefficient);
    cplx coefficient(const Exponent& exponent) const;
    cplx evaluate(const RVec& x) const;

    PolyExpr conjugate() const;

    PolyExpr& operator+=(const PolyExpr& other);
    PolyExpr& operator-=(const PolyExpr& other);
    PolyExpr& operator*=(cplx factor);

    friend PolyExpr operator+(PolyExpr a, const PolyExpr& b) { return a += b; }
    friend PolyExpr operator-(PolyExpr a, const PolyExpr& b) { return a -= b; }
    friend PolyExpr operator*(PolyExpr a, cplx f) { return a *= f; }
    friend PolyExpr operator*(cplx f, PolyExpr a) { return a *= f; }

private:
    int variables_;
    std::map<Exponent, cplx> terms_;
};

/// Coefficient-wise convolution; throws DomainError past kMaxPolyDegree.
PolyExpr poly_product(const PolyExpr& a, const PolyExpr& b);

class GaussianWeight {
public:
    /// Throws DomainError unless precision is symmetric positive definite.
    GaussianWeight(RMat precision, RVec shift, double scale = 1.0);

    const RMat& precision() const { return q_; }
    const RVec& shift() const { return s_; }
    double scale() const { return scale_; }
    const RMat& covariance() const { return cov_; }
    /// Integral of the weight itself.
    double mass() const { return mass_; }

    double evaluate(const RVec& x) const;

private:
    RMat q_;
    RVec s_;
    double scale_;
    RMat cov_;
    double mass_;
};

/// Exact value of the integral of p(x) w(x) dx over R^d.
cplx integrate_poly_gaussian(const PolyExpr& p, const GaussianWeight& w);

}  // namespace gausspm
