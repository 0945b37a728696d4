#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fourier.hpp"
#include "gausspm/phase_space.hpp"
#include "gausspm/states.hpp"

using namespace gausspm;
using std::numbers::pi;

namespace {

CVec z1(cplx z) {
    CVec v(1);
    v[0] = z;
    return v;
}

}  // namespace

TEST_CASE("vacuum characteristic function") {
    const auto vac = GaussianState::vacuum(1);
    CHECK(std::abs(gaussian_char(vac, z1(0.0)) - 1.0) < 1e-15);
    for (cplx z : {cplx(0.3, 0.1), cplx(-1.2, 0.7), cplx(2.0, -2.0)}) {
        CHECK(std::abs(gaussian_char(vac, z1(z)) - std::exp(-0.5 * std::norm(z))) < 1e-15);
    }
}

TEST_CASE("squeezed thermal characteristic function matches its closed form") {
    const double q = 0.5, r = 1.0;
    const auto g = make_sqth(q, r);
    for (cplx z : {cplx(0.3, 0.0), cplx(0.1, 0.4), cplx(-0.2, 0.25)}) {
        const double x1 = z.real(), x2 = z.imag();
        const double expected = std::exp(-0.5 * (1 + q) / (1 - q) *
                                         (std::exp(2 * r) * x1 * x1 + std::exp(-2 * r) * x2 * x2));
        CHECK(std::abs(gaussian_char(g, z1(z)) - expected) < 1e-14);
    }
}

TEST_CASE("characteristic function is Hermitian") {
    std::mt19937_64 rng(1);
    for (int n : {1, 2}) {
        const auto g = random_gaussian_state(rng, n);
        std::normal_distribution<double> gauss;
        for (int k = 0; k < 10; ++k) {
            CVec z(n);
            for (int i = 0; i < n; ++i) z[i] = cplx(gauss(rng), gauss(rng));
            CHECK(std::abs(gaussian_char(g, -z) - std::conj(gaussian_char(g, z))) < 1e-14);
        }
    }
}

TEST_CASE("Gaussian Wigner function values and normalization") {
    CHECK(gaussian_wigner(GaussianState::vacuum(1), RVec::Zero(2)) == doctest::Approx(1.0 / pi));
    const double q = 0.3, r = 0.7;
    const auto g = make_sqth(q, r);
    CHECK(gaussian_wigner(g, RVec::Zero(2)) ==
          doctest::Approx((1 - q) / (pi * (1 + q))).epsilon(1e-14));
    const double total = oracle::plane_integral(
        [&](double x, double p) {
            RVec v(2);
            v << x, p;
            return gaussian_wigner(g, v);
        },
        12.0, 600);
    CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("Wigner function is the Fourier transform of the characteristic function") {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 3; ++k) {
        const auto g = random_gaussian_state(rng, 1, 1.0, 0.6, 1.0);
        RVec r(2);
        r << 0.3 * k - 0.2, 0.5 - 0.4 * k;
        const double ft = oracle::wigner_from_char(
            [&](const RVec& xi) { return gaussian_char_xi(g, xi); }, r, 9.0, 240);
        CHECK(std::abs(ft - gaussian_wigner(g, r)) < 1e-6);
    }
}

TEST_CASE("purity and mean photon number") {
    CHECK(purity(GaussianState::vacuum(1)) == doctest::Approx(1.0));
    CHECK(purity(make_sqth(0.4, 0.9)) == doctest::Approx(0.6 / 1.4).epsilon(1e-14));
    CHECK(purity(make_sqth(0.0, 1.7)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(mean_photon_number(GaussianState::vacuum(2)) == doctest::Approx(0.0));
    CHECK(mean_photon_number(make_coherent(z1(cplx(0.6, -0.8)))) == doctest::Approx(1.0));
    const double q = 0.35;
    CHECK(mean_photon_number(make_sqth(q, 0.0)) == doctest::Approx(q / (1 - q)).epsilon(1e-14));
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) CHECK(purity(random_gaussian_state(rng, 2)) <= 1.0 + 1e-12);
}

TEST_CASE("symplectic constants and m_c identities") {
    for (int n : {1, 2, 3}) {
        const RMat om = symplectic_form(n);
        CHECK((om * om.transpose() - RMat::Identity(2 * n, 2 * n)).norm() < 1e-15);
        CHECK((om * om + RMat::Identity(2 * n, 2 * n)).norm() < 1e-15);
        const CMat u = u_matrix(n);
        CHECK((u * u.adjoint() - CMat::Identity(2 * n, 2 * n)).norm() < 1e-15);
        const CMat omc = om.cast<cplx>();
        CHECK((u.transpose() * omc * u + cplx(0, 1) * omc).norm() < 1e-15);
        CVec c(n);
        for (int i = 0; i < n; ++i) c[i] = cplx(1.0 + i, -0.5 * i);
        c.normalize();
        const CVec m = m_vector(ModeVector(c));
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(m[2 * i] - c[i] / std::numbers::sqrt2) < 1e-15);
            CHECK(std::abs(m[2 * i + 1] + cplx(0, 1) * c[i] / std::numbers::sqrt2) < 1e-15);
        }
        CHECK((omc.transpose() * m - cplx(0, 1) * m).norm() < 1e-15);
    }
}

TEST_CASE("z <-> xi map round trips") {
    CVec z(2);
    z << cplx(1.0, -2.0), cplx(0.5, 0.25);
    const RVec xi = xi_from_z(z);
    CHECK(xi[0] == 1.0);
    CHECK(xi[1] == -2.0);
    CHECK((z_from_xi(xi) - z).norm() == 0.0);
}

TEST_CASE("invalid states and mode vectors are rejected") {
    RMat v = RMat::Identity(2, 2);
    v(0, 0) = 0.5;  // det < 1
    CHECK_THROWS_AS(GaussianState(v, RVec::Zero(2)), DomainError);
    RMat asym = RMat::Identity(2, 2) * 2.0;
    asym(0, 1) = 0.1;
    CHECK_THROWS_AS(GaussianState(asym, RVec::Zero(2)), DomainError);
    CHECK_THROWS_AS(GaussianState(RMat::Identity(3, 3), RVec::Zero(3)), DomainError);
    CHECK_THROWS_AS(GaussianState(RMat::Identity(2, 2), RVec::Zero(4)), DomainError);
    CVec c(2);
    c << 1.0, 1.0;
    CHECK_THROWS_AS(ModeVector{c}, DomainError);
    // Boundary: pure squeezed vacuum is accepted.
    CHECK_NOTHROW(make_sqth(0.0, 2.5));
}
