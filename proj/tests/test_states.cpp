#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "gausspm/qcs.hpp"
#include "gausspm/states.hpp"

using namespace gausspm;

namespace {

const ModeVector kOne = ModeVector::unit(1, 0);

// a^dag(c)|alpha, alpha> in a truncated two-mode Fock basis, stored as the
// coefficient matrix psi(j, k) of |j>|k>.
struct FockOracle {
    static constexpr int D = 40;
    CMat psi;
    CMat a;

    FockOracle(cplx alpha, const CVec& c) : a(CMat::Zero(D, D)) {
        for (int k = 1; k < D; ++k) a(k - 1, k) = std::sqrt(double(k));
        CVec coh(D);
        for (int k = 0; k < D; ++k)
            coh[k] = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, k) /
                     std::sqrt(std::tgamma(k + 1.0));
        const CMat base = coh * coh.transpose();
        const CMat adag = a.adjoint();
        psi = c[0] * adag * base + c[1] * base * adag.transpose();
        psi /= psi.norm();
    }

    cplx mode1(const CMat& op) const { return psi.conjugate().cwiseProduct(op * psi).sum(); }
    cplx mode2(const CMat& op) const {
        return psi.conjugate().cwiseProduct(psi * op.transpose()).sum();
    }

    double qcs_squared() const {
        const cplx i(0.0, 1.0);
        const CMat x = (a + a.adjoint()) / std::numbers::sqrt2;
        const CMat p = (a - a.adjoint()) / (i * std::numbers::sqrt2);
        double total = 0.0;
        for (const CMat* op : {&x, &p}) {
            const CMat sq = (*op) * (*op);
            total += (mode1(sq) - mode1(*op) * mode1(*op)).real();
            total += (mode2(sq) - mode2(*op) * mode2(*op)).real();
        }
        return total / 2.0;
    }

    Eigen::VectorXd schmidt() const {
        return Eigen::JacobiSVD<CMat>(psi).singularValues().array().square();
    }
    double npt() const {
        const double s = schmidt().cwiseSqrt().sum();
        return s * s - 1.0;
    }
    double eof() const {
        double h = 0.0;
        for (double l : schmidt())
            if (l > 1e-300) h -= l * std::log(l);
        return h;
    }
};

}  // namespace

TEST_CASE("squeezed thermal constructor") {
    CHECK((make_sqth(0.0, 0.0).covariance() - RMat::Identity(2, 2)).norm() < 1e-15);
    const double q = 0.3;
    CHECK((make_sqth(q, 0.0).covariance() - (1 + q) / (1 - q) * RMat::Identity(2, 2)).norm() <
          1e-15);
    CHECK(make_sqth(0.5, 1.0).covariance().determinant() == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(make_sqth(0.5, 1.0).covariance()(0, 0) == doctest::Approx(3.0 * std::exp(-2.0)));
    CHECK(make_sqth(0.5, 1.0).displacement().norm() == 0.0);
    CHECK_THROWS_AS(make_sqth(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_sqth(-0.1, 0.0), DomainError);
    CHECK_THROWS_AS(make_sqth(0.1, -1.0), DomainError);
}

TEST_CASE("coherent and product constructors") {
    CVec z(2);
    z << cplx(0.0), cplx(0.0);
    CHECK(make_coherent(z).displacement().norm() == 0.0);
    z << cplx(0.5, -1.0), cplx(2.0, 0.25);
    const auto g = make_coherent(z);
    CHECK(g.displacement()[0] == doctest::Approx(0.5 * std::numbers::sqrt2));
    CHECK(g.displacement()[1] == doctest::Approx(-1.0 * std::numbers::sqrt2));
    CHECK(g.displacement()[3] == doctest::Approx(0.25 * std::numbers::sqrt2));
    CHECK(mean_photon_number(g) == doctest::Approx(z.squaredNorm()));
    const auto prod = make_product({make_sqth(0.2, 0.3), make_coherent(z.head(1))});
    CHECK(prod.modes() == 2);
    CHECK(prod.covariance().block(0, 0, 2, 2).isApprox(make_sqth(0.2, 0.3).covariance()));
    CHECK(prod.covariance().block(0, 2, 2, 2).norm() == 0.0);
    CHECK(prod.displacement()[2] == doctest::Approx(0.5 * std::numbers::sqrt2));
}

TEST_CASE("even/odd closed forms against the Fock-basis oracle") {
    for (double a : {0.0, 0.4, 1.0, 1.5}) {
        for (Parity p : {Parity::even, Parity::odd}) {
            const TwoModeCoherentPlus s{cplx(a, 0.0), p};
            const FockOracle fock(s.alpha, even_odd_mode(p).coefficients());
            const auto sc = even_odd_scalars(s);
            CHECK(sc.qcs_squared == doctest::Approx(fock.qcs_squared()).epsilon(1e-9));
            CHECK(sc.npt == doctest::Approx(fock.npt()).epsilon(1e-9));
            CHECK(sc.eof == doctest::Approx(fock.eof()).epsilon(1e-9));
        }
    }
    // Complex amplitude: only |alpha| matters.
    const auto phased = even_odd_scalars({std::polar(1.0, 0.7), Parity::even});
    const auto real = even_odd_scalars({cplx(1.0, 0.0), Parity::even});
    CHECK(phased.npt == doctest::Approx(real.npt).epsilon(1e-12));
    CHECK(phased.eof == doctest::Approx(real.eof).epsilon(1e-12));
}

TEST_CASE("even/odd anchors") {
    for (double a : {0.0, 0.7, 3.0}) {
        const auto odd = even_odd_scalars({cplx(a, 0.0), Parity::odd});
        CHECK(odd.qcs_squared == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(odd.npt == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(odd.eof == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
    const auto even0 = even_odd_scalars({cplx(0.0), Parity::even});
    CHECK(even0.qcs_squared == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(even0.eof == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    const auto far = even_odd_scalars({cplx(6.0), Parity::even});
    CHECK(far.qcs_squared - 1.0 < 2e-4);
    CHECK(far.eof < 1e-2);
    for (double a : {0.3, 1.0, 2.0}) {
        CHECK(even_odd_scalars({cplx(a, 0.0), Parity::even}).qcs_squared ==
              doctest::Approx(1.0 + 1.0 / std::pow(1.0 + 2.0 * a * a, 2)).epsilon(1e-12));
    }
}

TEST_CASE("even/odd QCS: total noise versus the moment engine") {
    for (double a : {0.0, 0.5, 1.3}) {
        for (Parity p : {Parity::even, Parity::odd}) {
            const TwoModeCoherentPlus s{cplx(a, 0.2 * a), p};
            const double generic = qcs_photon_tuned(make_even_odd(s)).qcs_squared;
            CHECK(even_odd_scalars(s).qcs_squared == doctest::Approx(generic).epsilon(1e-8));
        }
    }
}

TEST_CASE("two-mode photon-added squeezed thermal QCS") {
    const double avg = 0.5 * (qcs_gaussian(make_sqth(0.2, 0.5)).qcs_squared +
                              qcs_closed_form_sqth(0.2, 0.5, Sign::add));
    CHECK(two_mode_sqthp_qcs(0.2, 0.5, ModeVector::unit(2, 0)) == doctest::Approx(avg).epsilon(1e-8));
    CHECK(two_mode_sqthp_qcs(0.2, 0.5, ModeVector::unit(2, 0)) == doctest::Approx(1.54).epsilon(3e-3));
    CVec c(2);
    c << cplx(0.6, 0.0), cplx(-0.8, 0.0);
    CHECK(two_mode_sqthp_qcs(0.2, 0.5, ModeVector(c * std::polar(1.0, 0.4))) ==
          doctest::Approx(avg).epsilon(1e-8));
    // A relative phase of i rotates the second squeezing axis: the value moves.
    c << cplx(0.6, 0.0), cplx(0.0, 0.8);
    CHECK(std::abs(two_mode_sqthp_qcs(0.2, 0.5, ModeVector(c)) - avg) > 1e-3);
    CHECK(two_mode_sqthp_qcs(0.0, 0.0, ModeVector::unit(2, 1)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("squeezed vacuum: addition and subtraction coincide") {
    const auto plus = make_photon_tuned(make_sqth(0.0, 0.9), Sign::add, kOne);
    const auto minus = make_photon_tuned(make_sqth(0.0, 0.9), Sign::subtract, kOne);
    for (int i = -5; i <= 5; ++i) {
        for (int j = -5; j <= 5; ++j) {
            CVec z(1);
            z << cplx(0.3 * i, 0.3 * j);
            CHECK(std::abs(char_pm(plus, z) - char_pm(minus, z)) < 1e-14);
        }
    }
}

TEST_CASE("random states are physical") {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 50; ++k) {
        const auto g = random_gaussian_state(rng, 1 + k % 4);
        const RMat& v = g.covariance();
        const int dim = static_cast<int>(v.rows());
        // V + i Omega >= 0
        const CMat h = v.cast<cplx>() + cplx(0.0, 1.0) * symplectic_form(dim / 2).cast<cplx>();
        CHECK(Eigen::SelfAdjointEigenSolver<CMat>(h).eigenvalues()[0] > -1e-10);
    }
}
