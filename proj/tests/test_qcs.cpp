#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fourier.hpp"
#include "gausspm/qcs.hpp"
#include "gausspm/states.hpp"

using namespace gausspm;

namespace {

const ModeVector kOne = ModeVector::unit(1, 0);

double qcs_pm(double q, double r, Sign s) {
    return qcs_photon_tuned(make_photon_tuned(make_sqth(q, r), s, kOne)).qcs_squared;
}

double th_plus(double q) { return 6 / (q + 1) - 1 - 2 * (q + 1) / (q * q + 1); }
double th_minus(double q) { return 6 / (q + 1) - 3 - 2 * (1 - q) / (q * q + 1); }

// C^2 = int |xi|^2 |chi|^2 / int |chi|^2 on a midpoint grid.
double brute_qcs(const PhotonTunedState& ps, double half_width) {
    auto chi2 = [&](double a, double b) {
        RVec xi(2);
        xi << a, b;
        return std::norm(char_pm_xi(ps, xi));
    };
    const double num = oracle::plane_integral(
        [&](double a, double b) { return (a * a + b * b) * chi2(a, b); }, half_width, 800);
    return num / oracle::plane_integral(chi2, half_width, 800);
}

}  // namespace

TEST_CASE("Gaussian QCS") {
    CHECK(qcs_gaussian(GaussianState::vacuum(2)).qcs_squared == doctest::Approx(1.0));
    CVec z(1);
    z << cplx(1.0, 2.0);
    CHECK(qcs_gaussian(make_coherent(z)).qcs_squared == doctest::Approx(1.0));
    CHECK(qcs_gaussian(make_sqth(0.5, 0.0)).qcs_squared == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    for (double q : {0.1, 0.6}) {
        for (double r : {0.0, 0.8}) {
            CHECK(qcs_gaussian(make_sqth(q, r)).qcs_squared ==
                  doctest::Approx((1 - q) / (1 + q) * std::cosh(2 * r)).epsilon(1e-14));
        }
    }
    CHECK(qcs_gaussian(make_sqth(0.5, 0.0)).method == QcsMethod::gaussian_closed_form);
}

TEST_CASE("photon-tuned QCS closed-form anchors") {
    CHECK(qcs_pm(0.0, 0.0, Sign::add) == doctest::Approx(3.0).epsilon(1e-14));
    for (double r : {0.2, 1.0, 2.0}) {
        CHECK(qcs_pm(0.0, r, Sign::add) == doctest::Approx(3 * std::cosh(2 * r)).epsilon(1e-12));
        CHECK(qcs_pm(0.0, r, Sign::subtract) == doctest::Approx(3 * std::cosh(2 * r)).epsilon(1e-12));
        CHECK(qcs_closed_form_sqth(0.0, r, Sign::add) ==
              doctest::Approx(3 * std::cosh(2 * r)).epsilon(1e-12));
    }
    CHECK(qcs_pm(0.5, 0.0, Sign::add) == doctest::Approx(0.6).epsilon(1e-13));
    for (double q : {0.1, 0.4, 0.8}) {
        CHECK(qcs_pm(q, 0.0, Sign::add) == doctest::Approx(th_plus(q)).epsilon(1e-13));
        CHECK(qcs_pm(q, 0.0, Sign::subtract) == doctest::Approx(th_minus(q)).epsilon(1e-13));
        CHECK(qcs_closed_form_sqth(q, 0.0, Sign::subtract) ==
              doctest::Approx(th_minus(q)).epsilon(1e-13));
        CHECK(th_minus(q) <= 1.0);
    }
    CHECK(qcs_photon_tuned(make_photon_tuned(make_sqth(0.3, 1.0), Sign::add, kOne)).method ==
          QcsMethod::moment_engine);
}

TEST_CASE("moment engine agrees with brute-force quadrature") {
    std::mt19937_64 rng(31);
    std::vector<PhotonTunedState> states;
    states.push_back(make_photon_tuned(make_sqth(0.3, 1.0), Sign::add, kOne));
    states.push_back(make_photon_tuned(make_sqth(0.2, 0.4), Sign::subtract, kOne));
    for (int k = 0; k < 3; ++k) {
        const auto g = random_gaussian_state(rng, 1, 1.0, 0.5, 1.0);
        states.push_back(make_photon_tuned(g, k % 2 ? Sign::add : Sign::subtract, kOne));
    }
    for (const auto& ps : states) {
        const double exact = qcs_photon_tuned(ps).qcs_squared;
        CHECK(brute_qcs(ps, 12.0) == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("closed form and moment engine agree on a grid") {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const double q = 0.9 * i / 19.0, r = 3.0 * j / 19.0;
            for (Sign s : {Sign::add, Sign::subtract}) {
                if (i == 0 && j == 0 && s == Sign::subtract) continue;
                const double cf = qcs_closed_form_sqth(q, r, s);
                worst = std::max(worst, std::abs(qcs_pm(q, r, s) - cf) / cf);
            }
        }
    }
    CHECK(worst < 1e-8);
    CHECK_THROWS_AS(qcs_closed_form_sqth(0.0, 0.0, Sign::subtract), AnnihilatingSubtraction);
    CHECK_THROWS_AS(qcs_closed_form_sqth(1.0, 0.0, Sign::add), DomainError);
    CHECK_THROWS_AS(qcs_closed_form_sqth(0.2, -0.1, Sign::add), DomainError);
}

TEST_CASE("monotone in squeezing and addition beats subtraction on thermal states") {
    for (double q : {0.1, 0.3}) {
        for (Sign s : {Sign::add, Sign::subtract}) {
            double prev = qcs_closed_form_sqth(q, 0.5, s);
            for (int k = 1; k <= 25; ++k) {
                const double now = qcs_closed_form_sqth(q, 0.5 + 0.1 * k, s);
                CHECK(now >= prev);
                prev = now;
            }
        }
    }
    for (double q = 0.05; q < 0.5; q += 0.05) {
        CHECK(qcs_closed_form_sqth(q, 0.0, Sign::subtract) <= qcs_closed_form_sqth(q, 0.0, Sign::add));
    }
}

TEST_CASE("relative gain") {
    for (double r : {0.0, 0.7, 2.5}) {
        CHECK(relative_gain(make_photon_tuned(make_sqth(0.0, r), Sign::add, kOne)) ==
              doctest::Approx(2.0).epsilon(1e-12));
    }
    for (double q : {0.1, 0.4, 0.9}) {
        const double lim = 2 - 12 * q * (q * q + 1) / (q * q * q * q + 10 * q * q + 1);
        CHECK(relative_gain_limit_sqth(q) == doctest::Approx(lim).epsilon(1e-14));
        for (Sign s : {Sign::add, Sign::subtract}) {
            const double at8 = relative_gain(make_photon_tuned(make_sqth(q, 8.0), s, kOne));
            CHECK(std::abs(at8 - lim) < 1e-5);
        }
    }
    // Th+ at q = 0.9: R = C2_Th+/C2_Th - 1 with C2_Th = (1-q)/(1+q).
    const double q = 0.9;
    const double expected = th_plus(q) / ((1 - q) / (1 + q)) - 1.0;
    CHECK(relative_gain(make_photon_tuned(make_sqth(q, 0.0), Sign::add, kOne)) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("pure states: total noise equals the trace formula") {
    std::mt19937_64 rng(32);
    for (int k = 0; k < 20; ++k) {
        const int n = 1 + k % 3;
        const auto g = random_gaussian_state(rng, n, 0.0, 1.0, 2.0);
        std::vector<double> noise;
        const RMat& v = g.covariance();
        for (int j = 0; j < n; ++j) noise.push_back(0.5 * (v(2 * j, 2 * j) + v(2 * j + 1, 2 * j + 1)));
        const auto report = qcs_pure_total_noise(noise);
        CHECK(report.method == QcsMethod::pure_state_total_noise);
        CHECK(report.qcs_squared == doctest::Approx(qcs_gaussian(g).qcs_squared).epsilon(1e-12));
    }
}

TEST_CASE("spot values at q = 0.1, r = 0.5") {
    CHECK(qcs_closed_form_sqth(0.1, 0.5, Sign::add) == doctest::Approx(3.12683).epsilon(2e-6));
    CHECK(qcs_closed_form_sqth(0.1, 0.5, Sign::subtract) == doctest::Approx(1.55414).epsilon(2e-6));
    CHECK(qcs_gaussian(make_sqth(0.1, 0.5)).qcs_squared == doctest::Approx(1.262521).epsilon(1e-6));
}

TEST_CASE("purity half-life") {
    CHECK(purity_half_life(3.0, 0.0, 1.0) == doctest::Approx(0.25));
    CHECK(purity_half_life(2.0, 0.5, 2.0) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(purity_half_life(1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(purity_half_life(0.4, 0.0, 1.0), DomainError);
}
