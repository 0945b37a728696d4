#include "gausspm/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/roots.hpp>

#include "gausspm/classify.hpp"
#include "gausspm/negativity.hpp"
#include "gausspm/qcs.hpp"
#include "gausspm/states.hpp"

namespace gausspm {

namespace {

const double kFock = 2.0 / std::sqrt(std::numbers::e) - 1.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Root of f on [a, b] (f(a), f(b) of opposite sign) to full double precision.
double find_root(const std::function<double(double)>& f, double a, double b) {
    std::uintmax_t iters = 200;
    const auto bracket = boost::math::tools::toms748_solve(
        f, a, b, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (bracket.first + bracket.second);
}

std::string fmt(double x, int digits = 8) {
    std::ostringstream s;
    s << std::setprecision(digits) << x;
    return s.str();
}

// Minimum of the Wigner prefactor P (sign(W) = sign(P)) by a log-polar scan
// around the mother's mean, refined by shrinking local grids.
double scan_min_prefactor(const PhotonTunedState& ps) {
    const QuadraticForm& p = ps.wigner_prefactor();
    auto val = [&](const RVec& x) { return p.evaluate(x).real(); };
    const RVec centre = ps.mother().displacement();
    RVec best = centre;
    double best_val = val(best);
    RVec x(2);
    const int n_radii = 400, n_angles = 720;
    for (int i = 0; i < n_radii; ++i) {
        const double rad = 1e-3 * std::pow(1e7, static_cast<double>(i) / (n_radii - 1));
        for (int j = 0; j < n_angles; ++j) {
            const double th = 2.0 * std::numbers::pi * j / n_angles;
            x << centre[0] + rad * std::cos(th), centre[1] + rad * std::sin(th);
            const double v = val(x);
            if (v < best_val) {
                best_val = v;
                best = x;
            }
        }
    }
    double half = std::max(1e-3, 0.05 * (best - centre).norm());
    for (int round = 0; round < 12; ++round) {
        const RVec c = best;
        for (int i = -20; i <= 20; ++i) {
            for (int j = -20; j <= 20; ++j) {
                x << c[0] + half * i / 20.0, c[1] + half * j / 20.0;
                const double v = val(x);
                if (v < best_val) {
                    best_val = v;
                    best = x;
                }
            }
        }
        half *= 0.25;
    }
    return best_val;
}

AcceptanceResult check_fock() {
    AcceptanceResult res{1, "Fock negativity", false, "", 0.0};
    const auto t0 = Clock::now();
    const auto ps = make_photon_tuned(GaussianState::vacuum(1), Sign::add, ModeVector::unit(1, 0));
    const double nw = negative_volume_single_mode(ps).volume;
    const double dt = seconds_since(t0);
    res.pass = std::abs(nw - 0.21306) <= 1e-4 && dt < 1.0;
    res.detail = "N_W=" + fmt(nw) + " target 0.21306+-1e-4, runtime " + fmt(dt, 3) + " s";
    return res;
}

AcceptanceResult check_squeezing_independence() {
    AcceptanceResult res{2, "Squeezing independence (SqV+-)", true, "", 0.0};
    double worst_nw = 0.0, worst_chi = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
        const GaussianState sqv = make_sqth(0.0, r);
        const auto plus = make_photon_tuned(sqv, Sign::add, ModeVector::unit(1, 0));
        const auto minus = make_photon_tuned(sqv, Sign::subtract, ModeVector::unit(1, 0));
        worst_nw = std::max(worst_nw, std::abs(negative_volume_single_mode(plus).volume - 0.21306));
        worst_nw = std::max(worst_nw, std::abs(negative_volume_single_mode(minus).volume - 0.21306));
        for (int i = 0; i <= 60; ++i) {
            const double rad = 3.0 * i / 60.0;
            for (int j = 0; j < 72; ++j) {
                const double th = 2.0 * std::numbers::pi * j / 72;
                CVec z(1);
                z[0] = std::polar(rad, th);
                worst_chi = std::max(worst_chi, std::abs(char_pm(plus, z) - char_pm(minus, z)));
            }
        }
    }
    res.pass = worst_nw <= 1e-4 && worst_chi < 1e-10;
    res.detail = "max |N_W - 0.21306|=" + fmt(worst_nw, 3) +
                 ", sup|chi+ - chi-| on |z|<=3 = " + fmt(worst_chi, 3);
    return res;
}

AcceptanceResult check_qcs_closed_form() {
    AcceptanceResult res{3, "QCS closed-form triangle (20x20 grid)", false, "", 0.0};
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double q = 0.9 * i / 19.0;
        for (int j = 0; j < 20; ++j) {
            const double r = 3.0 * j / 19.0;
            for (Sign s : {Sign::add, Sign::subtract}) {
                if (s == Sign::subtract && q == 0.0 && r == 0.0) continue;
                const double engine =
                    qcs_photon_tuned(make_photon_tuned(make_sqth(q, r), s, ModeVector::unit(1, 0)))
                        .qcs_squared;
                const double closed = qcs_closed_form_sqth(q, r, s);
                worst = std::max(worst, std::abs(engine - closed) / std::abs(closed));
            }
        }
    }
    const double dt = seconds_since(t0);
    res.pass = worst < 1e-8 && dt < 10.0;
    res.detail = "max relative error " + fmt(worst, 3) + ", runtime " + fmt(dt, 3) + " s";
    return res;
}

AcceptanceResult check_gaussian_qcs() {
    AcceptanceResult res{4, "Gaussian QCS: trace formula vs moment engine", false, "", 0.0};
    std::mt19937_64 rng(4);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int n = 1 + k % 2;
        const GaussianState g = random_gaussian_state(rng, n);
        const RMat omega = symplectic_form(n);
        const GaussianWeight w(omega * g.covariance() * omega.transpose(), RVec::Zero(2 * n));
        const double engine =
            integrate_poly_gaussian(PolyExpr::squared_norm(2 * n), w).real() / (n * w.mass());
        const double trace = qcs_gaussian(g).qcs_squared;
        worst = std::max(worst, std::abs(engine - trace) / trace);
    }
    res.pass = worst < 1e-8;
    res.detail = "100 random states (n<=2), max relative error " + fmt(worst, 3);
    return res;
}

AcceptanceResult check_fock_thermal() {
    AcceptanceResult res{5, "Fock / thermal QCS anchors", false, "", 0.0};
    const double fock = qcs_photon_tuned(make_photon_tuned(GaussianState::vacuum(1), Sign::add,
                                                           ModeVector::unit(1, 0)))
                            .qcs_squared;
    double worst_th = 0.0;
    for (double q : {0.1, 0.5, 0.9}) {
        const double engine = qcs_photon_tuned(
            make_photon_tuned(make_sqth(q, 0.0), Sign::add, ModeVector::unit(1, 0))).qcs_squared;
        const double closed = 6.0 / (q + 1.0) - 1.0 - 2.0 * (q + 1.0) / (q * q + 1.0);
        worst_th = std::max(worst_th, std::abs(engine - closed));
    }
    double max_minus = 0.0;
    for (int i = 1; i < 100; ++i) {
        const double q = i / 100.0;
        max_minus = std::max(max_minus, qcs_photon_tuned(make_photon_tuned(
                                            make_sqth(q, 0.0), Sign::subtract,
                                            ModeVector::unit(1, 0))).qcs_squared);
    }
    res.pass = std::abs(fock - 3.0) < 1e-12 && worst_th < 1e-10 && max_minus <= 1.0;
    res.detail = "C2(vacuum+)=" + fmt(fock, 16) + ", max |C2_Th+ - closed form|=" +
                 fmt(worst_th, 3) + ", max C2_Th- on (0,1)=" + fmt(max_minus, 10);
    return res;
}

AcceptanceResult check_relative_gain() {
    AcceptanceResult res{6, "Relative QCS gain", false, "", 0.0};
    double worst_sqv = 0.0;
    for (double r : {0.0, 1.0, 2.0}) {
        const double g = relative_gain(
            make_photon_tuned(make_sqth(0.0, r), Sign::add, ModeVector::unit(1, 0)));
        worst_sqv = std::max(worst_sqv, std::abs(g - 2.0));
    }
    double worst_lim = 0.0;
    for (double q : {0.1, 0.3}) {
        const double lim = relative_gain_limit_sqth(q);
        for (Sign s : {Sign::add, Sign::subtract}) {
            const double g =
                relative_gain(make_photon_tuned(make_sqth(q, 5.0), s, ModeVector::unit(1, 0)));
            worst_lim = std::max(worst_lim, std::abs(g - lim) / std::abs(lim));
        }
    }
    res.pass = worst_sqv <= 1e-8 && worst_lim < 0.01;
    res.detail = "max |R_SqV+ - 2|=" + fmt(worst_sqv, 3) +
                 ", max relative distance to the r->inf limit at r=5: " + fmt(worst_lim, 3);
    return res;
}

AcceptanceResult check_classification() {
    AcceptanceResult res{7, "Classification audit", false, "", 0.0};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uq(0.0, 0.9), ur(0.0, 1.5), uth(0.0, std::numbers::pi),
        ud(-1.0, 1.0);
    int disagreements = 0, negatives = 0;
    for (int k = 0; k < 200; ++k) {
        const double q = uq(rng), r = ur(rng), th = uth(rng);
        const GaussianState base = make_sqth(q, r);
        Eigen::Matrix2d rot;
        rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        RVec d(2);
        d << ud(rng), ud(rng);
        const GaussianState g(rot * base.covariance() * rot.transpose(), d);
        const auto ps = make_photon_tuned(g, Sign::subtract, ModeVector::unit(1, 0));
        const bool predicted = classify_subtracted(ps).wigner_negative == Verdict::yes;
        const bool scan = scan_min_prefactor(ps) < 0.0;
        negatives += scan;
        disagreements += predicted != scan;
    }
    double worst_line = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double q = i / 10.0;
        auto min_eig = [&](double r) {
            Eigen::SelfAdjointEigenSolver<RMat> eig(make_sqth(q, r).covariance());
            return eig.eigenvalues().minCoeff() - 1.0;
        };
        const double root = find_root(min_eig, 0.0, 5.0);
        worst_line = std::max(worst_line, std::abs(root - boundary_lines(q).r_classical));
    }
    res.pass = disagreements == 0 && worst_line < 1e-10;
    res.detail = std::to_string(disagreements) + " disagreements on 200 instances (" +
                 std::to_string(negatives) + " negative by scan); max |r_classical - eig root|=" +
                 fmt(worst_line, 3);
    return res;
}

AcceptanceResult check_level_lines() {
    AcceptanceResult res{8, "Level-line coincidence C2_SqTh- = 1 = C2_SqTh", false, "", 0.0};
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double q = i / 10.0;
        auto minus = [&](double r) {
            return qcs_photon_tuned(
                       make_photon_tuned(make_sqth(q, r), Sign::subtract, ModeVector::unit(1, 0)))
                       .qcs_squared -
                   1.0;
        };
        auto gauss = [&](double r) { return qcs_gaussian(make_sqth(q, r)).qcs_squared - 1.0; };
        const double r_minus = find_root(minus, 0.0, 4.0);
        const double r_gauss = find_root(gauss, 0.0, 4.0);
        const double line = boundary_lines(q).r_qcs_one;
        worst = std::max({worst, std::abs(r_minus - line), std::abs(r_gauss - line)});
    }
    res.pass = worst < 1e-8;
    res.detail = "max distance between roots and r_qcs_one over q=0.1..0.9: " + fmt(worst, 3);
    return res;
}

AcceptanceResult check_two_mode() {
    AcceptanceResult res{9, "Two-mode SqTh+ anchors", false, "", 0.0};
    const auto t0 = Clock::now();
    const double s = 1.0 / std::numbers::sqrt2;
    std::vector<CVec> cs(3, CVec(2));
    cs[0] << 1.0, 0.0;
    cs[1] << s, s;
    cs[2] << cplx(0.6, 0.0), cplx(0.0, 0.8);
    bool ok = true;
    std::string vols;
    for (const CVec& c : cs) {
        MonteCarloOptions mc;
        mc.tolerance = 5e-4;
        const NegativityReport n = negative_volume_two_mode_sqthp(0.2, 0.5, ModeVector(c), mc);
        ok = ok && std::abs(n.volume - 0.104) <= 0.003;
        vols += fmt(n.volume, 5) + "+-" + fmt(n.error_estimate, 2) + " ";
    }
    const double c2 = two_mode_sqthp_qcs(0.2, 0.5, ModeVector(cs[1]));
    const double avg = 0.5 * (qcs_gaussian(make_sqth(0.2, 0.5)).qcs_squared +
                              qcs_closed_form_sqth(0.2, 0.5, Sign::add));
    const double dt = seconds_since(t0);
    res.pass = ok && std::abs(c2 - 1.54) <= 0.01 && std::abs(c2 - avg) <= 1e-8 && dt < 60.0;
    res.detail = "N_W=" + vols + "; C2=" + fmt(c2, 10) + " vs average " + fmt(avg, 10) +
                 "; runtime " + fmt(dt, 3) + " s";
    return res;
}

AcceptanceResult check_even_odd() {
    AcceptanceResult res{10, "Even/odd photon-added coherent family", false, "", 0.0};
    bool odd_ok = true;
    for (double a : {0.0, 1.0, 3.0}) {
        const TwoModeCoherentPlus odd{a, Parity::odd};
        odd_ok = odd_ok && std::abs(even_odd_scalars(odd).qcs_squared - 2.0) <= 1e-8 &&
                 std::abs(negative_volume_even_odd(a, Parity::odd).volume - 0.2131) <= 1e-4;
    }
    const double n0 = negative_volume_even_odd(0.0, Parity::even).volume;
    const double ratio = negative_volume_even_odd(1.9, Parity::even).volume / n0;
    const double npt_even = even_odd_scalars({1.0, Parity::even}).npt;
    const double eof_odd = even_odd_scalars({1.0, Parity::odd}).eof;
    const bool ratio_ok = std::abs(ratio - 0.05) <= 0.01;
    const bool npt_ok = std::abs(npt_even - 0.5) <= 1e-8;
    const bool eof_ok = std::abs(eof_odd - std::log(2.0)) <= 1e-8;
    res.pass = odd_ok && ratio_ok && npt_ok && eof_ok;
    const double ratio_scaled =
        negative_volume_even_odd(1.9 / std::numbers::sqrt2, Parity::even).volume / n0;
    const double npt_scaled = even_odd_scalars({1.0 / std::numbers::sqrt2, Parity::even}).npt;
    res.detail = std::string("odd anchors ") + (odd_ok ? "ok" : "FAIL") +
                 "; N_even(1.9)/N_even(0)=" + fmt(ratio, 5) + (ratio_ok ? " ok" : " FAIL") +
                 "; NPT_even(1)=" + fmt(npt_even, 10) + (npt_ok ? " ok" : " FAIL") +
                 "; EoF_odd=" + fmt(eof_odd, 12) + (eof_ok ? " ok" : " FAIL") +
                 " | with alpha read as sqrt2 x coherent amplitude: ratio=" + fmt(ratio_scaled, 5) +
                 ", NPT_even=" + fmt(npt_scaled, 10);
    return res;
}

AcceptanceResult check_qng() {
    AcceptanceResult res{11, "QNG witness at q = 0.1", false, "", 0.0};
    const double q = 0.1;
    const BoundaryLines lines = boundary_lines(q);
    auto margin = [&](double r) {
        const QngReport w = qng_witness(
            make_photon_tuned(make_sqth(q, r), Sign::subtract, ModeVector::unit(1, 0)));
        return w.wigner_origin - w.bound;
    };
    const double r_sat = find_root(margin, lines.r_classical + 1e-9, lines.r_qcs_one - 1e-9);
    const bool between = lines.r_classical < r_sat && r_sat < lines.r_qcs_one;
    int certified = 0;
    const int samples = 20;
    for (int i = 1; i <= samples; ++i) {
        const double r = r_sat + (lines.r_qcs_one - r_sat) * i / (samples + 1.0);
        certified += qng_witness(make_photon_tuned(make_sqth(q, r), Sign::subtract,
                                                   ModeVector::unit(1, 0))).certified;
    }
    res.pass = between && certified == samples;
    res.detail = "r_classical=" + fmt(lines.r_classical, 10) + " < r_sat=" + fmt(r_sat, 10) +
                 " < r_qcs_one=" + fmt(lines.r_qcs_one, 10) + "; certified " +
                 std::to_string(certified) + "/" + std::to_string(samples);
    return res;
}

AcceptanceResult check_geometry() {
    AcceptanceResult res{12, "Negative-region geometry of SqTh+-", false, "", 0.0};
    double worst_w0 = 0.0, worst_edge = 0.0;
    int iff_mismatch = 0;
    for (int i = 0; i <= 9; ++i) {
        const double q = i / 10.0;
        for (int j = 0; j <= 10; ++j) {
            const double r = 0.25 * j + 0.01;
            const double c = std::cosh(2.0 * r);
            const double pi = std::numbers::pi;
            const double w_plus = -(1 - q) * (1 - q) * ((1 - q) * c + 1 + q) /
                                  (pi * (1 + q) * (1 + q) * ((1 + q) * c + 1 - q));
            const double w_minus = (1 - q) * (1 - q) * (-(1 - q) * c + 1 + q) /
                                   (pi * (1 + q) * (1 + q) * ((1 + q) * c - 1 + q));
            for (Sign s : {Sign::add, Sign::subtract}) {
                const auto ps = make_photon_tuned(make_sqth(q, r), s, ModeVector::unit(1, 0));
                const double w0 = wigner_pm(ps, RVec::Zero(2));
                worst_w0 = std::max(worst_w0, std::abs(w0 - (s == Sign::add ? w_plus : w_minus)));
                const NegativeRegion reg = negative_region_sqth(q, r, s);
                if (reg.kind == RegionKind::ellipse) {
                    for (int k = 0; k < 16; ++k) {
                        const double th = 2.0 * pi * k / 16;
                        RVec x(2);
                        x << reg.semi_axis_x * std::cos(th), reg.semi_axis_p * std::sin(th);
                        worst_edge = std::max(worst_edge, std::abs(wigner_pm(ps, x)) / std::abs(w0));
                    }
                }
                if (s == Sign::subtract) {
                    const bool expected = q < std::pow(std::tanh(r), 2);
                    const bool predicted = classify_subtracted(ps).wigner_negative == Verdict::yes;
                    iff_mismatch += (predicted != expected) + ((w0 < 0.0) != expected);
                }
            }
        }
    }
    res.pass = worst_w0 <= 1e-12 && worst_edge < 1e-10 && iff_mismatch == 0;
    res.detail = "max |W(0) - closed form|=" + fmt(worst_w0, 3) +
                 ", max |W| / |W(0)| on ellipse boundaries=" + fmt(worst_edge, 3) +
                 ", mismatches with q < tanh^2 r: " + std::to_string(iff_mismatch);
    return res;
}

}  // namespace

std::string format_result(const AcceptanceResult& r) {
    std::ostringstream s;
    s << (r.pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << " " << r.title << ": "
      << r.detail << " (" << std::fixed << std::setprecision(3) << r.seconds << " s)";
    return s.str();
}

std::vector<AcceptanceResult> run_acceptance(std::ostream* out) {
    const std::vector<std::function<AcceptanceResult()>> checks = {
        check_fock,           check_squeezing_independence, check_qcs_closed_form,
        check_gaussian_qcs,   check_fock_thermal,           check_relative_gain,
        check_classification, check_level_lines,            check_two_mode,
        check_even_odd,       check_qng,                    check_geometry};
    std::vector<AcceptanceResult> results;
    int id = 1;
    for (const auto& check : checks) {
        const auto t0 = Clock::now();
        AcceptanceResult r;
        try {
            r = check();
        } catch (const std::exception& e) {
            r = {id, "check " + std::to_string(id), false, std::string("exception: ") + e.what(), 0.0};
        }
        r.seconds = seconds_since(t0);
        if (out) *out << format_result(r) << std::endl;
        results.push_back(r);
        ++id;
    }
    return results;
}

}  // namespace gausspm
