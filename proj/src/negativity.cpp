#include "gausspm/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/erf.hpp>
#include <boost/random/sobol.hpp>

#include "gausspm/special.hpp"

namespace gausspm {

namespace {

const double kFockVolume = 2.0 / std::sqrt(std::numbers::e) - 1.0;

// Pairwise summation keeps the accumulated rounding independent of length.
double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

// (1 - a/2 - e^{-a/2}) / a^2, stable for small a.
double asymptotic_integrand(double a) {
    if (a < 1e-2) {
        return -1.0 / 8.0 + a / 48.0 - a * a / 384.0 + a * a * a / 3840.0;
    }
    return -(std::expm1(-0.5 * a) + 0.5 * a) / (a * a);
}

// Real part of the Wigner prefactor, evaluated without complex temporaries.
struct RealQuadratic {
    double constant;
    RVec linear;
    RMat quadratic;

    explicit RealQuadratic(const PhotonTunedState& ps)
        : constant(ps.wigner_prefactor().constant.real() +
                   ps.norm() * debug::wigner_constant_offset()),
          linear(ps.wigner_prefactor().linear.real()),
          quadratic(ps.wigner_prefactor().quadratic.real()) {}

    double operator()(const RVec& x) const {
        return constant + linear.dot(x) + x.dot(quadratic * x);
    }
};

double unit_from_bits(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

const char* to_string(RegionKind k) {
    switch (k) {
        case RegionKind::empty: return "empty";
        case RegionKind::ellipse: return "ellipse";
        case RegionKind::generic: return "generic";
    }
    return "unknown";
}

const char* to_string(NegativityMethod m) {
    switch (m) {
        case NegativityMethod::ellipse_quadrature: return "ellipse-quadrature";
        case NegativityMethod::radial_bessel: return "radial-bessel";
        case NegativityMethod::monte_carlo: return "monte-carlo";
        case NegativityMethod::closed_form: return "closed-form";
    }
    return "unknown";
}

NegativeRegion negative_region_sqth(double q, double r, Sign sign) {
    if (!(q >= 0.0 && q < 1.0) || !(r >= 0.0) || !std::isfinite(r)) {
        throw DomainError("squeezed thermal parameters need 0 <= q < 1 and r >= 0");
    }
    if (sign == Sign::subtract && q == 0.0 && r == 0.0) {
        throw AnnihilatingSubtraction("AnnihilatingSubtraction: a|0> = 0", CVec());
    }
    const double mu = (1.0 - q) / (1.0 + q);
    const double s = sign_value(sign);
    // W is negative where a_x^2 x^2 + a_p^2 p^2 < rhs.
    const double ax = mu * std::exp(2.0 * r) + s;
    const double ap = mu * std::exp(-2.0 * r) + s;
    const double rhs = s + mu * std::cosh(2.0 * r);
    if (sign == Sign::subtract && !(q < std::pow(std::tanh(r), 2))) return {};
    if (rhs <= 0.0) return {};
    return {RegionKind::ellipse, std::sqrt(rhs) / std::abs(ax), std::sqrt(rhs) / std::abs(ap)};
}

NegativityReport negative_volume_single_mode(const PhotonTunedState& ps, double tolerance) {
    if (ps.modes() != 1) throw DomainError("single-mode negative volume needs n = 1");
    const GaussianState& g = ps.mother();
    const double s = sign_value(ps.sign());
    Eigen::SelfAdjointEigenSolver<RMat> eig(g.covariance());
    const RVec v = eig.eigenvalues();
    const RMat e = eig.eigenvectors();
    const RVec d_eig = e.transpose() * g.displacement();

    // Eigenbasis of V: lambda_i = a_i t_i - b_i, W ~ M + |lambda|^2 / 2.
    double m_eff = ps.wigner_constant() + debug::wigner_constant_offset();
    RVec a(2), b(2);
    std::vector<int> free_axes, flat_axes;
    for (int i = 0; i < 2; ++i) {
        a[i] = 1.0 / v[i] + s;
        b[i] = d_eig[i] / v[i];
        if (std::abs(a[i]) < 1e-9 * std::max(1.0, 1.0 / v[i])) {
            flat_axes.push_back(i);
            m_eff += 0.5 * b[i] * b[i];
        } else {
            free_axes.push_back(i);
        }
    }
    NegativityReport report{0.0, NegativityMethod::ellipse_quadrature, 0.0};
    if (m_eff >= 0.0 || free_axes.empty()) return report;

    const double radius = std::sqrt(-2.0 * m_eff);
    auto at = [&](const RVec& t) { return wigner_pm(ps, e * t); };

    auto estimate = [&](int order) -> double {
        if (flat_axes.empty()) {
            const double k0 = radius / std::abs(a[0]);
            const double k1 = radius / std::abs(a[1]);
            const RVec centre = b.cwiseQuotient(a);
            const QuadratureRule rho = gauss_legendre(order, 0.0, 1.0);
            const int n_theta = 2 * order;
            std::vector<double> terms;
            terms.reserve(static_cast<std::size_t>(order) * n_theta);
            RVec t(2);
            for (int j = 0; j < n_theta; ++j) {
                const double th = 2.0 * std::numbers::pi * j / n_theta;
                for (int i = 0; i < order; ++i) {
                    t[0] = centre[0] + k0 * rho.nodes[i] * std::cos(th);
                    t[1] = centre[1] + k1 * rho.nodes[i] * std::sin(th);
                    terms.push_back(rho.weights[i] * rho.nodes[i] * at(t));
                }
            }
            return -pairwise_sum(terms.data(), terms.size()) * k0 * k1 * 2.0 *
                   std::numbers::pi / n_theta;
        }
        // Strip: W factorizes and the flat direction is integrated out exactly.
        const int i = free_axes[0];
        const int k = flat_axes[0];
        const double half = radius / std::abs(a[i]);
        const double centre = b[i] / a[i];
        const QuadratureRule rule = gauss_legendre(order, centre - half, centre + half);
        std::vector<double> terms;
        RVec t(2);
        t[k] = d_eig[k];
        for (int j = 0; j < order; ++j) {
            t[i] = rule.nodes[j];
            terms.push_back(rule.weights[j] * at(t));
        }
        return -pairwise_sum(terms.data(), terms.size()) * std::sqrt(std::numbers::pi * v[k]);
    };

    double previous = estimate(8);
    for (int order = 16; order <= 256; order *= 2) {
        const double current = estimate(order);
        if (std::abs(current - previous) < tolerance) {
            report.volume = std::max(0.0, current);
            report.error_estimate = std::abs(current - previous);
            return report;
        }
        previous = current;
    }
    throw ConvergenceError("negative volume did not converge by quadrature order 256");
}

double negative_volume_asymptotic(double q) {
    if (!(q >= 0.0 && q < 1.0)) throw DomainError("q must lie in [0, 1)");
    const double mu = (1.0 - q) / (1.0 + q);
    // Periodic analytic integrand: the trapezoid rule converges geometrically.
    const int n = 4096;
    std::vector<double> terms(n);
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * std::numbers::pi * j / n;
        const double c = std::cos(th), sn = std::sin(th);
        terms[j] = asymptotic_integrand(c * c + mu * mu * sn * sn);
    }
    const double integral = pairwise_sum(terms.data(), n) * 2.0 * std::numbers::pi / n;
    return mu * mu * mu / std::numbers::pi * std::abs(integral);
}

double negative_volume_asymptotic_approx(double q) {
    if (!(q >= 0.0 && q < 1.0)) throw DomainError("q must lie in [0, 1)");
    const double mu = (1.0 - q) / (1.0 + q);
    return kFockVolume * mu * mu * mu;
}

NegativityReport negative_volume_even_odd(double alpha, Parity parity) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be >= 0");
    if (parity == Parity::odd) return {kFockVolume, NegativityMethod::closed_form, 0.0};
    auto integral = [&](int order) {
        const QuadratureRule rule = gauss_legendre(order, 0.0, 1.0 / std::numbers::sqrt2);
        double sum = 0.0;
        for (int i = 0; i < order; ++i) {
            const double r = rule.nodes[i];
            // e^{-r^2 - alpha^2} I0(2 r alpha) = e^{-(r - alpha)^2} [e^{-x} I0(x)]
            sum += rule.weights[i] * std::exp(-(r - alpha) * (r - alpha)) * r *
                   (1.0 - 2.0 * r * r) * bessel_i0_scaled(2.0 * r * alpha);
        }
        return 2.0 / (1.0 + 2.0 * alpha * alpha) * sum;
    };
    const double coarse = integral(32);
    const double fine = integral(64);
    return {fine, NegativityMethod::radial_bessel, std::abs(fine - coarse)};
}

NegativityReport negative_volume_monte_carlo(const PhotonTunedState& ps,
                                             const MonteCarloOptions& options) {
    if (options.replicates < 2) throw DomainError("Monte Carlo needs at least two replicates");
    const int dim = 2 * ps.modes();
    const RealQuadratic prefactor(ps);
    // W^G is the N(d, V/2) density.
    const RMat chol = (0.5 * ps.mother().covariance()).llt().matrixL();
    const RVec& mean = ps.mother().displacement();

    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(options.stream),
                      static_cast<std::uint32_t>(options.stream >> 32)};
    std::mt19937_64 shift_rng(seq);
    std::vector<RVec> shifts;
    for (int k = 0; k < options.replicates; ++k) {
        RVec u(dim);
        for (int i = 0; i < dim; ++i) u[i] = unit_from_bits(shift_rng());
        shifts.push_back(u);
    }

    const int threads = std::max(
        1, std::min(options.replicates,
                    options.threads > 0 ? options.threads
                                        : static_cast<int>(std::thread::hardware_concurrency())));

    auto replicate_mean = [&](int k, std::uint64_t points) {
        boost::random::sobol qrng(dim);
        std::vector<double> values(points);
        RVec u(dim), z(dim);
        for (std::uint64_t p = 0; p < points; ++p) {
            for (int i = 0; i < dim; ++i) {
                double x = static_cast<double>(qrng()) * 0x1.0p-64 + shifts[k][i];
                x -= std::floor(x);
                x = std::clamp(x, 1e-300, 1.0 - 1e-16);
                z[i] = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * x);
            }
            values[p] = std::max(0.0, -prefactor(mean + chol * z));
        }
        return pairwise_sum(values.data(), values.size()) / static_cast<double>(points);
    };

    for (std::uint64_t points = options.initial_points; points <= options.max_points;
         points *= 2) {
        std::vector<double> means(options.replicates);
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (int k = w; k < options.replicates; k += threads) {
                    means[k] = replicate_mean(k, points);
                }
            });
        }
        for (auto& t : pool) t.join();

        const double avg = pairwise_sum(means.data(), means.size()) / options.replicates;
        double var = 0.0;
        for (double m : means) var += (m - avg) * (m - avg);
        var /= options.replicates - 1;
        const double stderr_ = std::sqrt(var / options.replicates);
        if (stderr_ <= options.tolerance) {
            return {avg, NegativityMethod::monte_carlo, stderr_};
        }
    }
    throw ConvergenceError("Monte Carlo standard error above tolerance at the sample limit");
}

NegativityReport negative_volume_two_mode_sqthp(double q, double r, const ModeVector& c,
                                                const MonteCarloOptions& options) {
    if (c.modes() != 2) throw DomainError("two-mode state needs a two-component mode vector");
    const GaussianState sqth = make_sqth(q, r);
    return negative_volume_monte_carlo(
        make_photon_tuned(make_product({sqth, sqth}), Sign::add, c), options);
}

double mean_photon_number(const PhotonTunedState& ps) {
    const int n = ps.modes();
    const GaussianState& g = ps.mother();
    const double scale =
        1.0 / (std::pow(std::numbers::pi, n) * std::sqrt(g.det_covariance()));
    const GaussianWeight weight(g.inverse_covariance(), g.displacement(), scale);
    const PolyExpr number =
        0.5 * (PolyExpr::squared_norm(2 * n) - PolyExpr::constant(2 * n, static_cast<double>(n)));
    return integrate_poly_gaussian(poly_product(ps.wigner_prefactor().to_poly(), number), weight)
        .real();
}

QngReport qng_witness(const PhotonTunedState& ps) {
    if (ps.modes() != 1) throw DomainError("QNG witness is single-mode");
    if (ps.mother().displacement().norm() > 0.0) {
        throw DomainError("QNG witness needs a centred mother state (d = 0)");
    }
    QngReport report;
    report.mean_photon_number = mean_photon_number(ps);
    report.wigner_origin = 2.0 * wigner_pm(ps, RVec::Zero(2));
    const double nbar = report.mean_photon_number;
    report.bound = 2.0 / std::numbers::pi * std::exp(-2.0 * nbar * (1.0 + nbar));
    report.certified = report.wigner_origin <= report.bound;
    return report;
}

}  // namespace gausspm
