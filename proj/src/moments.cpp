#include "gausspm/moments.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

namespace gausspm {

namespace {

int total_degree(const PolyExpr::Exponent& e) {
    int deg = 0;
    for (auto k : e) deg += k;
    return deg;
}

using IndexList = std::vector<std::uint8_t>;

// E[y_{i1} ... y_{ik}] for a centred Gaussian with covariance `cov`, by
// pairing the first index with each remaining one. Keys are sorted lists,
// so permutations of the same monomial share one entry.
class IsserlisCache {
public:
    explicit IsserlisCache(const RMat& cov) : cov_(cov) {}

    double moment(const IndexList& idx) {
        if (idx.empty()) return 1.0;
        if (idx.size() % 2 == 1) return 0.0;
        if (auto it = memo_.find(idx); it != memo_.end()) return it->second;

        double sum = 0.0;
        double previous = 0.0;
        const auto first = idx[0];
        for (std::size_t j = 1; j < idx.size(); ++j) {
            // Equal indices give identical sub-problems; count them once.
            if (j > 1 && idx[j] == idx[j - 1]) {
                sum += previous;
                continue;
            }
            IndexList rest;
            rest.reserve(idx.size() - 2);
            for (std::size_t k = 1; k < idx.size(); ++k) {
                if (k != j) rest.push_back(idx[k]);
            }
            const double cov = cov_(first, idx[j]);
            previous = cov == 0.0 ? 0.0 : cov * moment(rest);
            sum += previous;
        }
        memo_.emplace(idx, sum);
        return sum;
    }

private:
    const RMat& cov_;
    std::map<IndexList, double> memo_;
};

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

PolyExpr::PolyExpr(int variables) : variables_(variables) {
    if (variables < 1 || variables > kMaxPolyVariables) {
        throw DomainError("polynomial variable count out of range");
    }
}

PolyExpr PolyExpr::constant(int variables, cplx value) {
    PolyExpr p(variables);
    p.add_term(Exponent{}, value);
    return p;
}

PolyExpr PolyExpr::variable(int variables, int index) {
    PolyExpr p(variables);
    Exponent e{};
    e[index] = 1;
    p.add_term(e, 1.0);
    return p;
}

PolyExpr PolyExpr::affine(cplx c0, const CVec& coeffs) {
    PolyExpr p = constant(static_cast<int>(coeffs.size()), c0);
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        Exponent e{};
        e[i] = 1;
        p.add_term(e, coeffs[i]);
    }
    return p;
}

PolyExpr PolyExpr::squared_norm(int variables) {
    PolyExpr p(variables);
    for (int i = 0; i < variables; ++i) {
        Exponent e{};
        e[i] = 2;
        p.add_term(e, 1.0);
    }
    return p;
}

int PolyExpr::degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        if (c != cplx(0.0)) deg = std::max(deg, total_degree(e));
    }
    return deg;
}

void PolyExpr::add_term(const Exponent& exponent, cplx coefficient) {
    for (int i = variables_; i < kMaxPolyVariables; ++i) {
        if (exponent[i] != 0) throw DomainError("exponent references a missing variable");
    }
    if (total_degree(exponent) > kMaxPolyDegree) {
        throw DomainError("polynomial degree exceeds the supported bound");
    }
    terms_[exponent] += coefficient;
}

cplx PolyExpr::coefficient(const Exponent& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

cplx PolyExpr::evaluate(const RVec& x) const {
    cplx sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double mono = 1.0;
        for (int i = 0; i < variables_; ++i) mono *= std::pow(x[i], e[i]);
        sum += c * mono;
    }
    return sum;
}

PolyExpr PolyExpr::conjugate() const {
    PolyExpr out(variables_);
    for (const auto& [e, c] : terms_) out.terms_[e] = std::conj(c);
    return out;
}

PolyExpr& PolyExpr::operator+=(const PolyExpr& other) {
    if (other.variables_ != variables_) throw DomainError("polynomial dimension mismatch");
    for (const auto& [e, c] : other.terms_) terms_[e] += c;
    return *this;
}

PolyExpr& PolyExpr::operator-=(const PolyExpr& other) {
    if (other.variables_ != variables_) throw DomainError("polynomial dimension mismatch");
    for (const auto& [e, c] : other.terms_) terms_[e] -= c;
    return *this;
}

PolyExpr& PolyExpr::operator*=(cplx factor) {
    for (auto& [e, c] : terms_) c *= factor;
    return *this;
}

PolyExpr poly_product(const PolyExpr& a, const PolyExpr& b) {
    if (a.variables() != b.variables()) throw DomainError("polynomial dimension mismatch");
    if (a.degree() + b.degree() > kMaxPolyDegree) {
        throw DomainError("polynomial product exceeds the supported degree");
    }
    PolyExpr out(a.variables());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            PolyExpr::Exponent e{};
            for (int i = 0; i < kMaxPolyVariables; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

GaussianWeight::GaussianWeight(RMat precision, RVec shift, double scale)
    : q_(std::move(precision)), s_(std::move(shift)), scale_(scale) {
    if (q_.rows() != q_.cols() || q_.rows() != s_.size() || q_.rows() == 0) {
        throw DomainError("Gaussian weight dimensions are inconsistent");
    }
    const double mag = std::max(1.0, q_.cwiseAbs().maxCoeff());
    if ((q_ - q_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * mag) {
        throw DomainError("Gaussian precision matrix is not symmetric");
    }
    q_ = 0.5 * (q_ + q_.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<RMat> eig(q_);
    if (eig.eigenvalues().minCoeff() <= 0.0) {
        throw DomainError("Gaussian precision matrix is not positive definite");
    }
    cov_ = 0.5 * q_.inverse();
    const double dim = static_cast<double>(q_.rows());
    mass_ = scale_ * std::pow(std::numbers::pi, dim / 2.0) / std::sqrt(eig.eigenvalues().prod());
}

double GaussianWeight::evaluate(const RVec& x) const {
    const RVec y = x - s_;
    return scale_ * std::exp(-y.dot(q_ * y));
}

cplx integrate_poly_gaussian(const PolyExpr& p, const GaussianWeight& w) {
    if (p.variables() != w.shift().size()) {
        throw DomainError("polynomial and weight dimensions differ");
    }
    const int dim = p.variables();
    IsserlisCache cache(w.covariance());
    const RVec& s = w.shift();

    cplx total = 0.0;
    for (const auto& [alpha, coeff] : p.terms()) {
        if (coeff == cplx(0.0)) continue;
        // Expand prod_i (y_i + s_i)^{alpha_i} over all beta <= alpha.
        PolyExpr::Exponent beta{};
        while (true) {
            double factor = 1.0;
            for (int i = 0; i < dim; ++i) {
                factor *= binomial(alpha[i], beta[i]) * std::pow(s[i], alpha[i] - beta[i]);
            }
            if (factor != 0.0) {
                IndexList idx;
                for (int i = 0; i < dim; ++i) {
                    for (int k = 0; k < beta[i]; ++k) idx.push_back(static_cast<std::uint8_t>(i));
                }
                total += coeff * factor * cache.moment(idx);
            }
            int i = 0;
            while (i < dim && beta[i] == alpha[i]) {
                beta[i] = 0;
                ++i;
            }
            if (i == dim) break;
            ++beta[i];
        }
    }
    return total * w.mass();
}

}  // namespace gausspm
