#include "gausspm/classify.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gausspm/qcs.hpp"

namespace gausspm {

namespace {

constexpr double kClassicalTol = 1e-10;

double min_eig_v_minus_i(const GaussianState& g) {
    Eigen::SelfAdjointEigenSolver<RMat> eig(g.covariance());
    return eig.eigenvalues().minCoeff() - 1.0;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::no: return "no";
        case Verdict::yes: return "yes";
        case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

std::string ClassificationReport::label() const {
    if (classical) return "classical";
    return strongly_nonclassical ? "strongly-nonclassical" : "weakly-nonclassical";
}

ClassificationReport classify_gaussian(const GaussianState& state) {
    ClassificationReport rep;
    const double me = min_eig_v_minus_i(state);
    const double c2 = qcs_gaussian(state).qcs_squared;
    rep.classical = me >= -kClassicalTol;
    rep.strongly_nonclassical = c2 > 1.0;
    rep.wigner_negative = Verdict::no;
    rep.witness_values = {{"min_eig_V_minus_I", me}, {"qcs_squared", c2}};
    return rep;
}

ClassificationReport classify_subtracted(const PhotonTunedState& ps) {
    if (ps.sign() != Sign::subtract) throw DomainError("classify_subtracted needs sign = subtract");
    const GaussianState& g = ps.mother();
    const int n = g.modes();
    ClassificationReport rep;
    const double me = min_eig_v_minus_i(g);
    const double mother_c2 = qcs_gaussian(g).qcs_squared;
    const double c2 = qcs_photon_tuned(ps).qcs_squared;
    const double mvm = ps.m().dot(g.inverse_covariance().cast<cplx>() * ps.m()).real();
    rep.classical = me >= -kClassicalTol;
    rep.strongly_nonclassical = c2 > 1.0;
    rep.witness_values = {{"min_eig_V_minus_I", me},
                          {"qcs_squared", c2},
                          {"mother_qcs_squared", mother_c2},
                          {"mvm", mvm}};

    Eigen::SelfAdjointEigenSolver<RMat> eig(g.covariance());
    const RVec& v = eig.eigenvalues();
    const RVec d_eig = eig.eigenvectors().transpose() * g.displacement();
    if (n == 1) {
        double d_proj = 0.0;
        for (int k = 0; k < 2; ++k) {
            if (std::abs(v[k] - 1.0) < kEigenvalueOneTol) d_proj += d_eig[k] * d_eig[k];
        }
        rep.witness_values["v1"] = v[0];
        rep.witness_values["d_proj"] = d_proj;
        rep.wigner_negative = mother_c2 > 1.0 + d_proj ? Verdict::yes : Verdict::no;
    } else {
        bool one_in_spectrum = false;
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            one_in_spectrum = one_in_spectrum || std::abs(v[k] - 1.0) < kEigenvalueOneTol;
        }
        rep.witness_values["v1"] = v[0];
        const bool centred = g.displacement().norm() == 0.0;
        if (centred || !one_in_spectrum) {
            rep.wigner_negative = mvm > 1.0 ? Verdict::yes : Verdict::no;
        } else {
            rep.wigner_negative = mvm > 1.0 ? Verdict::unknown : Verdict::no;
        }
    }
    return rep;
}

ClassificationReport classify_added(const PhotonTunedState& ps) {
    if (ps.sign() != Sign::add) throw DomainError("classify_added needs sign = add");
    const GaussianState& g = ps.mother();
    ClassificationReport rep;
    const double c2 = qcs_photon_tuned(ps).qcs_squared;
    rep.classical = false;
    rep.strongly_nonclassical = c2 > 1.0;
    rep.wigner_negative = Verdict::yes;
    rep.witness_values = {{"min_eig_V_minus_I", min_eig_v_minus_i(g)},
                          {"qcs_squared", c2},
                          {"mother_qcs_squared", qcs_gaussian(g).qcs_squared},
                          {"mvm", ps.m().dot(g.inverse_covariance().cast<cplx>() * ps.m()).real()}};
    return rep;
}

ClassificationReport classify(const PhotonTunedState& ps) {
    return ps.sign() == Sign::add ? classify_added(ps) : classify_subtracted(ps);
}

BoundaryLines boundary_lines(double q) {
    if (!(q >= 0.0 && q < 1.0)) throw DomainError("q must lie in [0, 1)");
    const double nu = (1.0 + q) / (1.0 - q);
    return {0.5 * std::log(nu), 0.5 * std::acosh(nu)};
}

}  // namespace gausspm
