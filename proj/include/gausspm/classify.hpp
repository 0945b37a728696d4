#pragma once

// Nonclassicality levels and Wigner negativity of Gaussian states and of
// their single-photon added/subtracted versions.

#include <map>
#include <string>

#include "gausspm/photon_ops.hpp"

namespace gausspm {

/// Wigner negativity is decided except in one multi-mode case.
enum class Verdict { no, yes, unknown };

const char* to_string(Verdict v);

struct ClassificationReport {
    bool classical = false;
    bool strongly_nonclassical = false;  ///< C^2 > 1
    Verdict wigner_negative = Verdict::no;
    /// min_eig_V_minus_I, qcs_squared, mother_qcs_squared, mvm, v1, d_proj
    std::map<std::string, double> witness_values;

    /// "classical", "weakly-nonclassical" or "strongly-nonclassical".
    std::string label() const;
};

/// Tolerance on |v1 - 1| that selects the degenerate single-mode branch.
inline constexpr double kEigenvalueOneTol = 1e-9;

/// Classical iff V >= I (min eigenvalue of V - I >= -1e-10).
ClassificationReport classify_gaussian(const GaussianState& state);

/// Subtraction. Classical iff the mother is. Wigner negativity for n = 1:
/// C^2(mother) > 1 + sum over eigenvalues v_k = 1 of (d.e_k)^2; for n > 1
/// with d = 0 or 1 not in spec(V): conj(m)^T V^-1 m > 1; otherwise
/// no when conj(m)^T V^-1 m <= 1 and unknown above.
ClassificationReport classify_subtracted(const PhotonTunedState& ps);

/// Addition: always Wigner negative, hence nonclassical.
ClassificationReport classify_added(const PhotonTunedState& ps);

/// Dispatches on ps.sign().
ClassificationReport classify(const PhotonTunedState& ps);

struct BoundaryLines {
    double r_classical;  ///< (1/2) ln((1+q)/(1-q)): SqTh classical below
    double r_qcs_one;    ///< (1/2) arccosh((1+q)/(1-q)): C^2_SqTh = 1
};

BoundaryLines boundary_lines(double q);

}  // namespace gausspm
