#pragma once

#include <Eigen/Dense>

#include "g2forge/lie_algebra.hpp"

namespace g2forge {

struct HitchinResult {
    Eigen::MatrixXd J;   // almost complex structure, J^2 = -Id
    double lambda = 0;   // Hitchin invariant, negative on stable forms of positive type
};

/// Recovers J from a stable 3-form rho in dimension 6 (Hitchin).
/// K(X) vol = 1/2 (i_X rho) ^ rho under the pairing Lambda^5 = V (x) Lambda^6,
/// lambda = tr(K^2)/6, J = K / sqrt(-lambda).
/// Throws UnstableForm when lambda >= -1e-10 * |rho|^4.
HitchinResult hitchin_j(const Form<double>& rho, const Form<double>& vol);

/// h(X, Y) = omega(X, JY); throws NonSymmetric when omega is not
/// J-compatible.  The orientation is the sign of the omega^3 coefficient.
FrameMetric<double> metric_from(const Form<double>& omega, const Eigen::MatrixXd& J);

struct SU3Structure {
    LieAlgebra algebra;      // dim 6
    Form<double> omega;      // 2-form
    Form<double> psi_plus;   // stable 3-form
    // derived
    Eigen::MatrixXd J;
    Form<double> psi_minus;  // J acting slot-wise on psi_plus
    FrameMetric<double> h;
    double lambda = 0;
};

/// Builds the derived data (J via hitchin_j with vol = e^{1..6}, psi_minus,
/// metric).  Throws UnstableForm / NonSymmetric on invalid input.
SU3Structure make_su3(LieAlgebra algebra, Form<double> omega, Form<double> psi_plus);

struct SU3Checks {
    bool compatible = false;     // psi+ ^ omega = 0 and psi- ^ omega = 0
    bool normalized = false;     // psi+ ^ psi- = (2/3) omega^3
    bool positive = false;       // h positive-definite
    bool stable = false;         // lambda < 0
    double compat_residual = 0;  // relative
    double norm_residual = 0;    // relative deviation of the volume ratio
    double volume_ratio = 0;     // (psi+ ^ psi-) / omega^3
    bool all() const { return compatible && normalized && positive && stable; }
};

/// The expected ratio psi+ ^ psi- / omega^3; +2/3 under this library's
/// conventions (fixed by brute-force expansion of the standard structure).
inline constexpr double kSU3VolumeRatio = 2.0 / 3.0;

SU3Checks su3_checks(const SU3Structure& s, double tol = 1e-10);

struct SU3ClassReport {
    bool torsion_free = false;   // d omega = d psi+ = d psi- = 0
    bool half_flat = false;      // d psi+ = 0 and d(omega^2) = 0
    bool symplectic = false;     // d omega = 0
    bool complex_structure = false;  // Nijenhuis tensor of J vanishes
    double d_omega = 0, d_psi_plus = 0, d_psi_minus = 0, d_omega2 = 0, nijenhuis = 0;
};

SU3ClassReport class_predicates(const SU3Structure& s, double tol = 1e-10);

/// Slot-wise action of a linear map on a form (pullback by M).
Form<double> apply_linear(const Eigen::MatrixXd& M, const Form<double>& x);

} // namespace g2forge
