#pragma once

#include <Eigen/Dense>

#include "g2forge/su3_structure.hpp"

namespace g2forge {

struct G2Structure {
    LieAlgebra algebra;        // dim 7
    Form<double> phi;          // positive 3-form
    FrameMetric<double> g;     // induced metric; g.orientation is the phi-induced one
    Form<double> star_phi;     // Hodge dual of phi for g
};

/// Induced metric of a 3-form of positive type:
/// B(X,Y) vol = 1/6 (i_X phi) ^ (i_Y phi) ^ phi, then g = B det(B)^{-1/9}
/// (real ninth root, so the formula is orientation-free); the sign of det(B)
/// is the phi-induced orientation.  Throws NonPositiveType.
FrameMetric<double> metric_from_phi(const Form<double>& phi);

/// phi = omega ^ e^{e7} + psi+ on the extension algebra.
G2Structure build_phi(const SU3Structure& s, const LieAlgebra& extension, int e7 = 7);

/// G2 structure directly from a 7-dimensional algebra and a 3-form.
G2Structure make_g2(LieAlgebra algebra, Form<double> phi);

/// omega = e_{e7} interior phi, psi+ = phi - omega ^ e^{e7}, restricted to
/// the 6-dimensional subalgebra.
SU3Structure su3_from_g2(const G2Structure& gs, int e7 = 7);

/// Intrinsic torsion in the Lee-form normalization
///   d phi   = tau0 *phi + tau1 ^ phi + *tau3,
///   d *phi  = (4/3) tau1 ^ *phi + tau2 ^ phi,
/// with tau2 in Lambda^2_14 and tau3 in Lambda^3_27.  The conformal factor
/// of a locally conformally parallel structure satisfies df = -tau1 / 3.
struct TorsionComponents {
    double tau0 = 0;
    Form<double> tau1;  // 1-form
    Form<double> tau2;  // Lambda^2_14
    Form<double> tau3;  // Lambda^3_27
    double residual_dphi = 0;      // relative reconstruction residuals
    double residual_dstar = 0;
    double tau1_mismatch = 0;      // disagreement of the two tau1 estimates
    int rank_system1 = 0;          // expected 35
    int rank_system2 = 0;          // expected 21
};

/// Least-squares solve of the two torsion systems (each square after the
/// type constraints are imposed via a nullspace basis).  The two tau1
/// estimates must agree within tol; throws InconsistentTau1 otherwise.
TorsionComponents torsion(const G2Structure& gs, double tol = 1e-9);

/// Rebuild d phi and d *phi from the components (for residual checks).
Form<double> reconstruct_dphi(const G2Structure& gs, const TorsionComponents& tc);
Form<double> reconstruct_dstar_phi(const G2Structure& gs, const TorsionComponents& tc);

struct FernandezGrayClass {
    bool t0 = false, t1 = false, t2 = false, t3 = false;
    std::string label() const;  // "T1+T3", "parallel" when all vanish
};

FernandezGrayClass fg_class(const TorsionComponents& tc, double scale, double eps_class = 1e-8);

/// Torsion 3-form of the unique G2 connection with skew torsion,
/// T = 7/6 tau0 phi - *dphi + *(4/3 tau1 ^ phi) (requires tau2 = 0; throws
/// Tau2NonZero).  The tau1 factor matches the Lee-form normalization above.
Form<double> skew_torsion(const G2Structure& gs, const TorsionComponents& tc, double tol = 1e-8);

struct ConformalParallelReport {
    bool pass = false;
    bool dphi_zero = false;
    bool dstar_zero = false;
    std::size_t residual_terms_dphi = 0;
    std::size_t residual_terms_dstar = 0;
    std::string residual_dphi;   // printable leftover, empty when exact zero
    std::string residual_dstar;
};

/// Exact verification that e^{3f} phi and e^{4f} *phi are closed for
/// f = -m t, over ScalarExpr coefficients with e^{t_index} = dt.
/// Requires d e^{t_index} = 0.  The Hodge dual is taken in the
/// phi-induced orientation on the orthonormal frame.
ConformalParallelReport conformal_parallel_check(const LieAlgebra& algebra, const FormQ& phi,
                                                 const Rat& m, int t_index = 7);

} // namespace g2forge
