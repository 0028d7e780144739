#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "g2forge/lie_algebra.hpp"

namespace g2forge {

/// Levi-Civita connection of a left-invariant metric, Koszul formula:
/// 2 <grad_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y> on frame triples.
struct Connection {
    int dim = 0;
    std::vector<double> gamma;  // Gamma^k_{ij} = e^k(nabla_{e_i} e_j), k-major: [k][i][j]
    double at(int k, int i, int j) const { return gamma[(k * dim + i) * dim + j]; }
};

Connection koszul_connection(const LieAlgebra& algebra, const FrameMetric<double>& g);

/// Curvature operator R(e_i, e_j) = nabla_i nabla_j - nabla_j nabla_i -
/// nabla_{[e_i,e_j]} as a matrix acting on frame components.
Eigen::MatrixXd curvature_operator(const LieAlgebra& algebra, const Connection& c, int i, int j);

struct CurvatureReport {
    Eigen::MatrixXd ricci;
    double scalar_curvature = 0;
    std::optional<double> einstein_lambda;  // present when Ric = lambda g within eps_einstein
    std::optional<int> holonomy_dim;
    std::optional<bool> in_g2;
    double einstein_residual = 0;
};

inline constexpr double kEpsEinstein = 1e-9;

/// Ricci tensor Ric(X, Y) = tr(Z -> R(Z, X) Y) with the Einstein test.
CurvatureReport ricci(const LieAlgebra& algebra, const FrameMetric<double>& g);

/// Curvature of a t-dependent orthonormal coframe e~^i = A^i_j(t) e^j over a
/// 7-dimensional algebra with d e^{t_index} = 0.  A must be invertible with
/// one single-term ScalarExpr entry per row/column (permuted diagonal);
/// throws NotOrthonormal / UnresolvableStructureFunctions otherwise.
/// Everything is computed exactly; samples are evaluation points.
struct CoframeCurvature {
    int dim = 0;
    std::vector<FormS> connection;  // omega_{ij}, row-major, 1-forms in the e-frame
    std::vector<FormS> curvature;   // Omega_{ij}, 2-forms in the e-frame
    std::vector<ScalarExpr> ricci;  // Ric_{ab} in the coframe, row-major (exact)
    std::vector<double> samples;
    std::vector<CurvatureReport> reports;        // per sample
    std::vector<std::vector<Eigen::MatrixXd>> operators;  // per sample: R(e~_i, e~_j), i<j

    bool ricci_zero() const {
        for (const auto& r : ricci)
            if (!r.is_zero()) return false;
        return true;
    }
    double ricci_max_abs() const;  // max |Ric_{ab}| over samples
};

CoframeCurvature coframe_curvature(const LieAlgebra& algebra, const std::vector<FormS>& coframe,
                                   const std::vector<double>& samples, int t_index = 7);

struct HolonomyReport {
    int dim = 0;
    bool in_g2 = false;
    double max_annihilation_residual = 0;  // max |A . phi| / (|A| |phi|) over generators
};

/// Span of the curvature operators closed under commutators (rank decisions
/// by singular values at 1e-8 * sigma_max); in_g2 checks that every
/// generator annihilates phi under the derivation action on Lambda^3.
HolonomyReport holonomy_span(const std::vector<Eigen::MatrixXd>& operators, const Form<double>& phi);

} // namespace g2forge
