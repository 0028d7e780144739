#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "g2forge/form.hpp"

namespace g2forge {

/// Lie algebra given by its Chevalley-Eilenberg differential on 1-forms:
/// d e^k is a 2-form with exact coefficients.  The convention is
/// d e^k (X, Y) = -e^k([X, Y]), so the "differential notation"
/// (0,0,e^{15},e^{25},0,e^{12}) reads off directly as d e^3 = e^{15} etc.
class LieAlgebra {
public:
    LieAlgebra() = default;
    explicit LieAlgebra(std::vector<FormQ> d1);

    static LieAlgebra abelian(int dim);

    int dim() const { return dim_; }
    const FormQ& d1(int k) const { return d1_[k - 1]; }  // d e^k, 1-based
    const std::vector<FormQ>& d1() const { return d1_; }

    /// [e_i, e_j] as exact frame components (i, j 1-based).
    std::vector<QSqrt6> bracket(int i, int j) const;
    /// ad_{e_i} as a matrix, double precision.
    Eigen::MatrixXd ad(int i) const;
    /// Structure constants as doubles: c[k][i*dim+j] with [e_i,e_j] = c^k_{ij} e_k.
    const std::vector<std::vector<double>>& brackets_numeric() const { return brackets_d_; }

    /// Subalgebra spanned by e_1..e_m; terms of d touching dropped indices
    /// are discarded (valid when the span is closed under the bracket,
    /// e.g. the nilradical of a rank-one extension).
    LieAlgebra restricted(int m) const;

private:
    int dim_ = 0;
    std::vector<FormQ> d1_;
    std::vector<std::vector<QSqrt6>> brackets_;         // [i*dim+j] -> components
    std::vector<std::vector<double>> brackets_d_;       // per k: matrix c^k_{ij}
    void compute_brackets();
};

/// Chevalley-Eilenberg differential extended to k-forms by the Leibniz rule.
template <class R>
Form<R> ce_d(const LieAlgebra& algebra, const Form<R>& x) {
    Form<R> out(x.dim(), x.degree() + 1);
    for (const auto& [m, c] : x.coeffs()) {
        int position = 0;
        for (int i = 1; i <= x.dim(); ++i) {
            IndexMask bit = 1u << (i - 1);
            if (!(m & bit)) continue;
            ++position;
            const FormQ& di = algebra.d1(i);
            if (di.is_zero()) continue;
            Form<R> rest(x.dim(), mask_degree(m) - 1);
            rest.add(m & ~bit, (position % 2 == 1) ? c : -c);
            out += wedge(di.cast<R>(), rest);
        }
    }
    return out;
}

struct JacobiReport {
    bool ok = true;
    int witness = 0;       // 1-based index of the failing e^k (0 when ok)
    FormQ residual;        // d(d e^k) for the witness
};

/// d^2 = 0 on all frame 1-forms, checked exactly; equivalent to Jacobi.
JacobiReport jacobi_check(const LieAlgebra& algebra);

struct CentralSeries {
    std::vector<int> dims;         // dim n^0 >= dim n^1 >= ...
    std::optional<int> step;       // least s with n^s = 0; empty if not nilpotent
    bool nilpotent() const { return step.has_value(); }
};

CentralSeries lower_central_series(const LieAlgebra& algebra);

bool is_unimodular(const LieAlgebra& algebra);

/// Rank-one solvable extension s = n + R e_{n+1} with [e_{n+1}, X] = D(X).
struct SolvExtension {
    LieAlgebra base;
    std::vector<std::vector<QSqrt6>> D;  // exact dim x dim, D[i][j] = coeff of e_{i+1} in D(e_{j+1})
    Rat m;                               // scale parameter, recorded for reports
    LieAlgebra result;                   // dim n+1
};

/// Throws NotDerivation (with the witness pair in the message) when D does
/// not satisfy the Leibniz rule on the base.
SolvExtension solvable_extension(const LieAlgebra& base, const std::vector<std::vector<QSqrt6>>& D,
                                 const Rat& m);

struct EigenvalueType {
    std::vector<double> eigenvalues;   // strictly increasing
    std::vector<int> multiplicities;
    bool real_diagonalizable = true;   // false when complex pairs show up (reported, not thrown)
    std::string str() const;
};

EigenvalueType eigenvalue_type(const Eigen::MatrixXd& D, double cluster_tol = 1e-9);

struct IwasawaReport {
    bool self_adjoint = false;
    bool positive_definite = false;
    bool nonzero = false;
    bool pass() const { return self_adjoint && positive_definite && nonzero; }
};

/// ad_{e_{n+1}} restricted to the base must be nonzero, self-adjoint for the
/// metric and positive-definite.
IwasawaReport iwasawa_check(const SolvExtension& ext, const FrameMetric<double>& metric);

/// Exterior differential for t-dependent invariant forms, with e^{t_index}
/// playing the role of dt: d(c(t) e^I) = c'(t) e^{t_index} ^ e^I + c(t) d e^I.
/// Requires d e^{t_index} = 0.
FormS time_dependent_d(const LieAlgebra& algebra, const FormS& x, int t_index);

} // namespace g2forge
