#include "g2forge/curvature.hpp"

#include <cmath>

namespace g2forge {

Connection koszul_connection(const LieAlgebra& algebra, const FrameMetric<double>& g) {
    const int n = algebra.dim();
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = g.at(i, j);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw SingularMetric("koszul_connection: metric is not positive-definite");

    const auto& c = algebra.brackets_numeric();
    auto metric_bracket = [&](int a, int b, int z) {
        // <[e_a, e_b], e_z>
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            double ck = c[k][a * n + b];
            if (ck != 0.0) s += ck * G(k, z);
        }
        return s;
    };

    Connection conn;
    conn.dim = n;
    conn.gamma.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    Eigen::MatrixXd lowered(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd w(n);
            for (int z = 0; z < n; ++z) {
                double v = metric_bracket(i, j, z) - metric_bracket(j, z, i) + metric_bracket(z, i, j);
                w(z) = 0.5 * v;
            }
            Eigen::VectorXd gamma = ldlt.solve(w);  // raise the index
            for (int k = 0; k < n; ++k) conn.gamma[(k * n + i) * n + j] = gamma(k);
        }
    }
    return conn;
}

Eigen::MatrixXd curvature_operator(const LieAlgebra& algebra, const Connection& c, int i, int j) {
    const int n = c.dim;
    Eigen::MatrixXd Ni(n, n), Nj(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            Ni(k, l) = c.at(k, i, l);
            Nj(k, l) = c.at(k, j, l);
        }
    Eigen::MatrixXd R = Ni * Nj - Nj * Ni;
    // - nabla_{[e_i, e_j]}
    const auto& br = algebra.brackets_numeric();
    for (int a = 0; a < n; ++a) {
        double ca = br[a][i * n + j];
        if (ca == 0.0) continue;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) R(k, l) -= ca * c.at(k, a, l);
    }
    return R;
}

namespace {

CurvatureReport einstein_test(Eigen::MatrixXd ric, const Eigen::MatrixXd& G) {
    CurvatureReport rep;
    rep.ricci = std::move(ric);
    Eigen::MatrixXd ginv_ric = G.ldlt().solve(rep.ricci);
    rep.scalar_curvature = ginv_ric.trace();
    const int n = static_cast<int>(G.rows());
    double lambda = rep.scalar_curvature / n;
    double denom = std::max(rep.ricci.norm(), 1e-300);
    rep.einstein_residual = (rep.ricci - lambda * G).norm() / denom;
    if (rep.ricci.norm() <= 1e-12 * std::max(1.0, G.norm())) {
        // flat counts as Einstein with lambda = 0
        rep.einstein_lambda = 0.0;
        rep.einstein_residual = 0.0;
    } else if (rep.einstein_residual <= kEpsEinstein) {
        rep.einstein_lambda = lambda;
    }
    return rep;
}

} // namespace

CurvatureReport ricci(const LieAlgebra& algebra, const FrameMetric<double>& g) {
    const int n = algebra.dim();
    Connection c = koszul_connection(algebra, g);
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = g.at(i, j);

    // Ric(e_a, e_b) = sum_k e^k( R(e_k, e_a) e_b )
    Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
    std::vector<Eigen::MatrixXd> ops(n * n);
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a) ops[k * n + a] = curvature_operator(algebra, c, k, a);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += ops[k * n + a](k, b);
            ric(a, b) = s;
        }
    ric = 0.5 * (ric + ric.transpose());
    return einstein_test(std::move(ric), G);
}

namespace {

struct SingleTerm {
    int col = -1;        // frame index (0-based) carrying the single term
    ScalarExpr value;    // the coefficient
    ScalarExpr inverse;  // exact reciprocal
};

ScalarExpr reciprocal_of_single_term(const ScalarTerm& t) {
    return ScalarExpr::term(t.c.inverse(), t.s, -t.r, -t.a);
}

} // namespace

CoframeCurvature coframe_curvature(const LieAlgebra& algebra, const std::vector<FormS>& coframe,
                                   const std::vector<double>& samples, int t_index) {
    const int n = algebra.dim();
    if (static_cast<int>(coframe.size()) != n)
        throw NotOrthonormal("coframe_curvature: need one coframe 1-form per dimension");

    // The coframe matrix must be a permuted diagonal of single ScalarExpr
    // terms so that its inverse stays in the ring.
    std::vector<SingleTerm> rows(n);
    std::vector<int> column_used(n, 0);
    for (int i = 0; i < n; ++i) {
        const auto& f = coframe[i];
        if (f.degree() != 1 || f.term_count() != 1)
            throw UnresolvableStructureFunctions(
                "coframe_curvature: coframe rows must be single-term multiples of frame covectors");
        const auto& [mask, c] = *f.coeffs().begin();
        auto terms = c.terms();
        if (terms.size() != 1)
            throw UnresolvableStructureFunctions(
                "coframe_curvature: coframe coefficients must be single ScalarExpr terms");
        rows[i].col = mask_indices(mask)[0] - 1;
        rows[i].value = c;
        rows[i].inverse = reciprocal_of_single_term(terms[0]);
        column_used[rows[i].col] += 1;
    }
    for (int j = 0; j < n; ++j)
        if (column_used[j] != 1) throw NotOrthonormal("coframe_curvature: coframe is not a frame");

    // e^j in terms of the coframe: e^j = inv_i * e~^i where rows[i].col == j.
    std::vector<int> row_of_col(n);
    for (int i = 0; i < n; ++i) row_of_col[rows[i].col] = i;

    // re-express a 2-form given in the e-frame in the coframe basis
    auto to_coframe = [&](const FormS& f) {
        // coefficient on e~^{ab} of f = sum over masks
        std::vector<std::vector<ScalarExpr>> c(n, std::vector<ScalarExpr>(n));
        for (const auto& [mask, v] : f.coeffs()) {
            auto idx = mask_indices(mask);
            int p = idx[0] - 1, q = idx[1] - 1;
            int a = row_of_col[p], b = row_of_col[q];
            ScalarExpr w = v * rows[a].inverse * rows[b].inverse;
            if (a < b) {
                c[a][b] += w;
            } else {
                c[b][a] -= w;
            }
        }
        return c;
    };

    // T_{ijk} = d e~^i (e~_j, e~_k)
    std::vector<std::vector<std::vector<ScalarExpr>>> T(
        n, std::vector<std::vector<ScalarExpr>>(n, std::vector<ScalarExpr>(n)));
    for (int i = 0; i < n; ++i) {
        FormS d = time_dependent_d(algebra, coframe[i], t_index);
        auto c = to_coframe(d);
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                T[i][j][k] = c[j][k];
                T[i][k][j] = -c[j][k];
            }
    }

    // Levi-Civita connection for the orthonormal coframe:
    // omega_{ij}(e~_k) = 1/2 (T_{ijk} + T_{jki} - T_{kij}).
    CoframeCurvature out;
    out.dim = n;
    out.connection.assign(static_cast<std::size_t>(n) * n, FormS(n, 1));
    auto conn = [&](int i, int j) -> FormS& { return out.connection[i * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            FormS w(n, 1);
            for (int k = 0; k < n; ++k) {
                ScalarExpr v = T[i][j][k] + T[j][k][i] - T[k][i][j];
                if (v.is_zero()) continue;
                // express in the e-frame: e~^k = value_k e^{col_k}
                ScalarExpr half = ScalarExpr::constant(QSqrt6(Rat(1, 2))) * v * rows[k].value;
                w.add(1u << rows[k].col, std::move(half));
            }
            conn(i, j) = std::move(w);
        }

    // Omega_{ij} = d omega_{ij} + omega_{ik} ^ omega_{kj}
    out.curvature.assign(static_cast<std::size_t>(n) * n, FormS(n, 2));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            FormS K = time_dependent_d(algebra, conn(i, j), t_index);
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                K += wedge(conn(i, k), conn(k, j));
            }
            out.curvature[i * n + j] = K;
            out.curvature[j * n + i] = -K;
        }

    // Evaluate Omega on coframe vectors: e~_a = inverse_a e_{col_a}.
    auto omega_on = [&](const FormS& K, int a, int b) {
        ScalarExpr acc;
        int pa = rows[a].col, pb = rows[b].col;
        IndexMask mask = (1u << pa) | (1u << pb);
        if (pa == pb) return acc;
        const ScalarExpr coeff = K.coeff(mask);
        if (coeff.is_zero()) return acc;
        int sign = (pa < pb) ? 1 : -1;
        acc = coeff * rows[a].inverse * rows[b].inverse;
        if (sign < 0) acc = -acc;
        return acc;
    };

    // Ric_{ab} = sum_i Omega_{ib}(e~_i, e~_a)
    out.ricci.assign(static_cast<std::size_t>(n) * n, ScalarExpr{});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ScalarExpr s;
            for (int i = 0; i < n; ++i) {
                if (i == b) continue;
                s += omega_on(out.curvature[i * n + b], i, a);
            }
            out.ricci[a * n + b] = std::move(s);
        }

    // Sample evaluations: reports and curvature operators.
    out.samples = samples;
    for (double t : samples) {
        Eigen::MatrixXd ric(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) ric(a, b) = out.ricci[a * n + b].eval(t);
        ric = 0.5 * (ric + ric.transpose());
        Eigen::MatrixXd G = Eigen::MatrixXd::Identity(n, n);
        out.reports.push_back([&] {
            CurvatureReport rep;
            rep.ricci = ric;
            rep.scalar_curvature = ric.trace();
            double denom = std::max(ric.norm(), 1e-300);
            double lambda = rep.scalar_curvature / n;
            rep.einstein_residual = (ric - lambda * G).norm() / denom;
            if (ric.norm() <= 1e-12) {
                rep.einstein_lambda = 0.0;
                rep.einstein_residual = 0.0;
            } else if (rep.einstein_residual <= kEpsEinstein) {
                rep.einstein_lambda = lambda;
            }
            return rep;
        }());
        std::vector<Eigen::MatrixXd> ops;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                Eigen::MatrixXd R(n, n);
                // matrix of R(e~_a, e~_b): R^i_j = Omega_{ij}(e~_a, e~_b)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        if (i == j) {
                            R(i, j) = 0.0;
                            continue;
                        }
                        R(i, j) = omega_on(out.curvature[i * n + j], a, b).eval(t);
                    }
                ops.push_back(std::move(R));
            }
        out.operators.push_back(std::move(ops));
    }
    return out;
}

double CoframeCurvature::ricci_max_abs() const {
    double m = 0.0;
    for (const auto& rep : reports) m = std::max(m, rep.ricci.lpNorm<Eigen::Infinity>());
    return m;
}

namespace {

Eigen::VectorXd vectorize_skew(const Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    Eigen::VectorXd v(n * (n - 1) / 2);
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) v(idx++) = A(i, j);
    return v;
}

} // namespace

HolonomyReport holonomy_span(const std::vector<Eigen::MatrixXd>& operators, const Form<double>& phi) {
    HolonomyReport rep;
    if (operators.empty()) {
        rep.in_g2 = true;
        return rep;
    }
    const int n = static_cast<int>(operators.front().rows());
    const int vdim = n * (n - 1) / 2;

    std::vector<Eigen::MatrixXd> generators;  // orthonormalized spanning set
    Eigen::MatrixXd basis(vdim, 0);

    double scale = 0.0;
    for (const auto& op : operators) scale = std::max(scale, op.norm());
    if (scale == 0.0) {
        rep.in_g2 = true;
        return rep;
    }
    const double threshold = 1e-8;

    auto try_insert = [&](const Eigen::MatrixXd& op) {
        Eigen::VectorXd v = vectorize_skew(op);
        if (v.norm() <= threshold * scale) return false;
        Eigen::VectorXd r = v;
        if (basis.cols() > 0) r -= basis * (basis.transpose() * v);
        if (r.norm() <= threshold * v.norm()) return false;
        r.normalize();
        basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
        basis.col(basis.cols() - 1) = r;
        // keep the matrix corresponding to the newly added direction
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        int idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                m(i, j) = r(idx);
                m(j, i) = -r(idx);
                ++idx;
            }
        generators.push_back(std::move(m));
        return true;
    };

    for (const auto& op : operators) try_insert(0.5 * (op - op.transpose()));

    // close under commutators
    bool grew = true;
    while (grew && generators.size() < static_cast<std::size_t>(vdim)) {
        grew = false;
        const std::size_t count = generators.size();
        for (std::size_t a = 0; a < count; ++a)
            for (std::size_t b = a + 1; b < count; ++b) {
                Eigen::MatrixXd br = generators[a] * generators[b] - generators[b] * generators[a];
                if (try_insert(br)) grew = true;
            }
    }

    rep.dim = static_cast<int>(generators.size());

    // derivation action on Lambda^3: (A . phi)(x,y,z) = phi(Ax,y,z) + phi(x,Ay,z) + phi(x,y,Az)
    double worst = 0.0;
    double phinorm = std::max(phi.norm(), 1e-300);
    for (const auto& A : generators) {
        Form<double> acted(phi.dim(), phi.degree());
        for (const auto& [mask, c] : phi.coeffs()) {
            auto idx = mask_indices(mask);
            for (std::size_t slot = 0; slot < idx.size(); ++slot) {
                for (int to = 1; to <= phi.dim(); ++to) {
                    double a = A(to - 1, idx[slot] - 1);
                    if (a == 0.0) continue;
                    auto replaced = idx;
                    replaced[slot] = to;
                    // sort with sign
                    double sign = 1.0;
                    bool degenerate = false;
                    for (std::size_t x = 0; x < replaced.size() && !degenerate; ++x)
                        for (std::size_t y = x + 1; y < replaced.size(); ++y) {
                            if (replaced[x] == replaced[y]) {
                                degenerate = true;
                                break;
                            }
                            if (replaced[x] > replaced[y]) {
                                std::swap(replaced[x], replaced[y]);
                                sign = -sign;
                            }
                        }
                    if (degenerate) continue;
                    acted.add(mask_from(replaced), sign * a * c);
                }
            }
        }
        worst = std::max(worst, acted.norm() / phinorm);  // |A| = 1 after normalization
    }
    rep.max_annihilation_residual = worst;
    rep.in_g2 = worst <= 1e-8;
    return rep;
}

} // namespace g2forge
