#include "g2forge/lie_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace g2forge {

namespace {

/// Row-reduced span over the field Q(sqrt6); enough machinery for rank and
/// membership decisions without floating-point thresholds.
class ExactSpan {
public:
    explicit ExactSpan(int n) : n_(n) {}

    bool insert(std::vector<QSqrt6> v) {
        reduce(v);
        int pivot = -1;
        for (int i = 0; i < n_; ++i)
            if (!v[i].is_zero()) { pivot = i; break; }
        if (pivot < 0) return false;
        QSqrt6 inv = v[pivot].inverse();
        for (auto& x : v) x = x * inv;
        rows_.push_back(std::move(v));
        pivots_.push_back(pivot);
        // keep rows sorted by pivot for cheap reduction
        for (std::size_t i = rows_.size() - 1; i > 0 && pivots_[i] < pivots_[i - 1]; --i) {
            std::swap(rows_[i], rows_[i - 1]);
            std::swap(pivots_[i], pivots_[i - 1]);
        }
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::vector<QSqrt6>>& rows() const { return rows_; }

private:
    int n_;
    std::vector<std::vector<QSqrt6>> rows_;
    std::vector<int> pivots_;

    void reduce(std::vector<QSqrt6>& v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const QSqrt6& c = v[pivots_[r]];
            if (c.is_zero()) continue;
            for (int i = 0; i < n_; ++i) v[i] -= c * rows_[r][i];
        }
    }
};

} // namespace

LieAlgebra::LieAlgebra(std::vector<FormQ> d1) : dim_(static_cast<int>(d1.size())), d1_(std::move(d1)) {
    for (const auto& f : d1_) {
        if (f.dim() != dim_ || (f.degree() != 2 && !f.is_zero()))
            throw SchemaError("LieAlgebra: each d e^k must be a 2-form on the same frame");
    }
    compute_brackets();
}

LieAlgebra LieAlgebra::abelian(int dim) {
    std::vector<FormQ> d1(dim, FormQ(dim, 2));
    return LieAlgebra(std::move(d1));
}

void LieAlgebra::compute_brackets() {
    brackets_.assign(static_cast<std::size_t>(dim_) * dim_, {});
    brackets_d_.assign(dim_, std::vector<double>(static_cast<std::size_t>(dim_) * dim_, 0.0));
    for (int i = 1; i <= dim_; ++i) {
        for (int j = 1; j <= dim_; ++j) {
            std::vector<QSqrt6> v(dim_);
            if (i != j) {
                IndexMask mij = mask_from({std::min(i, j), std::max(i, j)});
                int sign = (i < j) ? 1 : -1;
                // [e_i, e_j] = -sum_k d e^k(e_i, e_j) e_k
                for (int k = 1; k <= dim_; ++k) {
                    QSqrt6 c = d1_[k - 1].coeff(mij);
                    if (c.is_zero()) continue;
                    v[k - 1] = (sign > 0) ? -c : c;
                    brackets_d_[k - 1][(i - 1) * dim_ + (j - 1)] = v[k - 1].to_double();
                }
            }
            brackets_[(i - 1) * dim_ + (j - 1)] = std::move(v);
        }
    }
}

std::vector<QSqrt6> LieAlgebra::bracket(int i, int j) const {
    return brackets_[(i - 1) * dim_ + (j - 1)];
}

Eigen::MatrixXd LieAlgebra::ad(int i) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int j = 1; j <= dim_; ++j) {
        auto v = bracket(i, j);
        for (int k = 0; k < dim_; ++k) m(k, j - 1) = v[k].to_double();
    }
    return m;
}

LieAlgebra LieAlgebra::restricted(int m) const {
    std::vector<FormQ> d1;
    d1.reserve(m);
    for (int k = 1; k <= m; ++k) d1.push_back(d1_[k - 1].restricted(m));
    return LieAlgebra(std::move(d1));
}

JacobiReport jacobi_check(const LieAlgebra& algebra) {
    for (int k = 1; k <= algebra.dim(); ++k) {
        FormQ dd = ce_d(algebra, algebra.d1(k));
        if (!dd.is_zero()) return {false, k, std::move(dd)};
    }
    return {};
}

CentralSeries lower_central_series(const LieAlgebra& algebra) {
    const int n = algebra.dim();
    CentralSeries out;
    out.dims.push_back(n);

    // current term of the series as an exact span
    ExactSpan current(n);
    for (int i = 0; i < n; ++i) {
        std::vector<QSqrt6> e(n);
        e[i] = 1;
        current.insert(e);
    }

    while (true) {
        // next = [current, g]
        ExactSpan next(n);
        for (const auto& v : current.rows()) {
            for (int j = 1; j <= n; ++j) {
                std::vector<QSqrt6> w(n);
                bool nonzero = false;
                for (int i = 1; i <= n; ++i) {
                    if (v[i - 1].is_zero()) continue;
                    auto b = algebra.bracket(i, j);
                    for (int k = 0; k < n; ++k) {
                        if (b[k].is_zero()) continue;
                        w[k] += v[i - 1] * b[k];
                        nonzero = true;
                    }
                }
                if (nonzero) next.insert(std::move(w));
            }
        }
        int d = next.rank();
        out.dims.push_back(d);
        if (d == 0) {
            out.step = static_cast<int>(out.dims.size()) - 1;
            return out;
        }
        if (d == out.dims[out.dims.size() - 2]) {
            // stabilized above zero
            return out;
        }
        current = std::move(next);
    }
}

bool is_unimodular(const LieAlgebra& algebra) {
    for (int i = 1; i <= algebra.dim(); ++i) {
        QSqrt6 trace;
        for (int j = 1; j <= algebra.dim(); ++j) trace += algebra.bracket(i, j)[j - 1];
        if (!trace.is_zero()) return false;
    }
    return true;
}

SolvExtension solvable_extension(const LieAlgebra& base, const std::vector<std::vector<QSqrt6>>& D,
                                 const Rat& m) {
    const int n = base.dim();
    // Leibniz rule D[X,Y] = [DX,Y] + [X,DY] on basis pairs, exact.
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            std::vector<QSqrt6> lhs(n), rhs(n);
            auto bij = base.bracket(i, j);
            for (int k = 1; k <= n; ++k) {
                if (bij[k - 1].is_zero()) continue;
                for (int l = 0; l < n; ++l) lhs[l] += D[l][k - 1] * bij[k - 1];
            }
            for (int k = 1; k <= n; ++k) {
                if (!D[k - 1][i - 1].is_zero()) {
                    auto bkj = base.bracket(k, j);
                    for (int l = 0; l < n; ++l) rhs[l] += D[k - 1][i - 1] * bkj[l];
                }
                if (!D[k - 1][j - 1].is_zero()) {
                    auto bik = base.bracket(i, k);
                    for (int l = 0; l < n; ++l) rhs[l] += D[k - 1][j - 1] * bik[l];
                }
            }
            if (lhs != rhs) {
                std::ostringstream os;
                os << "solvable_extension: D is not a derivation, witness pair (e_" << i << ", e_" << j << ")";
                throw NotDerivation(os.str());
            }
        }
    }

    // d e^k on the extension: base part plus D^T terms on e^{i, n+1}.
    std::vector<FormQ> d1;
    d1.reserve(n + 1);
    for (int k = 1; k <= n; ++k) {
        FormQ f = base.d1(k).extended(n + 1);
        // d e^k(e_i, e_{n+1}) = -e^k([e_i, e_{n+1}]) = e^k(D e_i) = D_{ki}
        for (int i = 1; i <= n; ++i) {
            const QSqrt6& c = D[k - 1][i - 1];
            if (c.is_zero()) continue;
            f.add(mask_from({i, n + 1}), c);
        }
        d1.push_back(std::move(f));
    }
    d1.emplace_back(n + 1, 2);  // d e^{n+1} = 0

    SolvExtension ext;
    ext.base = base;
    ext.D = D;
    ext.m = m;
    ext.result = LieAlgebra(std::move(d1));
    return ext;
}

std::string EigenvalueType::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        if (i) os << " < ";
        os << eigenvalues[i];
    }
    os << "; ";
    for (std::size_t i = 0; i < multiplicities.size(); ++i) {
        if (i) os << ", ";
        os << multiplicities[i];
    }
    os << ")";
    return os.str();
}

EigenvalueType eigenvalue_type(const Eigen::MatrixXd& D, double cluster_tol) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(D);
    EigenvalueType out;
    std::vector<double> values;
    double scale = 0.0;
    for (int i = 0; i < D.rows(); ++i) {
        auto ev = solver.eigenvalues()(i);
        scale = std::max(scale, std::abs(ev));
        if (std::abs(ev.imag()) > cluster_tol * std::max(1.0, std::abs(ev))) out.real_diagonalizable = false;
        values.push_back(ev.real());
    }
    std::sort(values.begin(), values.end());
    const double tol = cluster_tol * std::max(1.0, scale);
    for (double v : values) {
        if (!out.eigenvalues.empty() && std::abs(v - out.eigenvalues.back()) <= tol) {
            ++out.multiplicities.back();
            continue;
        }
        out.eigenvalues.push_back(v);
        out.multiplicities.push_back(1);
    }
    return out;
}

IwasawaReport iwasawa_check(const SolvExtension& ext, const FrameMetric<double>& metric) {
    const int n = ext.base.dim();
    Eigen::MatrixXd D(n, n), g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            D(i, j) = ext.D[i][j].to_double();
            g(i, j) = metric.at(i, j);
        }
    IwasawaReport rep;
    rep.nonzero = D.norm() > 0;
    Eigen::MatrixXd gd = g * D;
    rep.self_adjoint = (gd - gd.transpose()).norm() <= 1e-10 * std::max(1.0, gd.norm());
    if (rep.self_adjoint) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (gd + gd.transpose()));
        rep.positive_definite = es.eigenvalues().minCoeff() > 0;
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(D);
        bool pos = true;
        for (int i = 0; i < n; ++i) pos = pos && es.eigenvalues()(i).real() > 0;
        rep.positive_definite = pos;
    }
    return rep;
}

FormS time_dependent_d(const LieAlgebra& algebra, const FormS& x, int t_index) {
    if (!algebra.d1(t_index).is_zero())
        throw UnresolvableStructureFunctions("time_dependent_d: e^{t} direction is not closed");
    FormS out = ce_d(algebra, x);
    for (const auto& [m, c] : x.coeffs()) {
        ScalarExpr cdot = c.ddt();
        if (cdot.is_zero()) continue;
        FormS mono(x.dim(), x.degree());
        mono.add(m, std::move(cdot));
        FormS e7 = FormS(x.dim(), 1);
        e7.add(1u << (t_index - 1), ScalarExpr::constant(1));
        out += wedge(e7, mono);
    }
    return out;
}

} // namespace g2forge
