#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "g2forge/rational.hpp"
#include "g2forge/scalar_expr.hpp"

namespace g2forge {

/// Frame subsets as bitmasks: bit i-1 set means index i is present (1-based
/// indices throughout, matching the usual e^{147} notation; dim <= 8).
using IndexMask = unsigned;

inline int mask_degree(IndexMask m) { return std::popcount(m); }

inline IndexMask mask_from(std::initializer_list<int> indices) {
    IndexMask m = 0;
    for (int i : indices) m |= (1u << (i - 1));
    return m;
}

inline IndexMask mask_from(const std::vector<int>& indices) {
    IndexMask m = 0;
    for (int i : indices) m |= (1u << (i - 1));
    return m;
}

inline std::vector<int> mask_indices(IndexMask m) {
    std::vector<int> out;
    for (int i = 0; i < 8; ++i)
        if (m & (1u << i)) out.push_back(i + 1);
    return out;
}

/// Sign of merging the strictly increasing lists a and b into one strictly
/// increasing list (0 when they overlap).
inline int wedge_sign(IndexMask a, IndexMask b) {
    if (a & b) return 0;
    int inversions = 0;
    for (int i = 0; i < 8; ++i) {
        if (b & (1u << i)) {
            // elements of a that are greater than i must jump over b's i
            IndexMask above = a & ~((2u << i) - 1);
            inversions += std::popcount(above);
        }
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

/// Sign factor of contracting index i (present in m) in its slot position.
inline int interior_sign(IndexMask m, int index1) {
    IndexMask below = m & ((1u << (index1 - 1)) - 1);
    return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

namespace ring {

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const QSqrt6& x) { return x.is_zero(); }
inline bool is_zero(const ScalarExpr& x) { return x.is_zero(); }

template <class R>
R from_exact(const QSqrt6& x);

template <> inline double from_exact<double>(const QSqrt6& x) { return x.to_double(); }
template <> inline QSqrt6 from_exact<QSqrt6>(const QSqrt6& x) { return x; }
template <> inline ScalarExpr from_exact<ScalarExpr>(const QSqrt6& x) { return ScalarExpr::constant(x); }

inline double to_value(double x, double) { return x; }
inline double to_value(const QSqrt6& x, double) { return x.to_double(); }
inline double to_value(const ScalarExpr& x, double t) { return x.eval(t); }

} // namespace ring

/// Sparse exterior k-form over an n-dimensional frame (n <= 8); coefficients
/// in R (double, QSqrt6 or ScalarExpr).  Zero coefficients are never stored.
template <class R>
class Form {
public:
    Form() = default;
    Form(int dim, int degree) : dim_(dim), degree_(degree) {}

    static Form zero(int dim, int degree) { return Form(dim, degree); }

    /// Basis monomial c * e^{i1 ... ik}, indices strictly increasing.
    static Form monomial(int dim, std::initializer_list<int> indices, R c = ring::from_exact<R>(QSqrt6(1))) {
        Form f(dim, static_cast<int>(indices.size()));
        f.add(mask_from(indices), std::move(c));
        return f;
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t term_count() const { return coeffs_.size(); }
    const std::map<IndexMask, R>& coeffs() const { return coeffs_; }

    R coeff(IndexMask m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? R{} : it->second;
    }
    R coeff(std::initializer_list<int> indices) const { return coeff(mask_from(indices)); }

    void add(IndexMask m, R c) {
        if (ring::is_zero(c)) return;
        auto it = coeffs_.find(m);
        if (it == coeffs_.end()) {
            coeffs_.emplace(m, std::move(c));
        } else {
            it->second = it->second + c;
            if (ring::is_zero(it->second)) coeffs_.erase(it);
        }
    }
    void set(IndexMask m, R c) {
        coeffs_.erase(m);
        add(m, std::move(c));
    }

    Form operator-() const {
        Form f(dim_, degree_);
        for (const auto& [m, c] : coeffs_) f.coeffs_.emplace(m, -c);
        return f;
    }
    Form& operator+=(const Form& o) {
        for (const auto& [m, c] : o.coeffs_) add(m, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        for (const auto& [m, c] : o.coeffs_) add(m, -c);
        return *this;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }

    Form scaled(const R& c) const {
        Form f(dim_, degree_);
        if (ring::is_zero(c)) return f;
        for (const auto& [m, v] : coeffs_) f.add(m, c * v);
        return f;
    }
    friend Form operator*(const R& c, const Form& f) { return f.scaled(c); }

    /// Same coefficients viewed on a larger frame.
    Form extended(int new_dim) const {
        Form f(new_dim, degree_);
        f.coeffs_ = coeffs_;
        return f;
    }

    /// Drops every term touching an index > new_dim.
    Form restricted(int new_dim) const {
        Form f(new_dim, degree_);
        IndexMask allowed = (1u << new_dim) - 1;
        for (const auto& [m, c] : coeffs_)
            if ((m & ~allowed) == 0) f.coeffs_.emplace(m, c);
        return f;
    }

    double norm(double t = 0.0) const {
        double s = 0.0;
        for (const auto& [m, c] : coeffs_) {
            double v = ring::to_value(c, t);
            s += v * v;
        }
        return std::sqrt(s);
    }

    template <class S>
    Form<S> cast() const {
        Form<S> f(dim_, degree_);
        for (const auto& [m, c] : coeffs_) f.add(m, convert_coeff<S>(c));
        return f;
    }

    friend bool operator==(const Form& a, const Form& b) {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : coeffs_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << coeff_str(c) << ")*e";
            for (int i : mask_indices(m)) os << i;
        }
        return os.str();
    }

private:
    int dim_ = 0;
    int degree_ = 0;
    std::map<IndexMask, R> coeffs_;

    template <class S>
    static S convert_coeff(const QSqrt6& c) { return ring::from_exact<S>(c); }
    template <class S>
    static S convert_coeff(const double& c) { return ring::from_exact<S>(rat_from_double(c)); }

    static std::string coeff_str(double c) { return std::to_string(c); }
    static std::string coeff_str(const QSqrt6& c) { return c.str(); }
    static std::string coeff_str(const ScalarExpr& c) { return c.str(); }
};

template <class R>
Form<R> wedge(const Form<R>& a, const Form<R>& b) {
    Form<R> out(a.dim(), a.degree() + b.degree());
    for (const auto& [ma, ca] : a.coeffs()) {
        for (const auto& [mb, cb] : b.coeffs()) {
            int sign = wedge_sign(ma, mb);
            if (sign == 0) continue;
            R prod = ca * cb;
            if (sign < 0) prod = -prod;
            out.add(ma | mb, std::move(prod));
        }
    }
    return out;
}

/// Interior product with the frame vector e_{index1} (1-based).
template <class R>
Form<R> interior(int index1, const Form<R>& x) {
    Form<R> out(x.dim(), x.degree() - 1);
    IndexMask bit = 1u << (index1 - 1);
    for (const auto& [m, c] : x.coeffs()) {
        if (!(m & bit)) continue;
        int sign = interior_sign(m, index1);
        out.add(m & ~bit, sign < 0 ? -c : c);
    }
    return out;
}

/// Interior product with a vector given by frame components.
template <class R>
Form<R> interior(const std::vector<R>& v, const Form<R>& x) {
    Form<R> out(x.dim(), x.degree() - 1);
    for (int i = 1; i <= x.dim(); ++i) {
        if (ring::is_zero(v[i - 1])) continue;
        out += interior(i, x).scaled(v[i - 1]);
    }
    return out;
}

/// Frame metric: symmetric matrix on the frame vectors plus an orientation
/// sign (orientation +1 declares e^{1...n} the positive volume form).
template <class R>
struct FrameMetric {
    int dim = 0;
    std::vector<R> g;  // row-major dim x dim
    int orientation = 1;

    static FrameMetric identity(int n, int orient = 1) {
        FrameMetric m;
        m.dim = n;
        m.orientation = orient;
        m.g.assign(static_cast<std::size_t>(n) * n, R{});
        for (int i = 0; i < n; ++i) m.g[i * n + i] = ring::from_exact<R>(QSqrt6(1));
        return m;
    }

    const R& at(int i, int j) const { return g[i * dim + j]; }
    R& at(int i, int j) { return g[i * dim + j]; }
};

// Numeric (double) metric operations live in form.cpp.
double metric_det(const FrameMetric<double>& m);
std::vector<double> metric_inverse(const FrameMetric<double>& m);  // throws SingularMetric

/// Induced inner product on k-forms (Gram expansion with the inverse metric).
double inner(const Form<double>& x, const Form<double>& y, const FrameMetric<double>& m);

/// Hodge star: y ^ *x = <y,x> vol for all y, with vol = orientation *
/// sqrt(det g) * e^{1..n}.
Form<double> hodge(const Form<double>& x, const FrameMetric<double>& m);

/// Exact Hodge star for orthonormal frames (identity metric entries); the
/// orientation sign is the only free choice.
template <class R>
Form<R> hodge_orthonormal(const Form<R>& x, int orientation = 1) {
    const IndexMask full = (1u << x.dim()) - 1;
    Form<R> out(x.dim(), x.dim() - x.degree());
    for (const auto& [m, c] : x.coeffs()) {
        IndexMask comp = full & ~m;
        int sign = wedge_sign(m, comp) * orientation;
        out.add(comp, sign < 0 ? -c : c);
    }
    return out;
}

/// Pullback along the linear map sending e_i to M e_i (slot-wise action):
/// (M*alpha)(X,...) = alpha(M X, ...).  M is row-major dim x dim.
Form<double> pullback(const Form<double>& x, const std::vector<double>& M);

using FormD = Form<double>;
using FormQ = Form<QSqrt6>;
using FormS = Form<ScalarExpr>;

} // namespace g2forge
