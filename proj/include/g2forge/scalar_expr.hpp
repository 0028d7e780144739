#pragma once

#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include "g2forge/rational.hpp"

namespace g2forge {

/// One summand c * (1 + s*t)^r * e^{a*t}.
/// Canonical form: r == 0 implies s == 0 (the power factor is 1), and
/// s == 0 implies r == 0.
struct ScalarTerm {
    QSqrt6 c;
    QSqrt6 s;
    Rat r;
    QSqrt6 a;
};

/// Finite sums of terms c*(1+s*t)^r*e^{a*t}; closed under addition,
/// multiplication and d/dt.  Coefficients are exact (Q(sqrt6), exponents r
/// exact rationals), so identities cancel to the literal zero expression.
class ScalarExpr {
public:
    ScalarExpr() = default;

    static ScalarExpr constant(QSqrt6 c) { return term(std::move(c), 0, Rat(0), 0); }
    /// c * e^{a t}
    static ScalarExpr exponential(QSqrt6 c, QSqrt6 a) { return term(std::move(c), 0, Rat(0), std::move(a)); }
    /// c * (1 + s t)^r
    static ScalarExpr power(QSqrt6 c, QSqrt6 s, Rat r) { return term(std::move(c), std::move(s), std::move(r), 0); }
    static ScalarExpr term(QSqrt6 c, QSqrt6 s, Rat r, QSqrt6 a);

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    std::vector<ScalarTerm> terms() const;

    ScalarExpr operator-() const;
    ScalarExpr& operator+=(const ScalarExpr& o);
    ScalarExpr& operator-=(const ScalarExpr& o) { return *this += -o; }
    friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
    friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }

    /// Term-by-term product.  Power bases must agree: a pairwise product is
    /// defined when the two s values match or one factor has r == 0.
    /// Throws IncompatibleBase otherwise.
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
    ScalarExpr& operator*=(const ScalarExpr& o) { return *this = *this * o; }

    ScalarExpr scaled(const QSqrt6& c) const;

    ScalarExpr ddt() const;

    /// Throws DomainError when some (1+s*t) <= 0 meets a non-integer r
    /// (or a negative r at the root).
    double eval(double t) const;

    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ScalarExpr& a, const ScalarExpr& b) { return !(a == b); }

    std::string str() const;

private:
    using Key = std::tuple<QSqrt6, Rat, QSqrt6>;  // (s, r, a)
    std::map<Key, QSqrt6> terms_;

    void add_term(QSqrt6 s, Rat r, QSqrt6 a, QSqrt6 c);
};

inline ScalarExpr operator*(const QSqrt6& c, const ScalarExpr& x) { return x.scaled(c); }

} // namespace g2forge
