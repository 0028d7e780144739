#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "g2forge/errors.hpp"

namespace g2forge {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

/// Exact conversion: every finite double is a dyadic rational.
Rat rat_from_double(double x);

/// "p/q" (or "p" when q == 1). Used by the JSON schemas for exact exponents.
std::string rat_to_string(const Rat& q);

/// Parses "p", "p/q", or a decimal literal like "-1.5" (converted exactly).
Rat rat_parse(std::string_view s);

inline bool rat_is_integer(const Rat& q) { return denominator(q) == 1; }

/// Element of the field Q(sqrt 6): p + q*sqrt(6).  Closed under the four
/// field operations; this covers every structure constant in the catalog
/// (rational multiples of the parameters plus the sqrt(6) entries of the
/// 3-step Einstein algebra), so d^2 = 0 and the conformal cancellations can
/// be verified exactly.
struct QSqrt6 {
    Rat p{0};
    Rat q{0};

    QSqrt6() = default;
    QSqrt6(int n) : p(n) {}                    // NOLINT(google-explicit-constructor)
    QSqrt6(Rat rational) : p(std::move(rational)) {}  // NOLINT
    QSqrt6(Rat rational, Rat surd) : p(std::move(rational)), q(std::move(surd)) {}

    static QSqrt6 sqrt6() { return QSqrt6{Rat(0), Rat(1)}; }

    bool is_zero() const { return p == 0 && q == 0; }
    bool is_rational() const { return q == 0; }

    QSqrt6 operator-() const { return {-p, -q}; }
    QSqrt6& operator+=(const QSqrt6& o) { p += o.p; q += o.q; return *this; }
    QSqrt6& operator-=(const QSqrt6& o) { p -= o.p; q -= o.q; return *this; }
    QSqrt6& operator*=(const QSqrt6& o) {
        Rat np = p * o.p + 6 * (q * o.q);
        Rat nq = p * o.q + q * o.p;
        p = std::move(np);
        q = std::move(nq);
        return *this;
    }

    friend QSqrt6 operator+(QSqrt6 a, const QSqrt6& b) { return a += b; }
    friend QSqrt6 operator-(QSqrt6 a, const QSqrt6& b) { return a -= b; }
    friend QSqrt6 operator*(QSqrt6 a, const QSqrt6& b) { return a *= b; }

    QSqrt6 inverse() const {
        Rat n = p * p - 6 * (q * q);  // field norm; zero only for 0 since sqrt6 is irrational
        if (n == 0) throw DomainError("QSqrt6: division by zero");
        return {p / n, -q / n};
    }
    friend QSqrt6 operator/(const QSqrt6& a, const QSqrt6& b) { return a * b.inverse(); }

    friend bool operator==(const QSqrt6& a, const QSqrt6& b) { return a.p == b.p && a.q == b.q; }
    friend bool operator!=(const QSqrt6& a, const QSqrt6& b) { return !(a == b); }
    /// Structural (not numeric) order; used only as a canonical map key.
    friend bool operator<(const QSqrt6& a, const QSqrt6& b) {
        if (a.p != b.p) return a.p < b.p;
        return a.q < b.q;
    }

    double to_double() const {
        static const double s6 = std::sqrt(6.0);
        return g2forge::to_double(p) + g2forge::to_double(q) * s6;
    }

    std::string str() const;
};

inline double to_double(const QSqrt6& x) { return x.to_double(); }

} // namespace g2forge
