#include "g2forge/scalar_expr.hpp"

#include <sstream>

namespace g2forge {

void ScalarExpr::add_term(QSqrt6 s, Rat r, QSqrt6 a, QSqrt6 c) {
    if (c.is_zero()) return;
    if (r == 0) s = 0;
    if (s.is_zero()) r = 0;
    Key key{std::move(s), std::move(r), std::move(a)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ScalarExpr ScalarExpr::term(QSqrt6 c, QSqrt6 s, Rat r, QSqrt6 a) {
    ScalarExpr x;
    x.add_term(std::move(s), std::move(r), std::move(a), std::move(c));
    return x;
}

std::vector<ScalarTerm> ScalarExpr::terms() const {
    std::vector<ScalarTerm> out;
    out.reserve(terms_.size());
    for (const auto& [key, c] : terms_)
        out.push_back({c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    return out;
}

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr x;
    for (const auto& [key, c] : terms_) x.terms_.emplace(key, -c);
    return x;
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
    for (const auto& [key, c] : o.terms_)
        add_term(std::get<0>(key), std::get<1>(key), std::get<2>(key), c);
    return *this;
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
    ScalarExpr out;
    for (const auto& [ka, ca] : a.terms_) {
        const auto& [sa, ra, aa] = ka;
        for (const auto& [kb, cb] : b.terms_) {
            const auto& [sb, rb, ab] = kb;
            QSqrt6 s;
            Rat r;
            if (sa == sb) {
                s = sa;
                r = ra + rb;
            } else if (ra == 0) {
                s = sb;
                r = rb;
            } else if (rb == 0) {
                s = sa;
                r = ra;
            } else {
                throw IncompatibleBase("ScalarExpr: product of powers with distinct bases (1+" +
                                       sa.str() + "t) and (1+" + sb.str() + "t)");
            }
            out.add_term(std::move(s), std::move(r), aa + ab, ca * cb);
        }
    }
    return out;
}

ScalarExpr ScalarExpr::scaled(const QSqrt6& c) const {
    ScalarExpr x;
    if (c.is_zero()) return x;
    for (const auto& [key, coeff] : terms_) x.terms_.emplace(key, c * coeff);
    return x;
}

ScalarExpr ScalarExpr::ddt() const {
    // d/dt [ c (1+st)^r e^{at} ] = c r s (1+st)^{r-1} e^{at} + c a (1+st)^r e^{at}
    ScalarExpr out;
    for (const auto& [key, c] : terms_) {
        const auto& [s, r, a] = key;
        if (r != 0 && !s.is_zero()) {
            QSqrt6 factor = QSqrt6(r) * s * c;
            out.add_term(s, r - 1, a, std::move(factor));
        }
        if (!a.is_zero()) out.add_term(s, r, a, a * c);
    }
    return out;
}

double ScalarExpr::eval(double t) const {
    double total = 0.0;
    for (const auto& [key, c] : terms_) {
        const auto& [s, r, a] = key;
        double value = c.to_double();
        if (r != 0) {
            double base = 1.0 + s.to_double() * t;
            double rd = to_double(r);
            if (base > 0.0) {
                value *= std::pow(base, rd);
            } else if (base == 0.0 && r > 0) {
                value = 0.0;
            } else if (base < 0.0 && rat_is_integer(r)) {
                value *= std::pow(base, rd);
            } else {
                throw DomainError("ScalarExpr::eval: (1+s*t) = " + std::to_string(base) +
                                  " with non-integer exponent " + rat_to_string(r));
            }
        }
        if (!a.is_zero()) value *= std::exp(a.to_double() * t);
        total += value;
    }
    return total;
}

std::string ScalarExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        const auto& [s, r, a] = key;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (r != 0) os << "*(1+(" << s.str() << ")t)^(" << rat_to_string(r) << ")";
        if (!a.is_zero()) os << "*exp((" << a.str() << ")t)";
    }
    return os.str();
}

} // namespace g2forge
