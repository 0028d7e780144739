#include "g2forge/rational.hpp"

#include <cmath>
#include <limits>

namespace g2forge {

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("rat_from_double: non-finite value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    Int num(static_cast<long long>(std::ldexp(mant, 53)));
    exp -= 53;
    Rat r(num);
    if (exp > 0) {
        r *= Rat(Int(1) << exp);
    } else if (exp < 0) {
        r /= Rat(Int(1) << (-exp));
    }
    return r;
}

std::string rat_to_string(const Rat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += "/";
        s += denominator(q).str();
    }
    return s;
}

Rat rat_parse(std::string_view s) {
    if (s.empty()) throw ParseError("rat_parse: empty string");
    auto slash = s.find('/');
    try {
        if (slash != std::string_view::npos) {
            Int num(std::string(s.substr(0, slash)));
            Int den(std::string(s.substr(slash + 1)));
            if (den == 0) throw ParseError("rat_parse: zero denominator");
            return Rat(num, den);
        }
        if (s.find('.') != std::string_view::npos || s.find('e') != std::string_view::npos ||
            s.find('E') != std::string_view::npos) {
            return rat_from_double(std::stod(std::string(s)));
        }
        return Rat(Int(std::string(s)));
    } catch (const std::exception& e) {
        throw ParseError("rat_parse: cannot parse '" + std::string(s) + "': " + e.what());
    }
}

std::string QSqrt6::str() const {
    if (q == 0) return rat_to_string(p);
    std::string s;
    if (p != 0) s = rat_to_string(p) + (q > 0 ? "+" : "");
    if (q == 1) {
        s += "sqrt6";
    } else if (q == -1) {
        s += "-sqrt6";
    } else {
        s += rat_to_string(q) + "*sqrt6";
    }
    return s;
}

} // namespace g2forge
