#include "g2forge/json_io.hpp"

#include <sstream>

namespace g2forge {

namespace {

QSqrt6 parse_coeff_string(const std::string& s, const Params& p) {
    QSqrt6 value{Rat(1)};
    std::string token;
    std::istringstream stream(s);
    bool any = false;
    while (std::getline(stream, token, '*')) {
        // trim spaces
        auto first = token.find_first_not_of(" \t");
        auto last = token.find_last_not_of(" \t");
        if (first == std::string::npos) throw ParseError("parse_coeff: empty factor in '" + s + "'");
        token = token.substr(first, last - first + 1);
        any = true;
        bool negated = false;
        if (token.size() > 1 && token[0] == '-' && !std::isdigit(static_cast<unsigned char>(token[1]))) {
            negated = true;
            token = token.substr(1);
        }
        if (token == "sqrt6") {
            value *= QSqrt6::sqrt6();
        } else if (token == "m") {
            value *= QSqrt6{p.m};
        } else if (token == "b") {
            value *= QSqrt6{p.b};
        } else {
            value *= QSqrt6{rat_parse(token)};
        }
        if (negated) value = -value;
    }
    if (!any) throw ParseError("parse_coeff: empty coefficient string");
    return value;
}

} // namespace

QSqrt6 parse_coeff(const Json& j, const Params& p) {
    if (j.is_number()) return QSqrt6{rat_from_double(j.get<double>())};
    if (j.is_string()) return parse_coeff_string(j.get<std::string>(), p);
    throw SchemaError("parse_coeff: expected number or string, got " + std::string(j.type_name()));
}

Json form_to_json(const Form<double>& f) {
    Json terms = Json::array();
    for (const auto& [mask, c] : f.coeffs()) {
        Json t;
        t["idx"] = mask_indices(mask);
        t["c"] = c;
        terms.push_back(std::move(t));
    }
    return Json{{"dim", f.dim()}, {"degree", f.degree()}, {"terms", std::move(terms)}};
}

Json form_to_json(const FormQ& f) {
    Json terms = Json::array();
    for (const auto& [mask, c] : f.coeffs()) {
        Json t;
        t["idx"] = mask_indices(mask);
        if (c.is_rational() && rat_is_integer(c.p)) {
            t["c"] = c.p.convert_to<double>();
        } else {
            t["c"] = c.str();
        }
        terms.push_back(std::move(t));
    }
    return Json{{"dim", f.dim()}, {"degree", f.degree()}, {"terms", std::move(terms)}};
}

FormQ form_from_json(const Json& j, const Params& p) {
    if (!j.contains("dim") || !j.contains("degree") || !j.contains("terms"))
        throw SchemaError("form_from_json: need dim, degree, terms");
    int dim = j.at("dim").get<int>();
    int degree = j.at("degree").get<int>();
    if (dim < 1 || dim > 8 || degree < 0 || degree > dim)
        throw SchemaError("form_from_json: dim/degree out of range");
    FormQ f(dim, degree);
    for (const auto& t : j.at("terms")) {
        auto idx = t.at("idx").get<std::vector<int>>();
        if (static_cast<int>(idx.size()) != degree)
            throw SchemaError("form_from_json: index length does not match degree");
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] < 1 || idx[i] > dim) throw SchemaError("form_from_json: index out of range");
            if (i + 1 < idx.size() && idx[i] >= idx[i + 1])
                throw SchemaError("form_from_json: indices must be strictly increasing");
        }
        f.add(mask_from(idx), parse_coeff(t.at("c"), p));
    }
    return f;
}

Json scalar_expr_to_json(const ScalarExpr& x) {
    Json terms = Json::array();
    for (const auto& t : x.terms()) {
        Json jt;
        jt["c"] = t.c.to_double();
        jt["s"] = t.s.to_double();
        jt["r"] = rat_to_string(t.r);
        jt["a"] = t.a.to_double();
        terms.push_back(std::move(jt));
    }
    return Json{{"terms", std::move(terms)}};
}

ScalarExpr scalar_expr_from_json(const Json& j, const Params& p) {
    ScalarExpr x;
    for (const auto& t : j.at("terms")) {
        QSqrt6 c = parse_coeff(t.at("c"), p);
        QSqrt6 s = t.contains("s") ? parse_coeff(t.at("s"), p) : QSqrt6{};
        QSqrt6 a = t.contains("a") ? parse_coeff(t.at("a"), p) : QSqrt6{};
        Rat r{0};
        if (t.contains("r")) {
            const auto& jr = t.at("r");
            r = jr.is_string() ? rat_parse(jr.get<std::string>()) : Rat(jr.get<long long>());
        }
        x += ScalarExpr::term(std::move(c), std::move(s), std::move(r), std::move(a));
    }
    return x;
}

Json algebra_to_json(const LieAlgebra& a) {
    Json d = Json::array();
    for (int k = 1; k <= a.dim(); ++k) {
        Json terms = Json::array();
        for (const auto& [mask, c] : a.d1(k).coeffs()) {
            Json t;
            t["idx"] = mask_indices(mask);
            t["c"] = c.str();
            terms.push_back(std::move(t));
        }
        d.push_back(std::move(terms));
    }
    return Json{{"dim", a.dim()}, {"d", std::move(d)}};
}

LieAlgebra algebra_from_json(const Json& j, const Params& p) {
    if (!j.contains("dim") || !j.contains("d")) throw SchemaError("algebra_from_json: need dim and d");
    int dim = j.at("dim").get<int>();
    if (dim < 1 || dim > 8) throw SchemaError("algebra_from_json: dim out of range");
    const auto& d = j.at("d");
    if (!d.is_array() || static_cast<int>(d.size()) != dim)
        throw SchemaError("algebra_from_json: d must list one 2-form per basis covector");
    std::vector<FormQ> d1;
    d1.reserve(dim);
    for (const auto& entry : d) {
        FormQ f(dim, 2);
        for (const auto& t : entry) {
            auto idx = t.at("idx").get<std::vector<int>>();
            if (idx.size() != 2 || idx[0] < 1 || idx[1] <= idx[0] || idx[1] > dim)
                throw SchemaError("algebra_from_json: bad index pair");
            f.add(mask_from(idx), parse_coeff(t.at("c"), p));
        }
        d1.push_back(std::move(f));
    }
    return LieAlgebra(std::move(d1));
}

} // namespace g2forge
