#pragma once

#include <json.hpp>

#include "g2forge/lie_algebra.hpp"
#include "g2forge/scalar_expr.hpp"

namespace g2forge {

using Json = nlohmann::json;

/// Parameter bindings for coefficient strings ("2/5*m", "sqrt6*b", ...).
struct Params {
    Rat m{-1};
    Rat b{1};
};

/// A coefficient is a JSON number (converted exactly; doubles are dyadic
/// rationals) or a '*'-separated product of rationals and the factors
/// "sqrt6", "m", "b".
QSqrt6 parse_coeff(const Json& j, const Params& p);

Json form_to_json(const Form<double>& f);
Json form_to_json(const FormQ& f);
FormQ form_from_json(const Json& j, const Params& p);

Json scalar_expr_to_json(const ScalarExpr& x);
/// c, s, a each a number or coefficient string; r a rational string or integer.
ScalarExpr scalar_expr_from_json(const Json& j, const Params& p);

Json algebra_to_json(const LieAlgebra& a);
/// {"dim": n, "d": [[{"c":..., "idx":[i,j]}, ...], ...]}; validates shape.
LieAlgebra algebra_from_json(const Json& j, const Params& p);

} // namespace g2forge
