#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "priccati/bivariate.hpp"
#include "priccati/curve.hpp"
#include "priccati/ratfunc.hpp"

namespace priccati {

// Abstract syntax tree of a polynomial expression: integers, variables,
// + - * / ^ and parentheses. Exponents are nonnegative integer literals.
struct ExprNode {
    enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg };
    Kind kind = Kind::Number;
    std::string text;
    std::uint64_t exponent = 0;
    std::vector<std::shared_ptr<const ExprNode>> children;
};
using ExprPtr = std::shared_ptr<const ExprNode>;

// Throws InputError with the offending position on malformed input.
ExprPtr parse_expression(std::string_view text);

// Evaluations. Allowed variables: x, Y and z for bivariate polynomials; x and z
// for rational functions; x, a and z for function field elements; z for F_p
// polynomials. z denotes the generator of F_q. Division is allowed where the
// target is a field or the divisor is a nonzero constant.
BivPoly to_bivpoly(const ExprPtr& e, const FieldPtr& field);
RatFunc to_ratfunc(const ExprPtr& e, const FieldPtr& field);
FFElem to_ffelem(const ExprPtr& e, const CurvePtr& curve);
// Coefficients (lowest first) of a polynomial over F_p in the variable z.
std::vector<std::uint64_t> to_fp_poly(const ExprPtr& e, std::uint64_t p);
// Convenience wrappers parsing and evaluating in one step.
BivPoly parse_bivpoly(std::string_view text, const FieldPtr& field);
FFElem parse_ffelem(std::string_view text, const CurvePtr& curve);
RatFunc parse_ratfunc(std::string_view text, const FieldPtr& field);

} // namespace priccati
