#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "microloc/eisenstein.hpp"
#include "microloc/errors.hpp"
#include "microloc/weyl.hpp"

namespace microloc {

/// Syntax tree of an operator expression.
struct OperatorExpr {
    enum class Kind { number, pi, x, d, add, sub, mul, neg, pow };
    Kind kind = Kind::number;
    Rational value;          // number
    Var var = Var::t;        // x, d
    unsigned long exponent = 0;  // pow
    std::size_t position = 0;
    std::vector<std::unique_ptr<OperatorExpr>> args;
};

/// Parses the grammar  expr := term (('+'|'-') term)*,  term := unary ('*' unary)*,
/// unary := '-' unary | power,  power := atom ('^' integer)?,
/// atom := integer | integer '/' integer | t | dt | eta | deta | pi | '(' expr ')'.
std::unique_ptr<OperatorExpr> parse_expression(std::string_view text);

/// Normal-ordered operator over Q. Throws ParseError (also for `pi` and for mixed variables).
/// Expressions without any variable are placed on the `fallback` side.
WeylOp<Rational> parse_operator(std::string_view text, Var fallback = Var::t);

/// Normal-ordered operator over Q(pi) for the prime p.
WeylOp<EisensteinScalar> parse_operator_padic(std::string_view text, unsigned long p, Var fallback = Var::t);

}  // namespace microloc
