#pragma once

/**
 * @file expr.hpp
 * @brief Operator expressions: parser, printer, elaboration to series in D.
 *
 * Grammar:
 *     expr   := term (('+'|'-') term)*
 *     term   := factor (('*'|'/') factor)*
 *     factor := atom ('^' int)?
 *     atom   := rational | 'D' | ident | ident '(' args ')' | '(' expr ')' | '-' atom
 *
 * A rational literal is "p" or "p/q" written without spaces; the exponent
 * after '^' is a plain (optionally negative) integer, so "D^2/2" is
 * (D^2)/2. Identifiers are the catalog names exp, log, delta, nabla, shift,
 * abel, laguerre, weierstrass, bernoulli_op and any bound parameter.
 *
 * Calling a catalog operator that takes no argument composes it:
 * laguerre(delta) is L(Delta). shift(a) and abel(b) take the parameter
 * value as their argument; without one they read the parameters a and b.
 */

#include <string>
#include <string_view>
#include <vector>

#include "umbra/operators.hpp"

namespace umbra {

struct Expr {
    enum class Kind { number, symbol_d, ident, call, neg, add, sub, mul, div, pow };

    Kind kind = Kind::number;
    Rat value;              // number
    std::string name;       // ident, call
    int exponent = 0;       // pow
    std::vector<Expr> args; // children / call arguments

    friend bool operator==(const Expr&, const Expr&) = default;
};

/// Throws parse_error with a 1-based byte offset and the expected tokens.
Expr parse_operator(std::string_view text, const ParamMap& params);

/// Canonical text: spaces around binary operators, minimal parentheses.
std::string to_string(const Expr& e);

/// Series in D known to `order`. Intermediate work runs at a raised order
/// until the result is known that far (Laurent division loses precision).
TruncatedSeries elaborate(const Expr& e, const ParamMap& params, int order);

/// Convenience: parse then elaborate.
TruncatedSeries operator_series(std::string_view text, const ParamMap& params, int order);

const std::vector<std::string>& expression_identifiers();

}  // namespace umbra
