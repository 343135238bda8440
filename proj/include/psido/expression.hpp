#pragma once

// Recursive-descent parser and evaluator for closed-form symbol expressions
// in the variables n (mode number), x (base point) and xi (covariable).
// Expressions evaluate either numerically (exact evaluators) or in truncated
// asymptotic-series semantics (component extraction at xi -> +-infinity).

#include <memory>
#include <optional>
#include <string>

#include "psido/series.hpp"

namespace psido {

struct ParseError : std::runtime_error {
    int position;
    ParseError(const std::string& msg, int pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Number, Variable, Unary, Binary, Call };
    Kind kind;
    cd value{};            // Number
    std::string name;      // Variable ("n","x","xi","i","pi") or Call function
    char op = 0;           // Unary: '-'; Binary: + - * / ^
    ExprPtr lhs, rhs;      // Binary; Unary/Call use lhs
    int position = 0;
};

ExprPtr parse_expression(const std::string& text);

struct NumericEnv {
    std::optional<cd> n, x, xi;
};
cd eval_numeric(const ExprPtr& e, const NumericEnv& env);

struct SeriesEnv {
    int side = +1;              // sign of the covariable
    std::optional<cd> x;        // base point, when x occurs
    bool allow_n = true;
    bool allow_xi = false;
};
ScalarSeries eval_series(const ExprPtr& e, const SeriesEnv& env);

// True if the variable occurs anywhere in the expression.
bool uses_variable(const ExprPtr& e, const std::string& name);

}  // namespace psido
