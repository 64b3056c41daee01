#pragma once

#include "rectconf/jet.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rectconf {

enum class Op {
    Const,
    Var,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Sin,
    Cos,
    Tan,
    Sec,
    Exp,
    Log,
    Sqrt,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable AST node. Unary ops use `lhs` only.
struct Node {
    Op op = Op::Const;
    double value = 0.0; ///< Const only
    int var = -1;       ///< Var only: index into the owning Expr's variable list
    NodePtr lhs;
    NodePtr rhs;
};

/**
 * Parsed analytic expression over a declared variable list.
 *
 * Grammar (loosest to tightest): `+ -`, `* /`, unary `-`, `^` (right
 * associative), then numbers, variables, `pi`, parentheses and the
 * functions sin, cos, tan, sec, exp, log, sqrt.
 */
class Expr {
public:
    Expr(NodePtr root, std::vector<std::string> variables);

    [[nodiscard]] const Node& root() const noexcept { return *root_; }
    [[nodiscard]] const NodePtr& root_ptr() const noexcept { return root_; }
    [[nodiscard]] const std::vector<std::string>& variables() const noexcept { return vars_; }

    /// Index of a declared variable, or -1.
    [[nodiscard]] int variable_index(std::string_view name) const noexcept;

    /// True when the whole expression is exactly the named variable.
    [[nodiscard]] bool is_variable(std::string_view name) const noexcept;

    /// Fully parenthesised infix text that parses back to the same tree.
    [[nodiscard]] std::string print() const;

    /// Evaluate with one jet per declared variable (in declaration order).
    [[nodiscard]] Jet3 evaluate(std::span<const Jet3> values) const;

    /// Plain value at a point.
    [[nodiscard]] double value(std::span<const double> point) const;

    /// Symbolic partial derivative with light constant folding.
    [[nodiscard]] Expr differentiate(std::string_view var) const;

    /**
     * Replace every variable with an expression. `replacements[i]` stands in for
     * variable i; all replacements must share one variable list, which becomes
     * the variable list of the result.
     */
    [[nodiscard]] Expr substitute(std::span<const Expr> replacements) const;

    /// Structural equality of variable lists and trees.
    friend bool operator==(const Expr& a, const Expr& b);

private:
    NodePtr root_;
    std::vector<std::string> vars_;
};

/// Parse `source` with the given variable list. Throws ParseError.
Expr parse(std::string_view source, std::vector<std::string> vars);

/**
 * Derivative jet at a point. The first declared variable is seeded as the u
 * direction and the second as v; at most two variables are supported here.
 * Throws EvalError on domain violations.
 */
Jet3 eval_jet3(const Expr& e, std::span<const double> point);

Expr differentiate(const Expr& e, std::string_view var);

/// Text form of a single subtree, as used in diagnostics.
std::string print_node(const Node& node, const std::vector<std::string>& vars);

bool structurally_equal(const Node& a, const Node& b) noexcept;

} // namespace rectconf
