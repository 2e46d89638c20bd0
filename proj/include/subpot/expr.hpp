#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "subpot/jet.hpp"

namespace subpot {

// Surface grammar for scalar expressions in the variables u1..u99:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' exponent)*        exponent must fold to a constant
//   atom   := number | uK | fn '(' expr ')' | '(' expr ')'
//   fn     := sin | cos | exp | ln | sqrt
//
// Binary operators of equal precedence associate to the left; whitespace is
// insignificant; there is no implicit multiplication. This grammar is the
// contract for the expression strings in spec files.

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class UnaryFn { Neg, Sin, Cos, Exp, Log, Sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Constant {
    double value;
};
struct Variable {
    int index; // 0-based
};
struct Binary {
    BinaryOp op;
    ExprPtr lhs, rhs;
};
struct Unary {
    UnaryFn fn;
    ExprPtr child;
};

struct Expr {
    std::variant<Constant, Variable, Binary, Unary> node;
};

/// Parse `source` as an expression in param_dim variables. Throws ParseError
/// with the offending source offset, including for variables beyond u<param_dim>.
ExprPtr parse(std::string_view source, int param_dim);

/// Fully parenthesized form; parse(to_string(e)) reproduces the tree.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// Plain-real evaluation.
double eval(const Expr& e, const Eigen::VectorXd& u);

/// Degree-3 jet of the expression at u.
Jet3 eval_jet(const Expr& e, const Eigen::VectorXd& u);

/// A vector-valued map R^param_dim -> R^ambient_dim with one expression per
/// coordinate.
struct VectorFunction {
    int ambient_dim = 0;
    int param_dim = 0;
    std::vector<ExprPtr> components;

    static VectorFunction parse(const std::vector<std::string>& sources, int param_dim);

    Eigen::VectorXd eval(const Eigen::VectorXd& u) const;
    /// Component-wise jets; evaluation errors are annotated with the
    /// component index.
    std::vector<Jet3> eval_jets(const Eigen::VectorXd& u) const;
};

} // namespace subpot
