#pragma once

// Scalar expressions in the surface parameters u and v.
//
// Grammar (lowest to highest precedence):
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' exponent)?          right associative
//   exponent:= ('-' | '+') exponent | power
//   primary := number | 'u' | 'v' | 'pi' | 'e' | func '(' sum ')' | '(' sum ')'
// with func one of sin cos tan sinh cosh tanh exp log sqrt abs.

#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "isogeo/jet.hpp"

namespace isogeo {

enum class Variable { U, V };

enum class UnaryFn { Negate, Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  static Expr constant(double value);
  static Expr variable(Variable which);
  static Expr unary(UnaryFn fn, Expr arg);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

  const ExprNode& node() const { return *node_; }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ConstantNode {
  double value;
};
struct VariableNode {
  Variable which;
};
struct UnaryNode {
  UnaryFn fn;
  Expr arg;
};
struct BinaryNode {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};

struct ExprNode {
  std::variant<ConstantNode, VariableNode, UnaryNode, BinaryNode> data;
};

/// Parses `source`; throws ParseError carrying the byte offset of the first
/// problem.
Expr parse(std::string_view source);

/// Fully parenthesised text that parses back to a structurally equal tree.
std::string to_string(const Expr& e);

/// Same shape, same operators and bitwise-equal constants.
bool structurally_equal(const Expr& a, const Expr& b);

bool depends_on(const Expr& e, Variable which);

/// Evaluates with `u` and `v` bound to the given values. Instantiated for
/// double and Jet2d; throws GeometryError(DomainError) outside the domain of
/// an operation.
template <typename T>
T evaluate(const Expr& e, const T& u, const T& v);

/// Value and all partials through second order at (u, v).
Jet2d eval_jet2(const Expr& e, double u, double v);

}  // namespace isogeo
