#ifndef CAFF_EXPR_HPP
#define CAFF_EXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include "caff/jets.hpp"

namespace caff {

enum class BinOp { Add, Sub, Mul, Div };
enum class Func { Sqrt, Ln, Exp, Sin, Cos };

// Immutable expression tree. Shared subtrees are fine; evaluation never
// mutates nodes.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Constant, Variable, Neg, Binary, Pow, Call };
  Kind kind;
  double number = 0.0;  // Constant value, or Pow exponent
  int var = -1;         // 0-based variable index
  BinOp op = BinOp::Add;
  Func func = Func::Sqrt;
  ExprPtr lhs;  // child for Neg/Pow/Call
  ExprPtr rhs;
};

ExprPtr make_const(double value);
ExprPtr make_var(int index);
ExprPtr make_neg(ExprPtr a);  // folds -(constant)
ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_pow(ExprPtr base, double exponent);
ExprPtr make_call(Func f, ExprPtr arg);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);
std::string print_expr(const ExprPtr& e);

// Plain-value evaluation (used by domain guards and finite-difference
// cross checks). Throws EvalDomainError outside function domains.
double eval_value(const ExprPtr& e, const std::vector<double>& point);

// Jet evaluation against caller-provided variable jets (the hook for
// chart reparametrizations).
Jet eval_jet(const ExprPtr& e, const std::vector<Jet>& vars);

// Convenience: seeds variable jets at `point` first.
Jet eval_jet_at(const ExprPtr& e, const std::vector<double>& point);

// A parsed immersion definition: n+1 component expressions of the chart
// variables u1..un, with an optional positivity guard.
struct SurfaceSpec {
  std::string name;
  int nvars = 0;
  std::vector<ExprPtr> components;  // exactly nvars + 1
  ExprPtr guard;                    // may be null
};

// Parses the surface file format: `key=value` lines with keys `n`,
// `x1`..`x{n+1}`, optional `guard` and `name`; `#` starts a comment.
SurfaceSpec parse_surface(const std::string& text);

// Parses a single expression; when nvars >= 0, variables beyond u{nvars}
// are rejected.
ExprPtr parse_expression(const std::string& text, int nvars = -1);

// Prints a spec in the surface file format such that parse_surface
// round-trips to an identical tree.
std::string print_surface(const SurfaceSpec& spec);

bool spec_equal(const SurfaceSpec& a, const SurfaceSpec& b);

}  // namespace caff

#endif  // CAFF_EXPR_HPP
