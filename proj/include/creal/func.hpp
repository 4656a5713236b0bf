#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "creal/creal.hpp"
#include "creal/interval.hpp"

namespace cra {

struct FuncExpr;
using ExprPtr = std::shared_ptr<const FuncExpr>;

// Closed expression grammar: variable x, rational constants, neg/abs,
// add/sub/mul/min/max. Immutable, shared subtrees allowed.
struct FuncExpr {
  enum class Kind { Var, Const, Neg, Abs, Add, Sub, Mul, Min, Max };

  Kind kind;
  Rational value;  // Const only
  ExprPtr lhs;     // unary operand / left operand
  ExprPtr rhs;     // binary right operand

  static ExprPtr var();
  static ExprPtr constant(Rational v);
  static ExprPtr neg(ExprPtr e);
  static ExprPtr abs(ExprPtr e);
  static ExprPtr add(ExprPtr a, ExprPtr b);
  static ExprPtr sub(ExprPtr a, ExprPtr b);
  static ExprPtr mul(ExprPtr a, ExprPtr b);
  static ExprPtr min(ExprPtr a, ExprPtr b);
  static ExprPtr max(ExprPtr a, ExprPtr b);

  // Replaces every occurrence of the variable by `replacement`.
  static ExprPtr substitute(const ExprPtr& e, const ExprPtr& replacement);
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Exact value at a rational point; the test oracle for eval_at.
Rational eval_exact(const FuncExpr& e, const Rational& x);

// Interval extension by structural recursion; sound and monotone.
RatInterval eval_range(const FuncExpr& e, const RatInterval& I);

// Canonical rendering; parse(to_text(e)) reproduces e structurally.
std::string to_text(const FuncExpr& e);

// Recursive-descent parser for the grammar; errors carry line/column.
ExprPtr parse_expr(std::string_view text);

// A constructive function: an expression with its interval of definition.
struct CFunc {
  ExprPtr expr;
  RatInterval domain;
};

// Sound enclosure of f over I. Throws DomainEscape if I is not inside the
// domain.
RatInterval eval_interval(const CFunc& f, const RatInterval& I);

// f applied to a computable real. The input is checked against the domain
// at precision 4 and trusted thereafter; each approx(n) refines the input
// interval until the output enclosure has width <= 2^-n.
CReal eval_at(const CFunc& f, const CReal& x);

// Rational L with width(eval_interval(I)) <= L * width(I) for I inside the
// domain, derived from the expression structure and domain range bounds.
Rational lipschitz_bound(const CFunc& f);

// A claim that f is constant on (c - r, c + r) around any queried point c.
// The claim is data: the refuter's job is to contradict it.
struct LocalityOracle {
  std::string name;
  std::function<Rational(const Rational&)> radius_at;

  static LocalityOracle constant_radius(std::string name, Rational r);
  // Nearest-center lookup; ties go to the smaller center.
  static LocalityOracle table(std::string name,
                              std::vector<std::pair<Rational, Rational>> entries);
};

}  // namespace cra
