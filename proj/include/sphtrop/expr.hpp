#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sphtrop/rational.hpp"
#include "sphtrop/series.hpp"

namespace sphtrop {

/// A free variable of the expression language.
///   Entry  x[i][j]   coordinate of a matrix group (1-indexed)
///   Coord  x[i]      coordinate of a vector space; `x` and `y` abbreviate x[1], x[2]
///   Param  s<i>      parameter of a parametrized family
struct Variable {
  enum class Kind { Entry, Coord, Param };
  Kind kind = Kind::Param;
  int i = 0;
  int j = 0;

  static Variable entry(int i, int j) { return {Kind::Entry, i, j}; }
  static Variable coord(int i) { return {Kind::Coord, i, 0}; }
  static Variable param(int i) { return {Kind::Param, i, 0}; }

  std::string name() const;
  auto operator<=>(const Variable&) const = default;
};

using Assignment = std::map<Variable, PuiseuxSeries>;

/// Immutable expression tree. Copies share structure.
class Expression {
 public:
  enum class Op { Literal, SeriesVar, Var, Neg, Add, Sub, Mul, Div, Pow };

  struct Node {
    Op op = Op::Literal;
    Rational value;  // Literal: the value; Pow: the exponent
    Variable var;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  Expression();  // literal 0
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  static Expression literal(const Rational& value);
  static Expression series_var();
  static Expression variable(const Variable& v);
  /// Throws std::invalid_argument for a non-integer exponent on anything but t.
  static Expression power(const Expression& base, Rational exponent);

  const Node& node() const { return *root_; }
  Op op() const { return root_->op; }

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);

 private:
  std::shared_ptr<const Node> root_;
};

/// Grammar (whitespace is insignificant):
///   expr     := term (('+' | '-') term)*
///   term     := unary (('*' | '/') unary)*
///   unary    := '-' unary | power
///   power    := atom ('^' exponent)*
///   exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
///   atom     := INT | 't' | 'x' | 'y' | 'x[' INT ']' | 'x[' INT '][' INT ']'
///             | 's' INT | '(' expr ')'
/// Rational exponents are accepted on `t` only.
Expression parse_expression(std::string_view text);

/// Canonical text; parse_expression(print(e)) prints back identically.
std::string print(const Expression& e);

/// Evaluates in the series field. Division and negative powers go through
/// `invert`, so a zero-to-precision denominator raises IndeterminateValuation.
PuiseuxSeries evaluate(const Expression& e, const Assignment& assignment,
                       const Rational& relative_precision = kDefaultPrecision);

std::set<Variable> variables(const Expression& e);

/// Whether the series variable t occurs in `e`.
bool mentions_t(const Expression& e);

/// Total degree when `e` is a polynomial in its variables (constants may be
/// divided by, variables may not); nullopt otherwise.
std::optional<long> polynomial_degree(const Expression& e);

/// A matrix literal: rows separated by ';', entries by ','.
std::vector<std::vector<Expression>> parse_matrix_literal(std::string_view text);

/// Comma-separated entries, e.g. "s1, 1 - s1".
std::vector<Expression> parse_vector_literal(std::string_view text);

}  // namespace sphtrop
