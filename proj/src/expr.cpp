#include "sphtrop/expr.hpp"

#include <cctype>
#include <stdexcept>

#include "sphtrop/errors.hpp"

namespace sphtrop {

using Node = Expression::Node;
using Op = Expression::Op;

std::string Variable::name() const {
  switch (kind) {
    case Kind::Entry:
      return "x[" + std::to_string(i) + "][" + std::to_string(j) + "]";
    case Kind::Coord:
      return "x[" + std::to_string(i) + "]";
    case Kind::Param:
      return "s" + std::to_string(i);
  }
  return {};
}

namespace {

std::shared_ptr<const Node> make(Op op, std::shared_ptr<const Node> lhs = nullptr,
                                 std::shared_ptr<const Node> rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  Expression parse() {
    auto e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return Expression(e);
  }

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(base_ + pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Integer integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  int small_index() {
    std::size_t at = pos_;
    Integer v = integer();
    if (v < 1 || v > 1000000) {
      pos_ = at;
      fail("index out of range");
    }
    return static_cast<int>(v.get_si());
  }

  std::shared_ptr<const Node> expr() {
    auto lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = make(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  std::shared_ptr<const Node> term() {
    auto lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = make(Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  std::shared_ptr<const Node> unary() {
    if (accept('-')) return make(Op::Neg, unary());
    return power();
  }

  std::shared_ptr<const Node> power() {
    auto base = atom();
    while (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      Rational exponent = exponent_value();
      if (exponent.get_den() != 1 && base->op != Op::SeriesVar) {
        pos_ = at;
        fail("only t may carry a non-integer exponent");
      }
      auto n = std::make_shared<Node>();
      n->op = Op::Pow;
      n->value = exponent;
      n->lhs = base;
      base = n;
    }
    return base;
  }

  Rational exponent_value() {
    if (accept('(')) {
      bool negative = accept('-');
      Rational q(integer());
      if (accept('/')) {
        Integer den = integer();
        if (den == 0) fail("zero denominator");
        q /= Rational(den);
      }
      expect(')');
      return negative ? Rational(-q) : q;
    }
    bool negative = accept('-');
    Rational q(integer());
    return negative ? Rational(-q) : q;
  }

  std::shared_ptr<const Node> atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto n = std::make_shared<Node>();
      n->op = Op::Literal;
      n->value = Rational(integer());
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");

    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view ident = text_.substr(start, pos_ - start);
    auto var_node = [](const Variable& v) {
      auto n = std::make_shared<Node>();
      n->op = Op::Var;
      n->var = v;
      return n;
    };
    if (ident == "t") return make(Op::SeriesVar);
    if (ident == "y") return var_node(Variable::coord(2));
    if (ident == "x") {
      if (pos_ < text_.size() && text_[pos_] == '[') {
        ++pos_;
        int i = small_index();
        expect(']');
        if (pos_ < text_.size() && text_[pos_] == '[') {
          ++pos_;
          int j = small_index();
          expect(']');
          return var_node(Variable::entry(i, j));
        }
        return var_node(Variable::coord(i));
      }
      return var_node(Variable::coord(1));
    }
    if (ident.size() > 1 && ident[0] == 's') {
      bool digits = true;
      for (char d : ident.substr(1)) digits = digits && std::isdigit(static_cast<unsigned char>(d));
      if (digits && ident[1] != '0') return var_node(Variable::param(std::stoi(std::string(ident.substr(1)))));
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(ident) + "'");
  }
};

int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string exponent_text(const Rational& e) {
  if (e.get_den() == 1) return e.get_str();
  return "(" + e.get_str() + ")";
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int min_prec, std::string& out) {
  int prec = precedence(child.op);
  // Fractional and negative literals read back as a division / unary minus.
  if (child.op == Op::Literal) prec = child.value.get_den() != 1 ? 2 : (child.value < 0 ? 3 : 5);
  bool parens = prec < min_prec;
  if (parens) out += "(";
  print_node(child, out);
  if (parens) out += ")";
}

void print_node(const Node& n, std::string& out) {
  switch (n.op) {
    case Op::Literal:
      out += n.value.get_str();
      return;
    case Op::SeriesVar:
      out += "t";
      return;
    case Op::Var:
      out += n.var.name();
      return;
    case Op::Neg:
      out += "-";
      print_child(*n.lhs, 3, out);
      return;
    case Op::Pow:
      print_child(*n.lhs, 5, out);
      out += "^" + exponent_text(n.value);
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      int p = precedence(n.op);
      print_child(*n.lhs, p, out);
      switch (n.op) {
        case Op::Add: out += " + "; break;
        case Op::Sub: out += " - "; break;
        case Op::Mul: out += "*"; break;
        default: out += "/"; break;
      }
      print_child(*n.rhs, p + 1, out);
      return;
    }
  }
}

PuiseuxSeries eval_node(const Node& n, const Assignment& a, const Rational& rel) {
  switch (n.op) {
    case Op::Literal:
      return PuiseuxSeries::constant(n.value);
    case Op::SeriesVar:
      return PuiseuxSeries::monomial(1, 1);
    case Op::Var: {
      auto it = a.find(n.var);
      if (it == a.end()) throw MissingAssignment("no value assigned to " + n.var.name());
      return it->second;
    }
    case Op::Neg:
      return neg(eval_node(*n.lhs, a, rel));
    case Op::Add:
      return add(eval_node(*n.lhs, a, rel), eval_node(*n.rhs, a, rel));
    case Op::Sub:
      return sub(eval_node(*n.lhs, a, rel), eval_node(*n.rhs, a, rel));
    case Op::Mul:
      return mul(eval_node(*n.lhs, a, rel), eval_node(*n.rhs, a, rel));
    case Op::Div:
      return divide(eval_node(*n.lhs, a, rel), eval_node(*n.rhs, a, rel), rel);
    case Op::Pow:
      if (n.lhs->op == Op::SeriesVar) return PuiseuxSeries::monomial(1, n.value);
      return pow(eval_node(*n.lhs, a, rel), n.value.get_num().get_si(), rel);
  }
  throw std::logic_error("unreachable");
}

void collect(const Node& n, std::set<Variable>& out) {
  if (n.op == Op::Var) out.insert(n.var);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

bool has_t(const Node& n) {
  if (n.op == Op::SeriesVar) return true;
  return (n.lhs && has_t(*n.lhs)) || (n.rhs && has_t(*n.rhs));
}

std::optional<long> degree_of(const Node& n) {
  switch (n.op) {
    case Op::Literal:
    case Op::SeriesVar:
      return 0;
    case Op::Var:
      return 1;
    case Op::Neg:
      return degree_of(*n.lhs);
    case Op::Add:
    case Op::Sub: {
      auto l = degree_of(*n.lhs), r = degree_of(*n.rhs);
      if (!l || !r) return std::nullopt;
      return std::max(*l, *r);
    }
    case Op::Mul: {
      auto l = degree_of(*n.lhs), r = degree_of(*n.rhs);
      if (!l || !r) return std::nullopt;
      return *l + *r;
    }
    case Op::Div: {
      auto l = degree_of(*n.lhs), r = degree_of(*n.rhs);
      if (!l || !r || *r != 0) return std::nullopt;
      return l;
    }
    case Op::Pow: {
      auto b = degree_of(*n.lhs);
      if (!b) return std::nullopt;
      if (*b == 0) return 0;
      if (n.value < 0) return std::nullopt;
      return *b * n.value.get_num().get_si();
    }
  }
  return std::nullopt;
}

std::vector<std::string_view> split(std::string_view text, char sep, std::vector<std::size_t>& offsets,
                                    std::size_t base) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      parts.push_back(text.substr(start, i - start));
      offsets.push_back(base + start);
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

Expression::Expression() : root_(make(Op::Literal)) {}

Expression Expression::literal(const Rational& value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Literal;
  n->value = value;
  n->value.canonicalize();
  return Expression(n);
}

Expression Expression::series_var() { return Expression(make(Op::SeriesVar)); }

Expression Expression::variable(const Variable& v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = v;
  return Expression(n);
}

Expression Expression::power(const Expression& base, Rational exponent) {
  exponent.canonicalize();
  if (exponent.get_den() != 1 && base.op() != Op::SeriesVar) {
    throw std::invalid_argument("only t may carry a non-integer exponent");
  }
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->value = exponent;
  n->lhs = base.root_;
  return Expression(n);
}

Expression operator+(const Expression& a, const Expression& b) { return Expression(make(Op::Add, a.root_, b.root_)); }
Expression operator-(const Expression& a, const Expression& b) { return Expression(make(Op::Sub, a.root_, b.root_)); }
Expression operator*(const Expression& a, const Expression& b) { return Expression(make(Op::Mul, a.root_, b.root_)); }
Expression operator/(const Expression& a, const Expression& b) { return Expression(make(Op::Div, a.root_, b.root_)); }
Expression operator-(const Expression& a) { return Expression(make(Op::Neg, a.root_)); }

Expression parse_expression(std::string_view text) { return Parser(text, 0).parse(); }

std::string print(const Expression& e) {
  std::string out;
  print_node(e.node(), out);
  return out;
}

PuiseuxSeries evaluate(const Expression& e, const Assignment& assignment, const Rational& relative_precision) {
  return eval_node(e.node(), assignment, relative_precision);
}

std::set<Variable> variables(const Expression& e) {
  std::set<Variable> out;
  collect(e.node(), out);
  return out;
}

bool mentions_t(const Expression& e) { return has_t(e.node()); }

std::optional<long> polynomial_degree(const Expression& e) { return degree_of(e.node()); }

std::vector<std::vector<Expression>> parse_matrix_literal(std::string_view text) {
  std::vector<std::vector<Expression>> rows;
  std::vector<std::size_t> row_offsets;
  auto row_texts = split(text, ';', row_offsets, 0);
  for (std::size_t r = 0; r < row_texts.size(); ++r) {
    std::vector<std::size_t> offsets;
    auto entries = split(row_texts[r], ',', offsets, row_offsets[r]);
    std::vector<Expression> row;
    for (std::size_t c = 0; c < entries.size(); ++c) row.push_back(Parser(entries[c], offsets[c]).parse());
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(row_offsets[r], "row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                                           " entries, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Expression> parse_vector_literal(std::string_view text) {
  std::vector<std::size_t> offsets;
  auto entries = split(text, ',', offsets, 0);
  std::vector<Expression> out;
  for (std::size_t c = 0; c < entries.size(); ++c) out.push_back(Parser(entries[c], offsets[c]).parse());
  return out;
}

}  // namespace sphtrop
