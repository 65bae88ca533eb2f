#include "sphtrop/series.hpp"

#include <sstream>
#include <stdexcept>

namespace sphtrop {

namespace {

std::optional<Rational> min_precision(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

// Lower bound on the true valuation: the valuation if determinate, otherwise
// the precision (a zero-to-precision series is O(t^P)). Exact zero has none.
std::optional<Rational> valuation_floor(const PuiseuxSeries& s) {
  if (!s.is_zero_to_precision()) return s.valuation();
  return s.precision();
}

std::string exponent_text(const Rational& e) {
  if (e.get_den() == 1) return e.get_str();
  return "(" + e.get_str() + ")";
}

}  // namespace

PuiseuxSeries PuiseuxSeries::constant(const Rational& c) { return monomial(c, 0); }

PuiseuxSeries PuiseuxSeries::monomial(const Rational& coefficient, const Rational& exponent) {
  TermMap t;
  t.emplace(exponent, coefficient);
  return from_terms(std::move(t));
}

PuiseuxSeries PuiseuxSeries::zero_to_precision(const Rational& precision) {
  return from_terms({}, precision);
}

PuiseuxSeries PuiseuxSeries::from_terms(TermMap terms, std::optional<Rational> precision) {
  PuiseuxSeries s;
  s.terms_ = std::move(terms);
  s.precision_ = std::move(precision);
  s.normalize();
  return s;
}

void PuiseuxSeries::normalize() {
  // Callers may hand in uncanonicalized p/q values; map order depends on them.
  bool canonical = true;
  for (const auto& [e, c] : terms_) {
    Rational ce = e, cc = c;
    ce.canonicalize();
    cc.canonicalize();
    if (ce.get_num() != e.get_num() || ce.get_den() != e.get_den() || cc.get_den() != c.get_den()) {
      canonical = false;
      break;
    }
  }
  if (!canonical) {
    TermMap fixed;
    for (const auto& [key, value] : terms_) {
      Rational e = key, c = value;
      e.canonicalize();
      c.canonicalize();
      fixed[e] += c;
    }
    terms_ = std::move(fixed);
  }
  if (precision_) precision_->canonicalize();
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0 || (precision_ && it->first >= *precision_)) {
      it = terms_.erase(it);
    } else {
      ramification_ = lcm(ramification_, it->first.get_den());
      ++it;
    }
  }
  if (precision_) ramification_ = lcm(ramification_, precision_->get_den());
}

Rational PuiseuxSeries::valuation() const {
  if (terms_.empty()) {
    throw IndeterminateValuation(precision_ ? "series is zero to precision " + precision_->get_str()
                                            : "series is exactly zero");
  }
  return terms_.begin()->first;
}

std::optional<Rational> PuiseuxSeries::try_valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

Rational PuiseuxSeries::leading_coefficient() const {
  if (terms_.empty()) throw IndeterminateValuation("leading coefficient of a zero-to-precision series");
  return terms_.begin()->second;
}

Rational PuiseuxSeries::coefficient(const Rational& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

PuiseuxSeries PuiseuxSeries::truncated(const Rational& cutoff) const {
  PuiseuxSeries s = *this;
  s.precision_ = min_precision(precision_, cutoff);
  s.terms_.erase(s.terms_.lower_bound(*s.precision_), s.terms_.end());
  return s;
}

std::string PuiseuxSeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "t";
    if (e != 1) out << "^" << exponent_text(e);
  }
  if (precision_) {
    out << (first ? "" : " + ") << "O(t^" << exponent_text(*precision_) << ")";
  } else if (first) {
    out << "0";
  }
  return out.str();
}

PuiseuxSeries add(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  PuiseuxSeries::TermMap terms = a.terms();
  for (const auto& [e, c] : b.terms()) terms[e] += c;
  return PuiseuxSeries::from_terms(std::move(terms), min_precision(a.precision(), b.precision()));
}

PuiseuxSeries neg(const PuiseuxSeries& a) {
  PuiseuxSeries::TermMap terms = a.terms();
  for (auto& [e, c] : terms) c = -c;
  return PuiseuxSeries::from_terms(std::move(terms), a.precision());
}

PuiseuxSeries sub(const PuiseuxSeries& a, const PuiseuxSeries& b) { return add(a, neg(b)); }

PuiseuxSeries mul(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if ((a.is_exact() && a.is_zero_to_precision()) || (b.is_exact() && b.is_zero_to_precision())) {
    return PuiseuxSeries();
  }
  // Unknown tail of a (at t^{P_a}) times the lowest part of b, and vice versa.
  std::optional<Rational> precision;
  if (a.precision()) precision = min_precision(precision, *a.precision() + *valuation_floor(b));
  if (b.precision()) precision = min_precision(precision, *b.precision() + *valuation_floor(a));

  PuiseuxSeries::TermMap terms;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      Rational e = ea + eb;
      if (precision && e >= *precision) break;
      terms[e] += ca * cb;
    }
  }
  return PuiseuxSeries::from_terms(std::move(terms), precision);
}

PuiseuxSeries invert(const PuiseuxSeries& a, const Rational& relative_precision) {
  if (a.is_zero_to_precision()) {
    throw IndeterminateValuation("cannot invert a series that is zero to precision");
  }
  const Rational v = a.valuation();
  const Rational c = a.leading_coefficient();
  if (a.is_exact() && a.terms().size() == 1) return PuiseuxSeries::monomial(1 / c, -v);

  // a = c t^v (1 + u) with val(u) > 0, known to relative order R.
  const Rational rel = a.precision() ? *a.precision() - v : relative_precision;
  PuiseuxSeries::TermMap u_terms;
  for (const auto& [e, coeff] : a.terms()) {
    if (e == v) continue;
    u_terms.emplace(e - v, -coeff / c);
  }
  const PuiseuxSeries minus_u = PuiseuxSeries::from_terms(std::move(u_terms), rel);

  PuiseuxSeries sum = PuiseuxSeries::constant(1).truncated(rel);
  PuiseuxSeries power = sum;
  while (true) {
    power = mul(power, minus_u).truncated(rel);
    if (power.is_zero_to_precision()) break;
    sum = add(sum, power);
  }
  return mul(PuiseuxSeries::monomial(1 / c, -v), sum);
}

PuiseuxSeries divide(const PuiseuxSeries& a, const PuiseuxSeries& b, const Rational& relative_precision) {
  return mul(a, invert(b, relative_precision));
}

PuiseuxSeries pow(const PuiseuxSeries& a, long exponent, const Rational& relative_precision) {
  if (exponent < 0) return pow(invert(a, relative_precision), -exponent, relative_precision);
  PuiseuxSeries result = PuiseuxSeries::constant(1);
  PuiseuxSeries base = a;
  auto e = static_cast<unsigned long>(exponent);
  while (e) {
    if (e & 1UL) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

PuiseuxSeries scale_exponents(const PuiseuxSeries& s, const Rational& c) {
  if (c < 0) throw std::invalid_argument("scale_exponents needs a nonnegative factor");
  PuiseuxSeries::TermMap terms;
  if (c == 0) {
    Rational total = 0;
    for (const auto& [e, coeff] : s.terms()) total += coeff;
    terms.emplace(Rational(0), total);
    // Only the constant term of f(1) is meaningful for a truncated input.
    return PuiseuxSeries::from_terms(std::move(terms),
                                     s.is_exact() ? std::nullopt : std::optional<Rational>(1));
  }
  for (const auto& [e, coeff] : s.terms()) terms.emplace(c * e, coeff);
  std::optional<Rational> precision;
  if (s.precision()) precision = c * *s.precision();
  return PuiseuxSeries::from_terms(std::move(terms), precision);
}

}  // namespace sphtrop
