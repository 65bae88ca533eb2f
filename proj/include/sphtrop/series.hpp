#pragma once

#include <map>
#include <optional>
#include <string>

#include "sphtrop/errors.hpp"
#include "sphtrop/rational.hpp"

namespace sphtrop {

/// Default precision cutoff (in exponent units) used whenever a truncated
/// expansion has to be produced from exact data.
inline const Rational kDefaultPrecision{32};

/// Truncated Puiseux series sum c_e t^e over the rationals.
///
/// Exponents live on the grid (1/m)Z where m is the ramification. The series
/// is known exactly for exponents strictly below `precision()`; a missing
/// precision means the series is exact (a Laurent polynomial in t^(1/m)).
/// A series with no stored terms is "zero to precision" and has no
/// determinate valuation.
class PuiseuxSeries {
 public:
  using TermMap = std::map<Rational, Rational>;

  /// Exact zero.
  PuiseuxSeries() = default;

  static PuiseuxSeries constant(const Rational& c);
  static PuiseuxSeries monomial(const Rational& coefficient, const Rational& exponent);
  static PuiseuxSeries zero_to_precision(const Rational& precision);
  /// Drops zero coefficients and terms at or above the precision.
  static PuiseuxSeries from_terms(TermMap terms, std::optional<Rational> precision = std::nullopt);

  const TermMap& terms() const noexcept { return terms_; }
  const std::optional<Rational>& precision() const noexcept { return precision_; }
  const Integer& ramification() const noexcept { return ramification_; }

  bool is_exact() const noexcept { return !precision_.has_value(); }
  bool is_zero_to_precision() const noexcept { return terms_.empty(); }

  /// Least exponent with a nonzero coefficient.
  /// Throws IndeterminateValuation when the series is zero to precision.
  Rational valuation() const;
  std::optional<Rational> try_valuation() const;
  Rational leading_coefficient() const;
  Rational coefficient(const Rational& exponent) const;

  /// Forgets everything at or above `cutoff`.
  PuiseuxSeries truncated(const Rational& cutoff) const;

  /// "3*t^-2 + 1/2*t + t^(1/3) + O(t^32)"; exact series omit the O-term.
  std::string to_string() const;

  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return a.terms_ == b.terms_ && a.precision_ == b.precision_;
  }

 private:
  TermMap terms_;
  std::optional<Rational> precision_;
  Integer ramification_{1};

  void normalize();
};

PuiseuxSeries add(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries sub(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries mul(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries neg(const PuiseuxSeries& a);

/// Multiplicative inverse. Exact monomials invert exactly; otherwise the
/// geometric series of the non-leading part is expanded. For exact inputs
/// with several terms `relative_precision` fixes how many exponent units past
/// the leading term are kept.
PuiseuxSeries invert(const PuiseuxSeries& a, const Rational& relative_precision = kDefaultPrecision);

/// a / b = a * invert(b).
PuiseuxSeries divide(const PuiseuxSeries& a, const PuiseuxSeries& b,
                     const Rational& relative_precision = kDefaultPrecision);

/// Integer power; negative exponents go through invert.
PuiseuxSeries pow(const PuiseuxSeries& a, long exponent,
                  const Rational& relative_precision = kDefaultPrecision);

/// Substitutes t -> t^c for c >= 0. For c = 0 every term collapses onto the
/// constant term.
PuiseuxSeries scale_exponents(const PuiseuxSeries& s, const Rational& c);

inline PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) { return add(a, b); }
inline PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return sub(a, b); }
inline PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) { return mul(a, b); }
inline PuiseuxSeries operator-(const PuiseuxSeries& a) { return neg(a); }

}  // namespace sphtrop
