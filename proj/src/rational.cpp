#include "sphtrop/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace sphtrop {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  auto slash = s.find('/');
  auto all_digits = [&](std::size_t b, std::size_t e) {
    if (b >= e) return false;
    return std::all_of(s.begin() + b, s.begin() + e,
                       [](unsigned char c) { return std::isdigit(c); });
  };
  std::size_t num_end = slash == std::string::npos ? s.size() : slash;
  if (!all_digits(start, num_end) ||
      (slash != std::string::npos && !all_digits(slash + 1, s.size()))) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
  if (slash != std::string::npos && q.get_den() == 0) {
    throw std::invalid_argument("zero denominator in '" + s + "'");
  }
  q.canonicalize();
  return q;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

}  // namespace sphtrop
