#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's own algorithms for the quantity being checked.

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "sphtrop/horn.hpp"
#include "sphtrop/matrix.hpp"
#include "sphtrop/series.hpp"
#include "sphtrop/trop.hpp"

namespace oracle {

using sphtrop::PuiseuxSeries;
using sphtrop::Rational;
using sphtrop::SeriesMatrix;

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline PuiseuxSeries mono(long c, const Rational& e) { return PuiseuxSeries::monomial(c, e); }
inline PuiseuxSeries cst(long c) { return PuiseuxSeries::constant(c); }

/// Smallest stored exponent, read straight off the term map.
inline Rational lowest_exponent(const PuiseuxSeries& s) { return s.terms().begin()->first; }

/// Schoolbook product of two exact series.
inline PuiseuxSeries::TermMap naive_product(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  PuiseuxSeries::TermMap out;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) out[ea + eb] += ca * cb;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// Leibniz determinant over all permutations.
inline PuiseuxSeries leibniz_det(const SeriesMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  PuiseuxSeries total;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) inversions += perm[a] > perm[b];
    PuiseuxSeries term = PuiseuxSeries::constant(inversions % 2 ? -1 : 1);
    for (std::size_t r = 0; r < n; ++r) term = term * m(r, perm[r]);
    total = total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// (d_1, d_2) of a 2x2 matrix from its four entries and ad - bc.
inline std::vector<Rational> minors_2x2(const SeriesMatrix& m) {
  Rational d1 = m(0, 0).valuation();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (auto v = m(i, j).try_valuation()) d1 = std::min(d1, *v);
  const PuiseuxSeries det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return {d1, det.valuation()};
}

/// U_r^n by testing every triple of r-element bitmasks.
inline std::set<sphtrop::horn::IndexTriple> brute_U(int n, int r) {
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != r) continue;
    std::vector<int> s;
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) s.push_back(b + 1);
    subsets.push_back(s);
  }
  auto sum = [](const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); };
  std::set<sphtrop::horn::IndexTriple> out;
  for (const auto& i : subsets)
    for (const auto& j : subsets)
      for (const auto& k : subsets)
        if (sum(i) + sum(j) == sum(k) + r * (r + 1) / 2) out.insert({i, j, k});
  return out;
}

/// Partition of an index set I = {i_1 < ... < i_r}: (i_r - r, ..., i_1 - 1).
inline std::vector<int> partition_of(const std::vector<int>& index_set) {
  std::vector<int> out;
  const int r = static_cast<int>(index_set.size());
  for (int a = r; a >= 1; --a) out.push_back(index_set[a - 1] - a);
  return out;
}

/// Littlewood-Richardson coefficient c^nu_{lambda mu} by counting LR
/// tableaux of shape nu / lambda and content mu.
inline long lr_coefficient(std::vector<int> lambda, const std::vector<int>& mu, const std::vector<int>& nu) {
  const int rows = static_cast<int>(nu.size());
  lambda.resize(std::max(lambda.size(), nu.size()), 0);
  if (lambda.size() > nu.size()) {
    for (std::size_t i = nu.size(); i < lambda.size(); ++i)
      if (lambda[i] != 0) return 0;
  }
  int total_mu = 0, total = 0;
  for (int x : mu) total_mu += x;
  for (int i = 0; i < rows; ++i) {
    if (lambda[i] > nu[i]) return 0;
    total += nu[i] - lambda[i];
  }
  if (total != total_mu) return 0;
  // Cells in reading order: rows top to bottom, each row right to left.
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < rows; ++i)
    for (int j = nu[i] - 1; j >= lambda[i]; --j) cells.emplace_back(i, j);
  std::vector<std::vector<int>> fill(rows, std::vector<int>(nu.empty() ? 0 : nu[0], 0));
  std::vector<int> used(mu.size() + 1, 0);
  long count = 0;
  std::function<void(std::size_t)> place = [&](std::size_t c) {
    if (c == cells.size()) {
      ++count;
      return;
    }
    const auto [i, j] = cells[c];
    for (int v = 1; v <= static_cast<int>(mu.size()); ++v) {
      if (used[v] >= mu[v - 1]) continue;
      if (v > 1 && used[v] + 1 > used[v - 1]) continue;
      if (j + 1 < nu[i] && v > fill[i][j + 1]) continue;
      if (i > 0 && j >= lambda[i - 1] && v <= fill[i - 1][j]) continue;
      fill[i][j] = v;
      ++used[v];
      place(c + 1);
      --used[v];
      fill[i][j] = 0;
    }
  };
  place(0);
  return count;
}

/// T_r^n as the triples in U_r^n with a nonzero LR coefficient.
inline std::set<sphtrop::horn::IndexTriple> lr_T(int n, int r) {
  std::set<sphtrop::horn::IndexTriple> out;
  for (const auto& t : brute_U(n, r))
    if (lr_coefficient(partition_of(t.i), partition_of(t.j), partition_of(t.k)) > 0) out.insert(t);
  return out;
}

/// c t^e or c1 t^e1 +- c2 t^e2 with valuations in [lo, hi].
inline PuiseuxSeries random_entry(std::mt19937_64& rng, int lo, int hi,
                                  std::optional<Rational> precision = std::nullopt) {
  std::uniform_int_distribution<int> exp(lo, hi), coef(-9, 9), shape(0, 1);
  auto nonzero = [&] {
    int c = 0;
    while (c == 0) c = coef(rng);
    return c;
  };
  PuiseuxSeries::TermMap terms;
  terms[exp(rng)] += nonzero();
  if (shape(rng)) terms[exp(rng)] += nonzero();
  PuiseuxSeries s = PuiseuxSeries::from_terms(terms, precision);
  if (s.is_zero_to_precision()) return PuiseuxSeries::from_terms({{Rational(lo), Rational(1)}}, precision);
  return s;
}

inline SeriesMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int lo, int hi,
                                  std::optional<Rational> precision = std::nullopt) {
  SeriesMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_entry(rng, lo, hi, precision);
  return m;
}

/// Tropicalization of the family [[1, s1], [s1^2, s2]] under monomial
/// parameters: positive alpha_1-axis, negative alpha_2-axis, and the closed
/// cone between the ray alpha_1 = alpha_2 / 2 (alpha_1 <= 0) and the negative
/// alpha_2-axis.
inline bool example_5_3_region(const Rational& a1, const Rational& a2) {
  if (a2 == 0 && a1 >= 0) return true;
  return a2 <= 0 && a1 <= 0 && 2 * a1 >= a2;
}

inline bool decreasing(const std::vector<Rational>& v) { return std::is_sorted(v.rbegin(), v.rend()); }

}  // namespace oracle
