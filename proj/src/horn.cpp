#include "sphtrop/horn.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sphtrop/errors.hpp"
#include "sphtrop/matrix.hpp"

namespace sphtrop::horn {

namespace {

std::string set_text(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (a) out += ",";
    out += std::to_string(s[a]);
  }
  return out + "}";
}

// Increasing r-subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(r));
  std::iota(cur.begin(), cur.end(), 1);
  if (r > n) return out;
  while (true) {
    out.push_back(cur);
    int pos = r - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n - r + pos + 1) --pos;
    if (pos < 0) break;
    ++cur[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < r; ++q) cur[static_cast<std::size_t>(q)] = cur[static_cast<std::size_t>(q - 1)] + 1;
  }
  return out;
}

int sum(const std::vector<int>& s) { return std::accumulate(s.begin(), s.end(), 0); }

void check_args(int n, int r) {
  if (n < 1 || r < 1 || r > n) {
    throw std::invalid_argument("need 1 <= r <= n, got n=" + std::to_string(n) + ", r=" + std::to_string(r));
  }
}

bool passes_recursive_condition(const IndexTriple& t, int r) {
  for (int p = 1; p < r; ++p) {
    for (const IndexTriple& fgh : enumerate_T(r, p)) {
      int lhs = 0, rhs = p * (p + 1) / 2;
      for (int f : fgh.i) lhs += t.i[static_cast<std::size_t>(f - 1)];
      for (int g : fgh.j) lhs += t.j[static_cast<std::size_t>(g - 1)];
      for (int h : fgh.k) rhs += t.k[static_cast<std::size_t>(h - 1)];
      if (lhs > rhs) return false;
    }
  }
  return true;
}

void validate(const HornQuery& q) {
  const std::size_t n = q.alpha.size();
  if (q.beta.size() != n || q.gamma_prime.size() != n) {
    throw DimensionMismatch("Horn query tuples have lengths " + std::to_string(q.alpha.size()) + ", " +
                            std::to_string(q.beta.size()) + ", " + std::to_string(q.gamma_prime.size()));
  }
  auto decreasing = [](const std::vector<Rational>& v) {
    return std::is_sorted(v.begin(), v.end(), std::greater<>());
  };
  if (!decreasing(q.alpha) || !decreasing(q.beta) || !decreasing(q.gamma_prime)) {
    throw std::invalid_argument("Horn query tuples must be weakly decreasing");
  }
}

}  // namespace

std::string IndexTriple::to_string() const { return set_text(i) + "|" + set_text(j) + "|" + set_text(k); }

std::vector<IndexTriple> enumerate_U(int n, int r) {
  check_args(n, r);
  const auto sets = subsets(n, r);
  std::vector<int> sums;
  for (const auto& s : sets) sums.push_back(sum(s));
  const int offset = r * (r + 1) / 2;
  std::vector<IndexTriple> out;
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = 0; b < sets.size(); ++b)
      for (std::size_t c = 0; c < sets.size(); ++c)
        if (sums[a] + sums[b] == sums[c] + offset) out.push_back({sets[a], sets[b], sets[c]});
  return out;
}

std::vector<IndexTriple> enumerate_T(int n, int r) {
  check_args(n, r);
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<IndexTriple>> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find({n, r}); it != memo.end()) return it->second;
  }
  // The recursion refers to T_p^r (triples inside {1..r}), not T_p^n.
  std::vector<IndexTriple> out;
  for (IndexTriple& t : enumerate_U(n, r))
    if (passes_recursive_condition(t, r)) out.push_back(std::move(t));
  std::lock_guard lock(mutex);
  memo.emplace(std::make_pair(n, r), out);
  return out;
}

std::optional<HornViolation> first_violation(const HornQuery& q) {
  validate(q);
  const int n = static_cast<int>(q.alpha.size());
  Rational lhs = 0, rhs = 0;
  for (int a = 0; a < n; ++a) {
    lhs += q.alpha[static_cast<std::size_t>(a)] + q.beta[static_cast<std::size_t>(a)];
    rhs += q.gamma_prime[static_cast<std::size_t>(a)];
  }
  if (lhs != rhs) return HornViolation{true, {}};
  for (int r = 1; r < n; ++r) {
    for (const IndexTriple& t : enumerate_T(n, r)) {
      Rational left = 0, right = 0;
      for (int k : t.k) left += q.gamma_prime[static_cast<std::size_t>(k - 1)];
      for (int i : t.i) right += q.alpha[static_cast<std::size_t>(i - 1)];
      for (int j : t.j) right += q.beta[static_cast<std::size_t>(j - 1)];
      if (left > right) return HornViolation{false, t};
    }
  }
  return std::nullopt;
}

bool horn_check(const HornQuery& q) { return !first_violation(q).has_value(); }

bool realizability_oracle(const HornQuery& q, const OracleOptions& options) {
  validate(q);
  const std::size_t n = q.alpha.size();
  if (n == 0 || n > 3) throw std::invalid_argument("realizability oracle supports 1 <= n <= 3");
  for (const auto* v : {&q.alpha, &q.beta, &q.gamma_prime})
    for (const Rational& x : *v)
      if (x.get_den() != 1) throw std::invalid_argument("realizability oracle needs integer tuples");

  std::vector<PuiseuxSeries> da, db;
  for (std::size_t a = 0; a < n; ++a) {
    da.push_back(PuiseuxSeries::monomial(1, q.alpha[a]));
    db.push_back(PuiseuxSeries::monomial(1, q.beta[a]));
  }
  const SeriesMatrix left = SeriesMatrix::diagonal(da);
  const SeriesMatrix right = SeriesMatrix::diagonal(db);

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<int> degree(0, options.degree_bound);
  std::uniform_int_distribution<std::size_t> index(0, n - 1);
  std::uniform_int_distribution<int> op_kind(0, 5);
  std::uniform_int_distribution<int> length(1, static_cast<int>(3 * n));

  for (int draw = 0; draw < options.draws; ++draw) {
    // u is a random word in elementary matrices over Q[t]: transpositions,
    // nonzero constant row scalings and shears by c t^k. det u is a nonzero constant.
    SeriesMatrix u = SeriesMatrix::identity(n);
    const int steps = length(rng);
    for (int s = 0; s < steps; ++s) {
      const std::size_t a = index(rng), b = index(rng);
      const int kind = op_kind(rng);
      if (kind == 0) {
        for (std::size_t c = 0; c < n; ++c) std::swap(u(a, c), u(b, c));
      } else if (kind == 1) {
        int c = coeff(rng);
        if (c == 0) c = 1;
        for (std::size_t col = 0; col < n; ++col) u(a, col) = mul(PuiseuxSeries::constant(c), u(a, col));
      } else if (a != b) {
        int c = coeff(rng);
        if (c == 0) continue;
        const PuiseuxSeries shear = PuiseuxSeries::monomial(c, degree(rng));
        for (std::size_t col = 0; col < n; ++col) u(a, col) = add(u(a, col), mul(shear, u(b, col)));
      }
    }
    const SeriesMatrix x = multiply(multiply(left, u), right);
    if (invariant_factors_minors(x).alphas == q.gamma_prime) return true;
  }
  return false;
}

bool rep_variety_membership(RepGroup group, int n, const std::vector<Rational>& alpha,
                            const std::vector<Rational>& beta, const std::vector<Rational>& gamma) {
  if (n < 1 || (group == RepGroup::SL && n < 2)) throw std::invalid_argument("invalid group dimension");
  const std::size_t expected = group == RepGroup::GL ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n - 1);
  for (const auto* v : {&alpha, &beta, &gamma}) {
    if (v->size() != expected) {
      throw DimensionMismatch("expected tuples of length " + std::to_string(expected) + ", got " +
                              std::to_string(v->size()));
    }
  }
  auto complete = [&](std::vector<Rational> v) {
    if (group == RepGroup::SL) v.push_back(-std::accumulate(v.begin(), v.end(), Rational(0)));
    return v;
  };
  HornQuery q{complete(alpha), complete(beta), {}};
  const std::vector<Rational> g = complete(gamma);
  for (auto it = g.rbegin(); it != g.rend(); ++it) q.gamma_prime.push_back(-*it);
  auto decreasing = [](const std::vector<Rational>& v) { return std::is_sorted(v.begin(), v.end(), std::greater<>()); };
  // Completed SL tuples outside the valuation cone are not invariant factors of anything.
  if (!decreasing(q.alpha) || !decreasing(q.beta) || !decreasing(q.gamma_prime)) return false;
  return horn_check(q);
}

}  // namespace sphtrop::horn
