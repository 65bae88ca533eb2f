#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "sphtrop/errors.hpp"
#include "sphtrop/horn.hpp"

using namespace sphtrop;
using namespace sphtrop::horn;
using oracle::q;

namespace {

using Tuple = std::vector<Rational>;

Tuple tuple(std::initializer_list<long> v) {
  Tuple out;
  for (long x : v) out.push_back(q(x));
  return out;
}

Tuple random_decreasing(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  Tuple t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(q(d(rng)));
  std::sort(t.rbegin(), t.rend());
  return t;
}

/// A query with the trace equality, built from random products where
/// possible so that roughly half are realizable.
HornQuery random_query(std::mt19937_64& rng, std::size_t n) {
  HornQuery query{random_decreasing(rng, n, -3, 3), random_decreasing(rng, n, -3, 3), {}};
  Rational total = 0;
  for (const auto& x : query.alpha) total += x;
  for (const auto& x : query.beta) total += x;
  query.gamma_prime = random_decreasing(rng, n, -3, 3);
  Rational rest = total;
  for (std::size_t i = 1; i < n; ++i) rest -= query.gamma_prime[i];
  query.gamma_prime[0] = rest;
  std::sort(query.gamma_prime.rbegin(), query.gamma_prime.rend());
  return query;
}

}  // namespace

TEST_CASE("enumerate_U") {
  CHECK(enumerate_U(2, 1) ==
        std::vector<IndexTriple>{{{1}, {1}, {1}}, {{1}, {2}, {2}}, {{2}, {1}, {2}}});
  CHECK(enumerate_U(2, 2) == std::vector<IndexTriple>{{{1, 2}, {1, 2}, {1, 2}}});
  for (int n = 1; n <= 5; ++n)
    for (int r = 1; r <= n; ++r) {
      const auto u = enumerate_U(n, r);
      CHECK(std::is_sorted(u.begin(), u.end()));
      CHECK(std::set<IndexTriple>(u.begin(), u.end()) == oracle::brute_U(n, r));
    }
}

TEST_CASE("enumerate_T") {
  for (int n = 2; n <= 4; ++n) CHECK(enumerate_T(n, 1) == enumerate_U(n, 1));
  CHECK(enumerate_T(2, 2) == std::vector<IndexTriple>{{{1, 2}, {1, 2}, {1, 2}}});
  for (int n = 2; n <= 6; ++n)
    for (int r = 1; r <= n; ++r) {
      const auto t = enumerate_T(n, r);
      const auto u = oracle::brute_U(n, r);
      for (const auto& triple : t) CHECK(u.count(triple));
    }
  const auto t41 = enumerate_T(4, 1);
  CHECK(std::count(t41.begin(), t41.end(), IndexTriple{{1}, {4}, {4}}) == 1);
  CHECK(std::count(t41.begin(), t41.end(), IndexTriple{{2}, {3}, {4}}) == 1);
  CHECK(IndexTriple{{1, 3}, {2, 3}, {3, 4}}.to_string() == "{1,3}|{2,3}|{3,4}");
}

TEST_CASE("enumerate_T matches Littlewood-Richardson positivity") {
  CHECK(oracle::lr_coefficient({2, 1}, {2, 1}, {3, 2, 1}) == 2);
  CHECK(oracle::lr_coefficient({1}, {1}, {2}) == 1);
  CHECK(oracle::lr_coefficient({1}, {1}, {1, 1}) == 1);
  CHECK(oracle::lr_coefficient({2}, {2}, {2, 1, 1}) == 0);
  for (int n = 1; n <= 6; ++n)
    for (int r = 1; r <= n; ++r) {
      CAPTURE(n);
      CAPTURE(r);
      const auto t = enumerate_T(n, r);
      CHECK(std::set<IndexTriple>(t.begin(), t.end()) == oracle::lr_T(n, r));
    }
  MESSAGE("|T_2^4| = " << enumerate_T(4, 2).size());
}

TEST_CASE("horn_check examples") {
  CHECK(horn_check({tuple({0, 0, 0}), tuple({0, 0, 0}), tuple({0, 0, 0})}));
  CHECK(horn_check({tuple({1, 0, 0, -1}), tuple({1, 0, 0, -1}), tuple({0, 0, 0, 0})}));
  CHECK_FALSE(horn_check({tuple({1, 1, 0, -1}), tuple({1, 1, 0, -1}), tuple({0, 0, 0, 0})}));
  const auto v = first_violation({tuple({1, 1, 0, -1}), tuple({1, 1, 0, -1}), tuple({0, 0, 0, 0})});
  REQUIRE(v);
  CHECK(v->trace);
  // alpha = (2, 1, -1, -2) squared to zero is realizable; (2, 1, 0, -3) is not.
  CHECK(horn_check({tuple({2, 1, -1, -2}), tuple({2, 1, -1, -2}), tuple({0, 0, 0, 0})}));
  CHECK_FALSE(horn_check({tuple({2, 1, 0, -3}), tuple({2, 1, 0, -3}), tuple({0, 0, 0, 0})}));
  CHECK_THROWS_AS(horn_check({tuple({1, 0}), tuple({1, 0, 0}), tuple({1, 0})}), DimensionMismatch);
  CHECK_THROWS_AS(horn_check({tuple({0, 1}), tuple({1, 0}), tuple({1, 1})}), std::invalid_argument);
}

TEST_CASE("rep variety") {
  CHECK(rep_variety_membership(RepGroup::SL, 2, tuple({1}), tuple({1}), tuple({1})));
  CHECK_FALSE(rep_variety_membership(RepGroup::SL, 2, tuple({3}), tuple({1}), tuple({1})));
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c)
        CHECK(rep_variety_membership(RepGroup::GL, 1, tuple({a}), tuple({b}), tuple({c})) == (a + b == -c));
  CHECK_THROWS_AS(rep_variety_membership(RepGroup::SL, 3, tuple({1}), tuple({1, 0}), tuple({1, 0})),
                  DimensionMismatch);
}

TEST_CASE("realizability oracle examples") {
  CHECK(realizability_oracle({tuple({1, 0}), tuple({0, -1}), tuple({0, 0})}));
  CHECK_FALSE(realizability_oracle({tuple({1, 0}), tuple({0, 0}), tuple({0, 0})}));
}

TEST_CASE("property: symmetry and homogeneity") {
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<int> num(1, 5), den(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto query = random_query(rng, 2 + trial % 3);
    const bool h = horn_check(query);
    CHECK(horn_check({query.beta, query.alpha, query.gamma_prime}) == h);
    const Rational c = q(num(rng), den(rng));
    HornQuery scaled = query;
    for (auto* v : {&scaled.alpha, &scaled.beta, &scaled.gamma_prime})
      for (auto& x : *v) x *= c;
    CHECK(horn_check(scaled) == h);
  }
}

TEST_CASE("property: agreement with the realizability oracle for n = 3") {
  std::mt19937_64 rng(21);
  OracleOptions options;
  options.draws = 1500;
  int realizable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto query = random_query(rng, 3);
    options.seed = static_cast<std::uint64_t>(trial) + 1;
    const bool h = horn_check(query);
    const bool r = realizability_oracle(query, options);
    CAPTURE(to_string(query.alpha));
    CAPTURE(to_string(query.beta));
    CAPTURE(to_string(query.gamma_prime));
    // The oracle only ever finds realizable triples.
    if (r) CHECK(h);
    if (h) CHECK(r);
    realizable += r;
  }
  MESSAGE(realizable << " of 200 random n = 3 queries realizable");
}
