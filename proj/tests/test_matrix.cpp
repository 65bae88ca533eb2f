#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracles.hpp"
#include "sphtrop/errors.hpp"
#include "sphtrop/horn.hpp"
#include "sphtrop/matrix.hpp"

using namespace sphtrop;
using oracle::mono;
using oracle::q;

namespace {

SeriesMatrix m2(PuiseuxSeries a, PuiseuxSeries b, PuiseuxSeries c, PuiseuxSeries d) {
  return SeriesMatrix::from_rows({{a, b}, {c, d}});
}

std::vector<Rational> alphas(const SeriesMatrix& m) { return invariant_factors_minors(m).alphas; }

}  // namespace

TEST_CASE("determinantal valuations") {
  CHECK(determinantal_valuations(SeriesMatrix::diagonal({mono(1, q(3)), mono(1, q(1))})) ==
        std::vector<Rational>{q(1), q(4)});
  const auto m = m2(oracle::cst(1), mono(1, q(5)), mono(1, q(-2)), PuiseuxSeries());
  CHECK(determinantal_valuations(m) == oracle::minors_2x2(m));
  CHECK(determinantal_valuations(m) == std::vector<Rational>{q(-2), q(3)});
  CHECK(determinantal_valuations(SeriesMatrix::identity(4)) == std::vector<Rational>(4, q(0)));
}

TEST_CASE("invariant factors by minors") {
  CHECK(alphas(SeriesMatrix::diagonal({mono(1, q(3)), mono(1, q(1))})) == std::vector<Rational>{q(3), q(1)});
  CHECK(alphas(m2(oracle::cst(1), mono(1, q(5)), mono(1, q(-2)), PuiseuxSeries())) ==
        std::vector<Rational>{q(5), q(-2)});
  CHECK_THROWS_AS(invariant_factors_minors(SeriesMatrix(2)), IndeterminateValuation);
  const auto singular = m2(oracle::cst(1), oracle::cst(1), oracle::cst(1), oracle::cst(1));
  CHECK_THROWS_AS(invariant_factors_minors(singular), IndeterminateValuation);
}

TEST_CASE("determinant, transpose, multiply") {
  CHECK(determinant(SeriesMatrix::diagonal({mono(1, q(1)), mono(1, q(1))})) == mono(1, q(2)));
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = oracle::random_matrix(rng, 2 + trial % 3, -3, 3);
    CHECK(transpose(transpose(a)) == a);
    CHECK(determinant(a) == oracle::leibniz_det(a));
  }
  CHECK_THROWS_AS(SeriesMatrix::from_rows({{oracle::cst(1), oracle::cst(2)}, {oracle::cst(3)}}), DimensionMismatch);
}

TEST_CASE("smith normal form examples") {
  const auto id = smith_normal_form(SeriesMatrix::identity(3));
  CHECK(id.d == SeriesMatrix::identity(3));
  const auto f = smith_normal_form(SeriesMatrix::diagonal({mono(1, q(1)), mono(1, q(3))}));
  CHECK(f.d == SeriesMatrix::diagonal({mono(1, q(3)), mono(1, q(1))}));
  CHECK(equal_to_precision(multiply(f.g, multiply(SeriesMatrix::diagonal({mono(1, q(1)), mono(1, q(3))}), f.h)), f.d));
}

TEST_CASE("smith normal form vs minors on random 3x3") {
  std::mt19937_64 rng(11);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = oracle::random_matrix(rng, 3, -5, 5);
    try {
      const auto f = smith_normal_form(m);
      CHECK(diagonal_valuations(f.d) == invariant_factors_minors(m));
      CHECK(equal_to_precision(multiply(f.g, multiply(m, f.h)), f.d));
      CHECK(determinant(f.g).valuation() == 0);
      CHECK(determinant(f.h).valuation() == 0);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          if (auto v = f.g(i, j).try_valuation()) CHECK(*v >= 0);
          if (auto v = f.h(i, j).try_valuation()) CHECK(*v >= 0);
          if (i != j) CHECK(f.d(i, j).is_zero_to_precision());
        }
      ++compared;
    } catch (const IndeterminateValuation&) {
    }
  }
  CHECK(compared >= 190);
}

TEST_CASE("property: transpose and scalar shifts") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> shift(-4, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const auto m = oracle::random_matrix(rng, 2 + trial % 3, -5, 5, q(32));
    std::vector<Rational> base;
    try {
      base = alphas(m);
    } catch (const IndeterminateValuation&) {
      continue;
    }
    CHECK(oracle::decreasing(base));
    CHECK(alphas(transpose(m)) == base);
    const int e = shift(rng);
    auto shifted = base;
    for (auto& a : shifted) a += e;
    CHECK(alphas(scale(m, mono(3, q(e)))) == shifted);
  }
}

TEST_CASE("property: 2x2 minors match the hand expansion") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = oracle::random_matrix(rng, 2, -5, 5);
    if (determinant(m).is_zero_to_precision()) continue;
    CHECK(determinantal_valuations(m) == oracle::minors_2x2(m));
  }
}

TEST_CASE("property: products satisfy Horn's inequalities") {
  std::mt19937_64 rng(14);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const auto a = oracle::random_matrix(rng, n, -4, 4);
    const auto b = oracle::random_matrix(rng, n, -4, 4);
    try {
      CHECK(horn::horn_check({alphas(a), alphas(b), alphas(multiply(a, b))}));
      ++checked;
    } catch (const IndeterminateValuation&) {
    }
  }
  CHECK(checked >= 90);
}

TEST_CASE("serial and parallel minor kernels agree") {
  std::mt19937_64 rng(15);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto m = oracle::random_matrix(rng, n, -5, 5, q(32));
    const auto serial = compute_minors_serial(m, n);
    const auto parallel = compute_minors_parallel(m, n, 4);
    for (std::size_t k = 1; k <= n; ++k) CHECK(serial.level(k) == parallel.level(k));
    CHECK(invariant_factors_minors(m, 1) == invariant_factors_minors(m, 4));
  }
}
