#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphtrop/rational.hpp"

namespace sphtrop::horn {

/// (I, J, K): three strictly increasing index sets of equal size r in 1..n.
struct IndexTriple {
  std::vector<int> i;
  std::vector<int> j;
  std::vector<int> k;

  std::size_t rank() const { return i.size(); }
  /// "{1,3}|{2,3}|{3,4}"
  std::string to_string() const;

  auto operator<=>(const IndexTriple&) const = default;
};

/// Invariant factors of x, y and z' = x y, each weakly decreasing.
struct HornQuery {
  std::vector<Rational> alpha;
  std::vector<Rational> beta;
  std::vector<Rational> gamma_prime;
};

/// All (I, J, K) of size r with sum(I) + sum(J) = sum(K) + r(r+1)/2, in
/// lexicographic order.
std::vector<IndexTriple> enumerate_U(int n, int r);

/// The subset of U_r^n passing, for every p < r and (F, G, H) in T_p^r,
///   sum_{f in F} i_f + sum_{g in G} j_g <= sum_{h in H} k_h + p(p+1)/2
/// where i_f is the f-th smallest element of I. Memoized and thread-safe.
std::vector<IndexTriple> enumerate_T(int n, int r);

/// Trace equality sum(alpha) + sum(beta) = sum(gamma') together with
///   sum_{k in K} gamma'_k <= sum_{i in I} alpha_i + sum_{j in J} beta_j
/// for every (I, J, K) in T_r^n, r = 1..n-1. Indices refer to the decreasing
/// tuples as given. Throws DimensionMismatch on unequal lengths and
/// std::invalid_argument on tuples that are not weakly decreasing.
bool horn_check(const HornQuery& q);

/// The first violated inequality, if any; nullopt for the trace equality.
struct HornViolation {
  bool trace = false;
  IndexTriple triple;
};
std::optional<HornViolation> first_violation(const HornQuery& q);

struct OracleOptions {
  int degree_bound = 3;   ///< highest power of t in a random unimodular entry
  int draws = 1000;
  std::uint64_t seed = 1;
};

/// Brute-force ground truth for integer queries with n <= 3: draws random
/// u in GL_n(Q[t]) with unit determinant and reports whether
/// diag(t^alpha) u diag(t^beta) ever has invariant factors gamma'.
bool realizability_oracle(const HornQuery& q, const OracleOptions& options = {});

enum class RepGroup { GL, SL };

/// Membership of (alpha, beta, gamma) in the tropicalized representation
/// variety {x y z = 1}. gamma is converted to the factors of z^{-1} by
/// reversal and negation. For SL the tuples have n-1 entries and the n-th is
/// fixed by the zero-sum (determinant one) condition.
bool rep_variety_membership(RepGroup group, int n, const std::vector<Rational>& alpha,
                            const std::vector<Rational>& beta, const std::vector<Rational>& gamma);

}  // namespace sphtrop::horn
