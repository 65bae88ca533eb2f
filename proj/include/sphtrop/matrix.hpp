#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "sphtrop/rational.hpp"
#include "sphtrop/series.hpp"

namespace sphtrop {

/// Square matrix of Puiseux series, row-major.
class SeriesMatrix {
 public:
  SeriesMatrix() = default;
  explicit SeriesMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  static SeriesMatrix identity(std::size_t n);
  static SeriesMatrix diagonal(const std::vector<PuiseuxSeries>& diag);
  /// Throws DimensionMismatch unless the rows form a square array.
  static SeriesMatrix from_rows(const std::vector<std::vector<PuiseuxSeries>>& rows);

  std::size_t size() const noexcept { return n_; }
  PuiseuxSeries& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const PuiseuxSeries& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  std::string to_string() const;

  friend bool operator==(const SeriesMatrix&, const SeriesMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<PuiseuxSeries> entries_;
};

/// Invariant factors alpha_1 >= ... >= alpha_n.
struct InvariantFactors {
  std::vector<Rational> alphas;
  friend bool operator==(const InvariantFactors&, const InvariantFactors&) = default;
};

SeriesMatrix multiply(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix transpose(const SeriesMatrix& a);
SeriesMatrix scale(const SeriesMatrix& a, const PuiseuxSeries& c);
PuiseuxSeries determinant(const SeriesMatrix& a);

/// True when every entry of a - b is zero to precision.
bool equal_to_precision(const SeriesMatrix& a, const SeriesMatrix& b);

/// All minors of a matrix (n <= 16), keyed by (row mask, column mask).
class MinorTable {
 public:
  static std::uint64_t key(std::uint32_t rows, std::uint32_t cols) {
    return (static_cast<std::uint64_t>(rows) << 32) | cols;
  }

  const PuiseuxSeries& at(std::uint32_t rows, std::uint32_t cols) const { return minors_.at(key(rows, cols)); }
  /// Minors of size k, in the order rows-major over ascending masks.
  const std::vector<std::pair<std::uint64_t, PuiseuxSeries>>& level(std::size_t k) const { return levels_.at(k); }
  std::size_t max_size() const { return levels_.empty() ? 0 : levels_.size() - 1; }

 private:
  friend MinorTable compute_minors_serial(const SeriesMatrix&, std::size_t);
  friend MinorTable compute_minors_parallel(const SeriesMatrix&, std::size_t, int);

  std::unordered_map<std::uint64_t, PuiseuxSeries> minors_;
  std::vector<std::vector<std::pair<std::uint64_t, PuiseuxSeries>>> levels_;
};

/// Subset-memoized Laplace expansion: each k x k minor expands along its top
/// row over the (k-1) x (k-1) minors already in the table.
MinorTable compute_minors_serial(const SeriesMatrix& m, std::size_t max_size);
/// Same table, with each level's minors computed by an OpenMP loop.
MinorTable compute_minors_parallel(const SeriesMatrix& m, std::size_t max_size, int threads);
/// Dispatches on `threads` (1 = serial reference kernel).
MinorTable compute_minors(const SeriesMatrix& m, std::size_t max_size, int threads = 1);

/// d_k = least valuation among the k x k minors, k = 1..n.
std::vector<Rational> determinantal_valuations(const SeriesMatrix& m, int threads = 1);

/// alpha_i = d_{n-i+1} - d_{n-i} with d_0 = 0.
InvariantFactors invariant_factors_minors(const SeriesMatrix& m, int threads = 1);

struct SmithForm {
  SeriesMatrix g;
  SeriesMatrix d;
  SeriesMatrix h;
};

/// g * m * h = d up to precision, with g, h invertible over the power series
/// ring and d = diag(t^alpha_1, ..., t^alpha_n), alpha weakly decreasing.
SmithForm smith_normal_form(const SeriesMatrix& m, const Rational& relative_precision = kDefaultPrecision);

/// Valuations along the diagonal of a Smith form.
InvariantFactors diagonal_valuations(const SeriesMatrix& d);

}  // namespace sphtrop
