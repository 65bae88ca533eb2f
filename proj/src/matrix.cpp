#include "sphtrop/matrix.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sphtrop/errors.hpp"

namespace sphtrop {

SeriesMatrix SeriesMatrix::identity(std::size_t n) {
  SeriesMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = PuiseuxSeries::constant(1);
  return m;
}

SeriesMatrix SeriesMatrix::diagonal(const std::vector<PuiseuxSeries>& diag) {
  SeriesMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

SeriesMatrix SeriesMatrix::from_rows(const std::vector<std::vector<PuiseuxSeries>>& rows) {
  SeriesMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw DimensionMismatch("matrix is not square: row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " + std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string SeriesMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) out << "; ";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) out << ", ";
      out << (*this)(i, j).to_string();
    }
  }
  return out.str();
}

SeriesMatrix multiply(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.size() != b.size()) throw DimensionMismatch("multiply: sizes differ");
  const std::size_t n = a.size();
  SeriesMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      PuiseuxSeries acc;
      for (std::size_t k = 0; k < n; ++k) acc = add(acc, mul(a(i, k), b(k, j)));
      c(i, j) = std::move(acc);
    }
  }
  return c;
}

SeriesMatrix transpose(const SeriesMatrix& a) {
  SeriesMatrix t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t(j, i) = a(i, j);
  return t;
}

SeriesMatrix scale(const SeriesMatrix& a, const PuiseuxSeries& c) {
  SeriesMatrix s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) s(i, j) = mul(c, a(i, j));
  return s;
}

bool equal_to_precision(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!sub(a(i, j), b(i, j)).is_zero_to_precision()) return false;
  return true;
}

namespace {

std::vector<std::uint32_t> masks_of_size(std::size_t n, std::size_t k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1U << n); ++m)
    if (static_cast<std::size_t>(std::popcount(m)) == k) out.push_back(m);
  return out;
}

// Expansion of the minor on (rows, cols) along its top row.
template <typename Lookup>
PuiseuxSeries expand_minor(const SeriesMatrix& m, std::uint32_t rows, std::uint32_t cols, const Lookup& smaller) {
  const auto top = static_cast<std::size_t>(std::countr_zero(rows));
  const std::uint32_t rest_rows = rows & (rows - 1);
  PuiseuxSeries acc;
  int sign = 1;
  for (std::uint32_t c = cols; c; c &= c - 1) {
    const auto col = static_cast<std::size_t>(std::countr_zero(c));
    const PuiseuxSeries& entry = m(top, col);
    if (!(entry.is_exact() && entry.is_zero_to_precision())) {
      PuiseuxSeries term = rest_rows ? mul(entry, smaller(rest_rows, cols & ~(1U << col))) : entry;
      acc = sign > 0 ? add(acc, term) : sub(acc, term);
    }
    sign = -sign;
  }
  return acc;
}

void check_size(const SeriesMatrix& m, std::size_t max_size) {
  if (m.size() > 16) throw std::invalid_argument("minor tables are limited to n <= 16");
  if (max_size > m.size()) throw std::invalid_argument("minor size exceeds matrix size");
}

}  // namespace

MinorTable compute_minors_serial(const SeriesMatrix& m, std::size_t max_size) {
  check_size(m, max_size);
  MinorTable table;
  table.levels_.resize(max_size + 1);
  auto lookup = [&](std::uint32_t r, std::uint32_t c) -> const PuiseuxSeries& { return table.at(r, c); };
  for (std::size_t k = 1; k <= max_size; ++k) {
    const auto masks = masks_of_size(m.size(), k);
    for (std::uint32_t rows : masks) {
      for (std::uint32_t cols : masks) {
        PuiseuxSeries v = expand_minor(m, rows, cols, lookup);
        table.levels_[k].emplace_back(MinorTable::key(rows, cols), v);
        table.minors_.emplace(MinorTable::key(rows, cols), std::move(v));
      }
    }
  }
  return table;
}

MinorTable compute_minors_parallel(const SeriesMatrix& m, std::size_t max_size, int threads) {
  check_size(m, max_size);
  MinorTable table;
  table.levels_.resize(max_size + 1);
  auto lookup = [&](std::uint32_t r, std::uint32_t c) -> const PuiseuxSeries& { return table.at(r, c); };
  for (std::size_t k = 1; k <= max_size; ++k) {
    const auto masks = masks_of_size(m.size(), k);
    const auto count = static_cast<std::int64_t>(masks.size() * masks.size());
    std::vector<PuiseuxSeries> values(static_cast<std::size_t>(count));
    // Level k reads only level k-1, which is complete and no longer mutated.
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (std::int64_t idx = 0; idx < count; ++idx) {
      const auto u = static_cast<std::size_t>(idx);
      values[u] = expand_minor(m, masks[u / masks.size()], masks[u % masks.size()], lookup);
    }
    for (std::size_t u = 0; u < values.size(); ++u) {
      const auto key = MinorTable::key(masks[u / masks.size()], masks[u % masks.size()]);
      table.levels_[k].emplace_back(key, values[u]);
      table.minors_.emplace(key, std::move(values[u]));
    }
  }
  return table;
}

MinorTable compute_minors(const SeriesMatrix& m, std::size_t max_size, int threads) {
  if (threads <= 1) return compute_minors_serial(m, max_size);
  return compute_minors_parallel(m, max_size, threads);
}

PuiseuxSeries determinant(const SeriesMatrix& a) {
  if (a.size() == 0) return PuiseuxSeries::constant(1);
  const std::uint32_t all = (1U << a.size()) - 1;
  return compute_minors_serial(a, a.size()).at(all, all);
}

std::vector<Rational> determinantal_valuations(const SeriesMatrix& m, int threads) {
  const std::size_t n = m.size();
  const MinorTable table = compute_minors(m, n, threads);
  std::vector<Rational> d;
  d.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    std::optional<Rational> best;
    std::optional<Rational> unresolved;  // lowest precision among zero-to-precision minors
    for (const auto& [key, minor] : table.level(k)) {
      if (auto v = minor.try_valuation()) {
        if (!best || *v < *best) best = v;
      } else if (minor.precision() && (!unresolved || *minor.precision() < *unresolved)) {
        unresolved = minor.precision();
      }
    }
    if (!best) {
      throw IndeterminateValuation("every " + std::to_string(k) + "x" + std::to_string(k) +
                                   " minor is zero to precision");
    }
    if (unresolved && *unresolved <= *best) {
      throw IndeterminateValuation("a " + std::to_string(k) + "x" + std::to_string(k) +
                                   " minor is zero only to precision " + unresolved->get_str() +
                                   ", below the least determinate valuation " + best->get_str());
    }
    d.push_back(*best);
  }
  return d;
}

InvariantFactors invariant_factors_minors(const SeriesMatrix& m, int threads) {
  const auto d = determinantal_valuations(m, threads);
  const std::size_t n = d.size();
  InvariantFactors f;
  f.alphas.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // alpha_{i+1} = d_{n-i} - d_{n-i-1}
    const std::size_t k = n - i;
    f.alphas[i] = d[k - 1] - (k >= 2 ? d[k - 2] : Rational(0));
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (f.alphas[i - 1] < f.alphas[i]) throw std::logic_error("determinantal divisors gave non-decreasing factors");
  }
  return f;
}

namespace {

void swap_rows(SeriesMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.size(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(SeriesMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.size(); ++i) std::swap(m(i, a), m(i, b));
}

// row_target -= q * row_source
void row_axpy(SeriesMatrix& m, std::size_t target, std::size_t source, const PuiseuxSeries& q) {
  for (std::size_t j = 0; j < m.size(); ++j) m(target, j) = sub(m(target, j), mul(q, m(source, j)));
}

void col_axpy(SeriesMatrix& m, std::size_t target, std::size_t source, const PuiseuxSeries& q) {
  for (std::size_t i = 0; i < m.size(); ++i) m(i, target) = sub(m(i, target), mul(q, m(i, source)));
}

SeriesMatrix permuted_rows(const SeriesMatrix& m, const std::vector<std::size_t>& order) {
  SeriesMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m(order[i], j);
  return out;
}

SeriesMatrix permuted_cols(const SeriesMatrix& m, const std::vector<std::size_t>& order) {
  SeriesMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m(i, order[j]);
  return out;
}

}  // namespace

SmithForm smith_normal_form(const SeriesMatrix& m, const Rational& relative_precision) {
  const std::size_t n = m.size();
  SeriesMatrix a = m;
  SeriesMatrix g = SeriesMatrix::identity(n);
  SeriesMatrix h = SeriesMatrix::identity(n);

  for (std::size_t k = 0; k < n; ++k) {
    // Least valuation in the trailing block; ties go to the smallest (row, col).
    std::optional<Rational> best;
    std::optional<Rational> unresolved;
    std::size_t pr = k, pc = k;
    for (std::size_t i = k; i < n; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        if (auto v = a(i, j).try_valuation()) {
          if (!best || *v < *best) {
            best = v;
            pr = i;
            pc = j;
          }
        } else if (a(i, j).precision() && (!unresolved || *a(i, j).precision() < *unresolved)) {
          unresolved = a(i, j).precision();
        }
      }
    }
    if (!best) throw IndeterminateValuation("no pivot left at step " + std::to_string(k + 1) + " of Smith reduction");
    if (unresolved && *unresolved <= *best) {
      throw IndeterminateValuation("precision exhausted during Smith reduction (entry known only to t^" +
                                   unresolved->get_str() + ")");
    }
    swap_rows(a, k, pr);
    swap_rows(g, k, pr);
    swap_cols(a, k, pc);
    swap_cols(h, k, pc);

    const PuiseuxSeries pivot_inverse = invert(a(k, k), relative_precision);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero_to_precision()) {
        a(i, k) = PuiseuxSeries();
        continue;
      }
      const PuiseuxSeries q = mul(a(i, k), pivot_inverse);
      row_axpy(a, i, k, q);
      row_axpy(g, i, k, q);
      if (!a(i, k).is_zero_to_precision()) throw std::logic_error("row elimination left a residue");
      a(i, k) = PuiseuxSeries();
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j).is_zero_to_precision()) {
        a(k, j) = PuiseuxSeries();
        continue;
      }
      const PuiseuxSeries q = mul(a(k, j), pivot_inverse);
      col_axpy(a, j, k, q);
      col_axpy(h, j, k, q);
      if (!a(k, j).is_zero_to_precision()) throw std::logic_error("column elimination left a residue");
      a(k, j) = PuiseuxSeries();
    }
  }

  // Unit column scaling turns each diagonal entry into t^alpha.
  std::vector<Rational> vals(n);
  for (std::size_t k = 0; k < n; ++k) {
    vals[k] = a(k, k).valuation();
    const PuiseuxSeries unit = mul(PuiseuxSeries::monomial(1, vals[k]), invert(a(k, k), relative_precision));
    for (std::size_t i = 0; i < n; ++i) h(i, k) = mul(h(i, k), unit);
    a(k, k) = PuiseuxSeries::monomial(1, vals[k]);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return vals[x] > vals[y]; });
  SmithForm out;
  out.g = permuted_rows(g, order);
  out.h = permuted_cols(h, order);
  std::vector<PuiseuxSeries> diag;
  for (std::size_t k : order) diag.push_back(PuiseuxSeries::monomial(1, vals[k]));
  out.d = SeriesMatrix::diagonal(diag);
  return out;
}

InvariantFactors diagonal_valuations(const SeriesMatrix& d) {
  InvariantFactors f;
  for (std::size_t k = 0; k < d.size(); ++k) f.alphas.push_back(d(k, k).valuation());
  std::sort(f.alphas.begin(), f.alphas.end(), std::greater<>());
  return f;
}

}  // namespace sphtrop
