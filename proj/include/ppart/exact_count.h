// Exact big-integer enumeration: Euler-transform recurrence, truncated
// series products, a brute-force enumerator for the banded family, and the
// pentagonal-number recurrence for ordinary partitions.
#ifndef PPART_EXACT_COUNT_H
#define PPART_EXACT_COUNT_H

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "ppart/family.h"

namespace ppart {

struct CountTable {
  FamilySpec family;
  std::vector<mpz_class> counts;  // counts[n] = number of objects of size n
};

class InternalInconsistency : public std::logic_error {
 public:
  explicit InternalInconsistency(const std::string& w) : std::logic_error(w) {}
};
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& w) : std::runtime_error(w) {}
};

// Divisor-weight table c_k = sum_{d | k} d * e_d for k = 1..n_max.
inline std::vector<unsigned long> divisor_weights(const FamilySpec& f, long n_max) {
  std::vector<unsigned long> c(static_cast<size_t>(n_max) + 1, 0);
  for (long d = 1; d <= n_max; ++d) {
    long ed = exponent(f, d);
    if (ed == 0) continue;
    unsigned long w = static_cast<unsigned long>(d) * static_cast<unsigned long>(ed);
    for (long k = d; k <= n_max; k += d) {
      c[static_cast<size_t>(k)] += w;
      if (c[static_cast<size_t>(k)] > (1UL << 62))
        throw InternalInconsistency("divisor_weights: weight overflow");
    }
  }
  return c;
}

// a_n = (1/n) sum_{k=1..n} c_k a_{n-k}; the division must be exact.
inline CountTable euler_transform_counts(const FamilySpec& f, long n_max) {
  if (n_max < 0) throw std::invalid_argument("euler_transform_counts: n_max < 0");
  auto c = divisor_weights(f, n_max);
  std::vector<mpz_class> a(static_cast<size_t>(n_max) + 1);
  a[0] = 1;
  mpz_class acc;
  for (long n = 1; n <= n_max; ++n) {
    acc = 0;
    for (long k = 1; k <= n; ++k) {
      if (c[static_cast<size_t>(k)] == 0) continue;
      mpz_addmul_ui(acc.get_mpz_t(), a[static_cast<size_t>(n - k)].get_mpz_t(),
                    c[static_cast<size_t>(k)]);
    }
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(n)))
      throw InternalInconsistency("euler_transform_counts: inexact division at n=" +
                                  std::to_string(n));
    mpz_divexact_ui(a[static_cast<size_t>(n)].get_mpz_t(), acc.get_mpz_t(),
                    static_cast<unsigned long>(n));
  }
  return {f, std::move(a)};
}

// Direct truncated product prod_{k<=n_max} (1 - z^k)^{-e_k}.
inline CountTable series_product_counts(const FamilySpec& f, long n_max) {
  if (n_max < 0) throw std::invalid_argument("series_product_counts: n_max < 0");
  std::vector<mpz_class> a(static_cast<size_t>(n_max) + 1);
  a[0] = 1;
  for (long k = 1; k <= n_max; ++k) {
    long e = exponent(f, k);
    for (long rep = 0; rep < e; ++rep) {
      for (long i = k; i <= n_max; ++i) {
        a[static_cast<size_t>(i)] += a[static_cast<size_t>(i - k)];
      }
    }
  }
  return {f, std::move(a)};
}

// Ordinary partitions via the pentagonal-number recurrence (independent route).
inline std::vector<mpz_class> pentagonal_partition_counts(long n_max) {
  std::vector<mpz_class> p(static_cast<size_t>(n_max) + 1);
  p[0] = 1;
  for (long n = 1; n <= n_max; ++n) {
    mpz_class s = 0;
    for (long k = 1;; ++k) {
      long g1 = k * (3 * k - 1) / 2;
      long g2 = k * (3 * k + 1) / 2;
      if (g1 > n && g2 > n) break;
      bool plus = k % 2 == 1;
      if (g1 <= n) {
        if (plus) s += p[static_cast<size_t>(n - g1)];
        else s -= p[static_cast<size_t>(n - g1)];
      }
      if (g2 <= n) {
        if (plus) s += p[static_cast<size_t>(n - g2)];
        else s -= p[static_cast<size_t>(n - g2)];
      }
    }
    p[static_cast<size_t>(n)] = s;
  }
  return p;
}

namespace detail {

// Recursive row filler for the stair-region enumerator.  Rows are indexed
// j = 0,1,...; row j holds cells i = j..j+m-1.  Cell idx in 0..m-1 is capped
// by its left neighbor and, for idx <= m-2, by prev_row[idx+1] (the cell
// directly above).  An all-zero row with budget left is a dead end because
// later rows are forced to zero.
class BppEnumerator {
 public:
  explicit BppEnumerator(long m) : m_(m) {}

  unsigned long long count(long n) {
    if (n == 0) return 1;
    total_ = 0;
    std::vector<long> row(static_cast<size_t>(m_), 0);
    first_row(row, 0, 0, 0, n);
    return total_;
  }

 private:
  void first_row(std::vector<long>& row, long idx, long left, long acc, long rem) {
    if (idx == m_) {
      if (acc > 0) later_rows(row, rem);
      return;
    }
    long cap = idx == 0 ? rem : std::min(left, rem);
    for (long v = 0; v <= cap; ++v) {
      row[static_cast<size_t>(idx)] = v;
      first_row(row, idx + 1, v, acc + v, rem - v);
    }
  }

  void later_rows(const std::vector<long>& prev, long budget) {
    if (budget == 0) {
      ++total_;
      return;
    }
    std::vector<long> row(static_cast<size_t>(m_), 0);
    next_cell(row, prev, 0, 0, 0, budget);
  }

  void next_cell(std::vector<long>& row, const std::vector<long>& prev, long idx, long left,
                 long acc, long rem) {
    if (idx == m_) {
      if (acc > 0) later_rows(row, rem);
      return;
    }
    long cap = rem;
    if (idx > 0) cap = std::min(cap, left);
    if (idx < m_ - 1) cap = std::min(cap, prev[static_cast<size_t>(idx + 1)]);
    for (long v = 0; v <= cap; ++v) {
      row[static_cast<size_t>(idx)] = v;
      next_cell(row, prev, idx + 1, v, acc + v, rem - v);
    }
  }

  long m_;
  unsigned long long total_ = 0;
};

}  // namespace detail

// Exhaustive count of width-m stair-region fillings with entry-sum n.
// m = 1 degenerates to a weakly decreasing chain (ordinary partitions).
inline unsigned long long brute_force_bpp(long n, long m, long ceiling = 16) {
  if (n < 0 || m < 1) throw std::invalid_argument("brute_force_bpp: need n >= 0, m >= 1");
  if (n > ceiling)
    throw BudgetExceeded("brute_force_bpp: n=" + std::to_string(n) + " above ceiling " +
                         std::to_string(ceiling));
  if (n == 0) return 1;
  if (m == 1) {
    // chain f_0 >= f_1 >= ... with sum n
    struct Chain {
      static unsigned long long rec(long budget, long cap) {
        if (budget == 0) return 1;
        unsigned long long tot = 0;
        for (long v = 1; v <= std::min(cap, budget); ++v) tot += rec(budget - v, v);
        return tot;
      }
    };
    return Chain::rec(n, n);
  }
  detail::BppEnumerator e(m);
  return e.count(n);
}

}  // namespace ppart

#endif  // PPART_EXACT_COUNT_H
