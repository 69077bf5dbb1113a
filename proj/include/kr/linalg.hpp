#pragma once
// Exact linear algebra: an incremental sparse solver over Q and dense rank
// over any exact field (Q or Q(zeta_n)).

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "kr/cyclotomic.hpp"

namespace kr {

using SparseRow = std::vector<std::pair<int, mpq_class>>;  // sorted by column

// Rows are kept in echelon form keyed by their smallest column.
class SparseSystem {
 public:
  explicit SparseSystem(int unknowns) : n_(unknowns), pivot_of_(unknowns, -1) {}

  int unknowns() const { return n_; }
  // Adds sum coef*x_col = rhs. Returns false if the system became inconsistent.
  bool add(SparseRow row, const mpq_class& rhs = 0);
  bool consistent() const { return consistent_; }
  int rank() const { return int(rows_.size()); }
  // A particular solution with free unknowns set to zero.
  std::optional<std::vector<mpq_class>> solve() const;
  // Basis of the solution space of the homogeneous system.
  std::vector<std::vector<mpq_class>> kernel() const;
  // Reduces a row modulo the span of the stored rows (rhs ignored).
  SparseRow reduce(SparseRow row) const;

 private:
  struct Eq {
    SparseRow row;
    mpq_class rhs;
  };
  int n_;
  std::vector<Eq> rows_;
  std::vector<int> pivot_of_;  // column -> row index or -1
  bool consistent_ = true;
  void reduce_eq(Eq& e) const;
};

// field helpers
inline bool field_is_zero(const mpq_class& x) { return x == 0; }
inline bool field_is_zero(const Cyc& x) { return x.is_zero(); }
inline mpq_class field_inverse(const mpq_class& x) { return 1 / x; }
inline Cyc field_inverse(const Cyc& x) { return x.inverse(); }

template <class F>
int dense_rank(std::vector<std::vector<F>> m) {
  int rows = int(m.size());
  if (!rows) return 0;
  int cols = int(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!field_is_zero(m[i][c])) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    F inv = field_inverse(m[r][c]);
    for (int i = r + 1; i < rows; ++i) {
      if (field_is_zero(m[i][c])) continue;
      F f = m[i][c] * inv;
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace kr
