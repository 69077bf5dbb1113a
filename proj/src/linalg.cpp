#include "kr/linalg.hpp"

#include <algorithm>

namespace kr {

namespace {

// a - f*b for sorted sparse rows
SparseRow axpy(const SparseRow& a, const mpq_class& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -f * b[j].second);
      ++j;
    } else {
      mpq_class v = a[i].second - f * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

void normalize(SparseRow& r) {
  std::sort(r.begin(), r.end(), [](auto& x, auto& y) { return x.first < y.first; });
  SparseRow out;
  for (auto& [c, v] : r) {
    if (!out.empty() && out.back().first == c)
      out.back().second += v;
    else
      out.emplace_back(c, v);
  }
  r.clear();
  for (auto& e : out)
    if (e.second != 0) r.push_back(e);
}

}  // namespace

void SparseSystem::reduce_eq(Eq& e) const {
  std::size_t pos = 0;
  while (pos < e.row.size()) {
    int col = e.row[pos].first;
    int pr = pivot_of_[col];
    if (pr < 0) {
      ++pos;
      continue;
    }
    const Eq& p = rows_[pr];
    mpq_class f = e.row[pos].second / p.row[0].second;
    e.row = axpy(e.row, f, p.row);
    e.rhs -= f * p.rhs;
    // entries before pos are untouched (pivot rows start at their pivot)
  }
}

SparseRow SparseSystem::reduce(SparseRow row) const {
  normalize(row);
  Eq e{std::move(row), 0};
  reduce_eq(e);
  return e.row;
}

bool SparseSystem::add(SparseRow row, const mpq_class& rhs) {
  normalize(row);
  Eq e{std::move(row), rhs};
  reduce_eq(e);
  if (e.row.empty()) {
    if (e.rhs != 0) consistent_ = false;
    return consistent_;
  }
  pivot_of_[e.row[0].first] = int(rows_.size());
  rows_.push_back(std::move(e));
  return consistent_;
}

std::optional<std::vector<mpq_class>> SparseSystem::solve() const {
  if (!consistent_) return std::nullopt;
  std::vector<mpq_class> x(n_, 0);
  // rows in decreasing pivot order
  std::vector<int> order(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return rows_[a].row[0].first > rows_[b].row[0].first; });
  for (int ri : order) {
    const Eq& e = rows_[ri];
    mpq_class s = e.rhs;
    for (std::size_t k = 1; k < e.row.size(); ++k) s -= e.row[k].second * x[e.row[k].first];
    x[e.row[0].first] = s / e.row[0].second;
  }
  return x;
}

std::vector<std::vector<mpq_class>> SparseSystem::kernel() const {
  std::vector<int> order(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return rows_[a].row[0].first > rows_[b].row[0].first; });
  std::vector<std::vector<mpq_class>> out;
  for (int f = 0; f < n_; ++f) {
    if (pivot_of_[f] >= 0) continue;
    std::vector<mpq_class> x(n_, 0);
    x[f] = 1;
    for (int ri : order) {
      const Eq& e = rows_[ri];
      mpq_class s = 0;
      for (std::size_t k = 1; k < e.row.size(); ++k) s -= e.row[k].second * x[e.row[k].first];
      x[e.row[0].first] = s / e.row[0].second;
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace kr
