#include "kr/graded_complex.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace kr {

const mpq_class* SparseMat::get(int r, int c) const {
  auto it = col_[c].find(r);
  return it == col_[c].end() ? nullptr : &it->second;
}

void SparseMat::set(int r, int c, const mpq_class& v) {
  if (v == 0) {
    col_[c].erase(r);
    row_index_[r].erase(c);
  } else {
    col_[c][r] = v;
    row_index_[r].insert(c);
  }
}

void SparseMat::add(int r, int c, const mpq_class& v) {
  if (v == 0) return;
  auto it = col_[c].find(r);
  if (it == col_[c].end()) {
    set(r, c, v);
    return;
  }
  it->second += v;
  if (it->second == 0) {
    col_[c].erase(it);
    row_index_[r].erase(c);
  }
}

std::size_t SparseMat::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : col_) n += c.size();
  return n;
}

SparseMat SparseMat::restricted(const std::vector<int>& rows, const std::vector<int>& cols) const {
  std::vector<int> rmap(rows_, -1);
  for (int i = 0; i < int(rows.size()); ++i) rmap[rows[i]] = i;
  SparseMat out(int(rows.size()), int(cols.size()));
  for (int j = 0; j < int(cols.size()); ++j)
    for (const auto& [r, v] : col_[cols[j]])
      if (rmap[r] >= 0) out.set(rmap[r], j, v);
  return out;
}

int GradedFreeComplex::total_rank() const {
  int n = 0;
  for (const auto& g : gens) n += int(g.size());
  return n;
}

std::optional<int> GradedFreeComplex::exponent(int h, int src, int tgt) const {
  const int diff = gens[h - lo][src] - gens[h + 1 - lo][tgt];
  if (diff < 0 || diff % (2 * N) != 0) return std::nullopt;
  return diff / (2 * N);
}

bool grading_consistent(const GradedFreeComplex& c, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (c.d.size() != c.gens.size()) return fail("differential count");
  for (int i = 0; i < int(c.gens.size()); ++i) {
    const int src = int(c.gens[i].size());
    const int tgt = i + 1 < int(c.gens.size()) ? int(c.gens[i + 1].size()) : 0;
    if (c.d[i].cols() != src || c.d[i].rows() != tgt) return fail("differential shape");
    for (int j = 0; j < src; ++j)
      for (const auto& [r, v] : c.d[i].column(j)) {
        (void)v;
        if (!c.exponent(c.lo + i, j, r)) return fail("entry of impossible degree");
      }
  }
  return true;
}

bool d_squared_zero(const GradedFreeComplex& c) {
  // every term of an entry of d^2 carries the same power of a, so the scalar
  // product decides
  for (int i = 0; i + 1 < int(c.gens.size()); ++i) {
    const SparseMat& d0 = c.d[i];
    const SparseMat& d1 = c.d[i + 1];
    for (int j = 0; j < d0.cols(); ++j) {
      std::map<int, mpq_class> acc;
      for (const auto& [mid, v] : d0.column(j))
        for (const auto& [r, w] : d1.column(mid)) acc[r] += v * w;
      for (const auto& [r, v] : acc)
        if (v != 0) return false;
    }
  }
  return true;
}

LaurentQ euler_characteristic(const GradedFreeComplex& c) {
  LaurentQ e;
  for (int i = 0; i < int(c.gens.size()); ++i)
    for (int q : c.gens[i]) e[q] += ((c.lo + i) % 2 == 0) ? 1 : -1;
  for (auto it = e.begin(); it != e.end();)
    it = it->second == 0 ? e.erase(it) : std::next(it);
  return e;
}

namespace {

// Working copy for elimination: generators can die, matrices shrink in place.
struct Eliminator {
  const GradedFreeComplex& c;
  std::vector<SparseMat> d;
  std::vector<std::vector<char>> alive;
  bool ungraded = false;  // every nonzero entry counts as a unit

  explicit Eliminator(const GradedFreeComplex& cc) : c(cc), d(cc.d) {
    for (const auto& g : cc.gens) alive.emplace_back(g.size(), 1);
  }

  int expo(int i, int src, int tgt) const {
    if (ungraded) return 0;
    return *c.exponent(c.lo + i, src, tgt);
  }

  struct Choice {
    int i = -1, r = -1, col = -1, m = 0;
  };

  // A pivot must be minimal in its row and column; the global minimum is.
  // Among candidates with the minimal exponent prefer small fill-in.
  Choice choose(bool units_only) const {
    Choice best;
    long best_cost = std::numeric_limits<long>::max();
    int best_m = std::numeric_limits<int>::max();
    for (int i = 0; i < int(d.size()); ++i)
      for (int j = 0; j < d[i].cols(); ++j)
        for (const auto& [r, v] : d[i].column(j)) {
          (void)v;
          const int m = expo(i, j, r);
          if (units_only && m > 0) continue;
          if (m > best_m) continue;
          const long cost = long(d[i].column(j).size() - 1) * long(d[i].row(r).size() - 1);
          if (m < best_m || cost < best_cost) {
            best_m = m;
            best_cost = cost;
            best = Choice{i, r, j, m};
          }
        }
    return best;
  }

  void eliminate(const Choice& p) {
    SparseMat& m = d[p.i];
    const mpq_class v = *m.get(p.r, p.col);
    std::vector<std::pair<int, mpq_class>> colc(m.column(p.col).begin(), m.column(p.col).end());
    std::vector<std::pair<int, mpq_class>> rowr;
    for (int j : m.row(p.r))
      if (j != p.col) rowr.emplace_back(j, *m.get(p.r, j));
    for (const auto& [i, gi] : colc) {
      if (i == p.r) continue;
      const mpq_class f = gi / v;
      for (const auto& [j, rj] : rowr) m.add(i, j, -f * rj);
    }
    auto clear_col = [](SparseMat& mm, int col) {
      std::vector<int> rs;
      for (const auto& [r, x] : mm.column(col)) rs.push_back(r), (void)x;
      for (int r : rs) mm.set(r, col, 0);
    };
    auto clear_row = [](SparseMat& mm, int row) {
      std::vector<int> cs(mm.row(row).begin(), mm.row(row).end());
      for (int cc : cs) mm.set(row, cc, 0);
    };
    clear_col(m, p.col);
    clear_row(m, p.r);
    if (p.i + 1 < int(d.size())) clear_col(d[p.i + 1], p.r);
    if (p.i > 0) clear_row(d[p.i - 1], p.col);
    alive[p.i][p.col] = 0;
    alive[p.i + 1][p.r] = 0;
  }

  LaurentQ euler() const {
    LaurentQ e;
    for (int i = 0; i < int(alive.size()); ++i)
      for (int j = 0; j < int(alive[i].size()); ++j)
        if (alive[i][j]) e[c.gens[i][j]] += ((c.lo + i) % 2 == 0) ? 1 : -1;
    for (auto it = e.begin(); it != e.end();)
      it = it->second == 0 ? e.erase(it) : std::next(it);
    return e;
  }
};

GradedFreeComplex drop_positive_exponents(const GradedFreeComplex& c) {
  GradedFreeComplex out = c;
  for (int i = 0; i < int(c.d.size()); ++i)
    for (int j = 0; j < c.d[i].cols(); ++j)
      for (const auto& [r, v] : c.d[i].column(j)) {
        (void)v;
        if (*c.exponent(c.lo + i, j, r) > 0) out.d[i].set(r, j, 0);
      }
  return out;
}

}  // namespace

BigradedDims homology_at_a0(const GradedFreeComplex& c, bool* euler_ok, int* steps) {
  const GradedFreeComplex spec = drop_positive_exponents(c);
  Eliminator el(spec);
  const LaurentQ start = el.euler();
  bool ok = true;
  int n = 0;
  for (;;) {
    auto p = el.choose(true);
    if (p.i < 0) break;
    el.eliminate(p);
    ++n;
    if (euler_ok && el.euler() != start) ok = false;
  }
  if (euler_ok) *euler_ok = ok;
  if (steps) *steps = n;
  BigradedDims out;
  for (int i = 0; i < int(el.alive.size()); ++i)
    for (int j = 0; j < int(el.alive[i].size()); ++j)
      if (el.alive[i][j]) ++out[{c.lo + i, c.gens[i][j]}];
  return out;
}

BigradedDims homology_at_a1(const GradedFreeComplex& c) {
  Eliminator el(c);
  el.ungraded = true;
  for (;;) {
    auto p = el.choose(true);
    if (p.i < 0) break;
    el.eliminate(p);
  }
  BigradedDims out;
  for (int i = 0; i < int(el.alive.size()); ++i) {
    int n = 0;
    for (char a : el.alive[i]) n += a;
    if (n) out[{c.lo + i, 0}] = n;
  }
  return out;
}

std::vector<Piece> decompose(const GradedFreeComplex& c) {
  Eliminator el(c);
  std::vector<Piece> pieces;
  for (;;) {
    auto p = el.choose(false);
    if (p.i < 0) break;
    pieces.push_back(Piece{c.lo + p.i, c.gens[p.i][p.col], c.gens[p.i + 1][p.r], p.m});
    el.eliminate(p);
  }
  for (int i = 0; i < int(el.alive.size()); ++i)
    for (int j = 0; j < int(el.alive[i].size()); ++j)
      if (el.alive[i][j]) pieces.push_back(Piece{c.lo + i, c.gens[i][j], 0, -1});
  return pieces;
}

std::map<int, GradedModuleOverA> homology_from_pieces(const std::vector<Piece>& pieces) {
  std::map<int, GradedModuleOverA> out;
  for (const auto& p : pieces) {
    if (p.free()) {
      out[p.h].free.push_back(p.q_src);
    } else if (p.k > 0) {
      out[p.h + 1].torsion.emplace_back(p.q_tgt, p.k);
    }
  }
  for (auto& [h, m] : out) {
    std::sort(m.free.begin(), m.free.end());
    std::sort(m.torsion.begin(), m.torsion.end());
  }
  return out;
}

std::map<int, GradedModuleOverA> homology_over_A(const GradedFreeComplex& c) {
  return homology_from_pieces(decompose(c));
}

namespace {

using Dense = std::vector<std::vector<mpq_class>>;

Dense to_dense(const SparseMat& m) {
  Dense out(m.rows(), std::vector<mpq_class>(m.cols()));
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& [r, v] : m.column(j)) out[r][j] = v;
  return out;
}

Dense identity(int n) {
  Dense out(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

Dense mul(const Dense& x, const Dense& y, int rows, int inner, int cols) {
  Dense out(rows, std::vector<mpq_class>(cols));
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < inner; ++k) {
      if (x[i][k] == 0) continue;
      for (int j = 0; j < cols; ++j)
        if (y[k][j] != 0) out[i][j] += x[i][k] * y[k][j];
    }
  return out;
}

// a change of basis is graded when entry (i, j) can be c a^m with q_j - q_i = 2Nm, m >= 0
bool graded_change(const Dense& b, const std::vector<int>& q, int N) {
  for (int i = 0; i < int(q.size()); ++i)
    for (int j = 0; j < int(q.size()); ++j) {
      if (b[i][j] == 0) continue;
      const int diff = q[j] - q[i];
      if (diff < 0 || diff % (2 * N) != 0) return false;
    }
  return true;
}

}  // namespace

DecompositionWitness decompose_with_witness(const GradedFreeComplex& c) {
  const int H = int(c.gens.size());
  std::vector<int> size(H);
  for (int i = 0; i < H; ++i) size[i] = int(c.gens[i].size());
  auto sz = [&](int i) { return i < H ? size[i] : 0; };

  std::vector<Dense> D(H);
  for (int i = 0; i < H; ++i) D[i] = to_dense(c.d[i]);
  DecompositionWitness w;
  w.basis.resize(H);
  w.inverse.resize(H);
  for (int i = 0; i < H; ++i) w.basis[i] = w.inverse[i] = identity(size[i]);
  std::vector<std::vector<char>> used_src(H), used_tgt(H);
  for (int i = 0; i < H; ++i) used_src[i].assign(size[i], 0), used_tgt[i].assign(size[i], 0);

  for (;;) {
    int bi = -1, br = -1, bc = -1, bm = std::numeric_limits<int>::max();
    for (int i = 0; i < H; ++i)
      for (int r = 0; r < sz(i + 1); ++r)
        for (int j = 0; j < size[i]; ++j) {
          if (D[i][r][j] == 0 || used_src[i][j] || used_tgt[i + 1][r]) continue;
          const int m = *c.exponent(c.lo + i, j, r);
          if (m < bm) bi = i, br = r, bc = j, bm = m;
        }
    if (bi < 0) break;
    Dense& M = D[bi];
    const mpq_class v = M[br][bc];
    // clear column bc: row ops on C^{bi+1}
    for (int r = 0; r < sz(bi + 1); ++r) {
      if (r == br || M[r][bc] == 0) continue;
      const mpq_class f = M[r][bc] / v;
      for (int j = 0; j < size[bi]; ++j)
        if (M[br][j] != 0) M[r][j] -= f * M[br][j];
      Dense& B = w.basis[bi + 1];
      for (int j = 0; j < sz(bi + 1); ++j)
        if (B[br][j] != 0) B[r][j] -= f * B[br][j];
      Dense& Bi = w.inverse[bi + 1];
      for (int k = 0; k < sz(bi + 1); ++k)
        if (Bi[k][r] != 0) Bi[k][br] += f * Bi[k][r];
      if (bi + 1 < H)
        for (int k = 0; k < sz(bi + 2); ++k)
          if (D[bi + 1][k][r] != 0) D[bi + 1][k][br] += f * D[bi + 1][k][r];
    }
    // clear row br: column ops on C^{bi}
    for (int j = 0; j < size[bi]; ++j) {
      if (j == bc || M[br][j] == 0) continue;
      const mpq_class g = M[br][j] / v;
      for (int r = 0; r < sz(bi + 1); ++r)
        if (M[r][bc] != 0) M[r][j] -= g * M[r][bc];
      Dense& B = w.basis[bi];
      for (int k = 0; k < size[bi]; ++k)
        if (B[j][k] != 0) B[bc][k] += g * B[j][k];
      Dense& Bi = w.inverse[bi];
      for (int k = 0; k < size[bi]; ++k)
        if (Bi[k][bc] != 0) Bi[k][j] -= g * Bi[k][bc];
      if (bi > 0)
        for (int k = 0; k < size[bi - 1]; ++k)
          if (D[bi - 1][j][k] != 0) D[bi - 1][bc][k] += g * D[bi - 1][j][k];
    }
    used_src[bi][bc] = 1;
    used_tgt[bi + 1][br] = 1;
    w.pieces.push_back(Piece{c.lo + bi, c.gens[bi][bc], c.gens[bi + 1][br], bm});
  }
  for (int i = 0; i < H; ++i)
    for (int j = 0; j < size[i]; ++j)
      if (!used_src[i][j] && !used_tgt[i][j]) w.pieces.push_back(Piece{c.lo + i, c.gens[i][j], 0, -1});

  // certificate: B_{h+1} d_h B_h^{-1} equals the final diagonal form, the
  // changes of basis are graded and invertible over F[a]
  bool ok = true;
  for (int i = 0; i < H && ok; ++i) {
    ok = ok && graded_change(w.basis[i], c.gens[i], c.N) && graded_change(w.inverse[i], c.gens[i], c.N);
    ok = ok && mul(w.basis[i], w.inverse[i], size[i], size[i], size[i]) == identity(size[i]);
    if (sz(i + 1) == 0 || size[i] == 0) continue;
    const Dense orig = to_dense(c.d[i]);
    const Dense t = mul(mul(w.basis[i + 1], orig, sz(i + 1), sz(i + 1), size[i]), w.inverse[i], sz(i + 1),
                        size[i], size[i]);
    ok = ok && t == D[i];
    for (int r = 0; r < sz(i + 1) && ok; ++r) {
      int nz = 0;
      for (int j = 0; j < size[i]; ++j) nz += D[i][r][j] != 0;
      ok = nz <= 1;
    }
    for (int j = 0; j < size[i] && ok; ++j) {
      int nz = 0;
      for (int r = 0; r < sz(i + 1); ++r) nz += D[i][r][j] != 0;
      ok = nz <= 1;
    }
  }
  w.verified = ok;
  return w;
}

int extract_s_N(const GradedModuleOverA& h0, int N) {
  if (int(h0.free.size()) != N) throw std::domain_error("free rank of H^0 is not N");
  std::vector<int> f = h0.free;
  std::sort(f.begin(), f.end());
  const int s = f.front() + N - 1;
  for (int l = 1; l <= N; ++l)
    if (f[N - l] != N + 1 - 2 * l + s) throw std::domain_error("free part is not a shifted unknot");
  return s;
}

GradedFreeComplex random_complex(std::mt19937_64& rng, int N, int degrees, int pieces_per_degree,
                                 std::vector<Piece>* hidden) {
  GradedFreeComplex c;
  c.N = N;
  c.lo = 0;
  c.gens.assign(degrees, {});
  std::uniform_int_distribution<int> qdist(-3, 3), kdist(-1, 3), cdist(-5, 5), shape(0, 2);
  std::vector<std::tuple<int, int, int, int>> links;  // degree, src index, tgt index, k
  for (int h = 0; h < degrees; ++h)
    for (int p = 0; p < pieces_per_degree; ++p) {
      // most degrees in one residue class mod 2N so that changes of basis mix them
      const int base = shape(rng) == 0 ? 2 : 0;
      const int q = base + 2 * N * qdist(rng);
      int k = kdist(rng);
      if (h + 1 >= degrees) k = -1;
      c.gens[h].push_back(q + (k > 0 ? 2 * N * k : 0));
      if (k >= 0) {
        c.gens[h + 1].push_back(q);
        links.emplace_back(h, int(c.gens[h].size()) - 1, int(c.gens[h + 1].size()) - 1, k);
      }
      if (hidden)
        hidden->push_back(Piece{h, c.gens[h].back(), k >= 0 ? q : 0, k});
    }
  std::vector<Dense> D(degrees);
  for (int h = 0; h < degrees; ++h) {
    const int rows = h + 1 < degrees ? int(c.gens[h + 1].size()) : 0;
    D[h].assign(rows, std::vector<mpq_class>(c.gens[h].size()));
  }
  for (auto [h, s, t, k] : links) {
    (void)k;
    int v = 0;
    while (v == 0) v = cdist(rng);
    D[h][t][s] = v;
  }
  // disguise: elementary graded changes of basis G = 1 + t E_ij on each C^h,
  // d_h <- d_h G^{-1} and d_{h-1} <- G d_{h-1}
  for (int h = 0; h < degrees; ++h) {
    const int n = int(c.gens[h].size());
    if (n < 2) continue;
    std::uniform_int_distribution<int> idx(0, n - 1);
    for (int rep = 0; rep < 4 * n; ++rep) {
      const int i = idx(rng), j = idx(rng);
      const int diff = c.gens[h][j] - c.gens[h][i];
      if (i == j || diff < 0 || diff % (2 * N) != 0) continue;
      const mpq_class t = cdist(rng);
      if (t == 0) continue;
      for (auto& row : D[h]) row[j] -= t * row[i];
      if (h > 0)
        for (int k = 0; k < int(c.gens[h - 1].size()); ++k) D[h - 1][i][k] += t * D[h - 1][j][k];
    }
  }
  for (int h = 0; h < degrees; ++h) {
    const int rows = h + 1 < degrees ? int(c.gens[h + 1].size()) : 0;
    SparseMat m(rows, int(c.gens[h].size()));
    for (int r = 0; r < rows; ++r)
      for (int j = 0; j < int(c.gens[h].size()); ++j)
        if (D[h][r][j] != 0) m.set(r, j, D[h][r][j]);
    c.d.push_back(std::move(m));
  }
  return c;
}

}  // namespace kr
