#include "kr/homology.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kr {

namespace {

using Vec = std::vector<mpq_class>;

// Prime field used by the factorization oracle, which only reports
// dimensions; rational coefficients are reduced modulo the prime.
struct Fp {
  static constexpr std::uint64_t P = 2147483647;
  std::uint64_t v = 0;
  Fp() = default;
  Fp(long x) : v(std::uint64_t((x % long(P) + long(P)) % long(P))) {}
  explicit Fp(const mpq_class& q) {
    const mpz_class p(static_cast<unsigned long>(P));
    mpz_class n = q.get_num() % p, d = q.get_den() % p;
    if (n < 0) n += p;
    if (d == 0) throw std::domain_error("denominator divisible by the oracle prime");
    v = (n.get_ui() * Fp(long(d.get_ui())).inverse().v) % P;
  }
  Fp inverse() const {
    std::uint64_t r = 1, b = v, e = P - 2;
    while (e) {
      if (e & 1) r = r * b % P;
      b = b * b % P;
      e >>= 1;
    }
    Fp out;
    out.v = r;
    return out;
  }
  static Fp raw(std::uint64_t x) {
    Fp f;
    f.v = x;
    return f;
  }
  friend Fp operator+(Fp a, Fp b) { return raw((a.v + b.v) % P); }
  friend Fp operator-(Fp a, Fp b) { return raw((a.v + P - b.v) % P); }
  friend Fp operator*(Fp a, Fp b) { return raw(a.v * b.v % P); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return raw((P - v) % P); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
};
using FVec = std::vector<Fp>;

// Rows kept in insertion order; each row has a pivot column where every later
// row vanishes, so reducing in insertion order is exact. A row may carry a tag
// vector recording which homology class it stands for.
template <class F>
class TaggedEchelon {
 public:
  explicit TaggedEchelon(int width) : width_(width) {}

  // Returns true when v was independent of the stored rows.
  bool add(std::vector<F> v, std::vector<F> tag = {}) {
    std::vector<F> acc_tag = tag;
    reduce(v, &acc_tag, true);
    int p = -1;
    for (int i = 0; i < width_; ++i)
      if (v[i] != 0) {
        p = i;
        break;
      }
    if (p < 0) return false;
    const F inv = F(1) / v[p];
    for (auto& x : v) x *= inv;
    for (auto& x : acc_tag) x *= inv;
    rows_.push_back(Row{std::move(v), std::move(acc_tag), p});
    return true;
  }

  // Subtracts stored rows; `tag` accumulates the tags of the subtracted rows
  // (with sign + when `negate` is false, so that v_original = residue + sum c_r row_r).
  void reduce(std::vector<F>& v, std::vector<F>* tag, bool negate = false) const {
    for (const auto& r : rows_) {
      const F c = v[r.pivot];
      if (c == 0) continue;
      for (int i = r.pivot; i < width_; ++i)
        if (r.v[i] != 0) v[i] -= c * r.v[i];
      if (tag && !r.tag.empty()) {
        if (tag->size() < r.tag.size()) tag->resize(r.tag.size());
        for (std::size_t i = 0; i < r.tag.size(); ++i)
          if (r.tag[i] != 0) (*tag)[i] += (negate ? -c : c) * r.tag[i];
      }
    }
  }

  int rank() const { return int(rows_.size()); }
  int width() const { return width_; }

 private:
  struct Row {
    std::vector<F> v, tag;
    int pivot;
  };
  int width_;
  std::vector<Row> rows_;
};

template <class F>
bool is_zero_vec(const std::vector<F>& v) {
  return std::all_of(v.begin(), v.end(), [](const F& x) { return x == 0; });
}

// Basis of the kernel of a matrix given by its columns (each a vector of `rows` entries).
template <class F>
std::vector<std::vector<F>> kernel_of_columns(const std::vector<std::vector<F>>& cols, int rows) {
  const int n = int(cols.size());
  // row-reduce the matrix [rows x n]
  std::vector<std::vector<F>> m(rows, std::vector<F>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < rows; ++i) m[i][j] = cols[j][i];
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    const F inv = F(1) / m[r][c];
    for (int j = c; j < n; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const F f = m[i][c];
      for (int j = c; j < n; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<F>> out;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<F> v(n);
    v[f] = 1;
    for (int i = 0; i < r; ++i) v[pivot_col[i]] = -m[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

void enum_monos(const std::vector<int>& vars, std::size_t pos, int left, Mono cur, std::vector<Mono>& out) {
  if (vars.empty()) {
    if (left == 0) out.push_back(cur);
    return;
  }
  if (pos + 1 == vars.size()) {
    cur.e[vars[pos]] = std::uint8_t(left);
    out.push_back(cur);
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur.e[vars[pos]] = std::uint8_t(k);
    enum_monos(vars, pos + 1, left - k, cur, out);
  }
}

// Free module over F[vars] with a factorization differential, presented by
// degree windows. Graded: a window is one q-degree. Deformed: a window is
// everything of filtration degree <= T.
struct Object {
  MF mf;  // after exclusion; a set to 0
  int shift = 0;
  bool graded = true;
  std::vector<int> xvars;
  std::map<int, Poly> eliminated;  // excluded marks in terms of the remaining ones
  std::map<int, std::vector<Mono>> monos_by_degree;
  std::map<Mono, Poly> reduced_cache;
  std::map<std::tuple<int, int, bool, int, int>, struct WindowHomology> windows;

  // a monomial over the original marks, rewritten in the remaining ones
  const Poly& in_remaining(const Mono& m) {
    auto it = reduced_cache.find(m);
    if (it != reduced_cache.end()) return it->second;
    Poly p = Poly::monomial(m, 1);
    if (!eliminated.empty()) p = p.subs(eliminated);
    return reduced_cache.emplace(m, std::move(p)).first->second;
  }

  const std::vector<Mono>& monos(int k) {
    auto it = monos_by_degree.find(k);
    if (it != monos_by_degree.end()) return it->second;
    std::vector<Mono> out;
    if (k >= 0) enum_monos(xvars, 0, k, Mono{}, out);
    return monos_by_degree.emplace(k, std::move(out)).first->second;
  }
  int min_degree() const {
    int m = 1 << 30;
    for (std::size_t g = 0; g < mf.size(); ++g) m = std::min(m, mf.qdeg[g] + shift);
    return m;
  }
};

struct Space {
  std::vector<std::pair<int, Mono>> keys;  // (generator, monomial)
  std::map<std::pair<int, Mono>, int> index;
  std::vector<int> degree;
  void add(int g, const Mono& m, int deg) {
    index[{g, m}] = int(keys.size());
    keys.push_back({g, m});
    degree.push_back(deg);
  }
  int size() const { return int(keys.size()); }
};

// parity-eps generators, total degree exactly Q (graded) or in [lo, Q] (filtered)
Space make_space(Object& o, int eps, int Q, bool filtered, int lo) {
  Space s;
  std::vector<int> degs;
  if (filtered) {
    for (int d = Q; d >= lo; --d) degs.push_back(d);  // descending: high degrees first
  } else {
    degs.push_back(Q);
  }
  for (int d : degs)
    for (std::size_t g = 0; g < o.mf.size(); ++g) {
      if (o.mf.parity[g] != eps) continue;
      const int rest = d - o.mf.qdeg[g] - o.shift;
      if (rest < 0 || rest % 2) continue;
      for (const Mono& m : o.monos(rest / 2)) s.add(int(g), m, d);
    }
  return s;
}

// Applies a polynomial matrix (columns = source generators) to a vector;
// marks excluded on the target side are rewritten when `tgt_obj` is given.
FVec apply(const PolyMatrix& M, const Space& src, const FVec& v, const Space& tgt, bool* escaped,
          Object* tgt_obj = nullptr) {
  FVec out(tgt.size());
  auto put = [&](int r, const Mono& m, const Fp& c) {
    auto it = tgt.index.find({r, m});
    if (it == tgt.index.end()) {
      if (escaped) *escaped = true;
      return;
    }
    out[it->second] += c;
  };
  for (int i = 0; i < src.size(); ++i) {
    if (v[i] == 0) continue;
    const auto& [g, m] = src.keys[i];
    for (std::size_t r = 0; r < M.size(); ++r) {
      const Poly& p = M[r][g];
      for (const auto& [pm, c] : p.terms()) {
        if (!tgt_obj) {
          put(int(r), pm * m, v[i] * Fp(c));
          continue;
        }
        for (const auto& [rm, rc] : tgt_obj->in_remaining(pm * m).terms()) put(int(r), rm, v[i] * Fp(c) * Fp(rc));
      }
    }
  }
  return out;
}

using SparseVec = std::map<int, Fp>;

// The image of one basis element; escaped terms are reported, not stored.
SparseVec apply_basis(const PolyMatrix& M, const Space& src, int i, const Space& tgt, bool* escaped) {
  SparseVec out;
  const auto& [g, m] = src.keys[i];
  for (std::size_t r = 0; r < M.size(); ++r)
    for (const auto& [pm, c] : M[r][g].terms()) {
      auto it = tgt.index.find({int(r), pm * m});
      if (it == tgt.index.end()) {
        *escaped = true;
        continue;
      }
      Fp& x = out[it->second];
      x += Fp(c);
      if (x == Fp(0)) out.erase(it->second);
    }
  return out;
}

// Rank of a sparse family by elimination on leading indices.
class SparseEchelon {
 public:
  void add(SparseVec v) {
    while (!v.empty()) {
      const auto [p, c] = *v.begin();
      auto it = rows_.find(p);
      if (it == rows_.end()) {
        const Fp inv = c.inverse();
        for (auto& [k, x] : v) x *= inv;
        rows_.emplace(p, std::move(v));
        return;
      }
      for (const auto& [k, x] : it->second) {
        Fp& y = v[k];
        y -= c * x;
        if (y == Fp(0)) v.erase(k);
      }
    }
  }
  int rank() const { return int(rows_.size()); }

 private:
  std::map<int, SparseVec> rows_;
};

// dimension of a graded window of homology: |C| - rank(out) - rank(in)
int graded_window_dim(Object& o, int eps, int Q, int lo) {
  const int N = o.mf.spec.N;
  Space here = make_space(o, eps, Q, false, lo);
  if (!here.size()) return 0;
  Space up = make_space(o, 1 - eps, Q + N + 1, false, lo);
  Space down = make_space(o, 1 - eps, Q - N - 1, false, lo);
  bool escaped = false;
  SparseEchelon out, in;
  for (int i = 0; i < here.size(); ++i) out.add(apply_basis(o.mf.d, here, i, up, &escaped));
  for (int i = 0; i < down.size(); ++i) in.add(apply_basis(o.mf.d, down, i, here, &escaped));
  if (escaped) throw std::logic_error("differential leaves its window");
  return here.size() - out.rank() - in.rank();
}

FVec unit(int n, int i) {
  FVec v(n);
  v[i] = 1;
  return v;
}

// Homology of one window: cycle representatives and an echelon that
// expresses any cycle in terms of them.
struct WindowHomology {
  Space space;
  std::vector<FVec> reps;
  TaggedEchelon<Fp> ech{0};
  int dim() const { return int(reps.size()); }
};

WindowHomology compute_window(Object& o, int eps, int Q, bool filtered, int lo, int margin) {
  const int N = o.mf.spec.N;
  WindowHomology w;
  w.space = make_space(o, eps, Q, filtered, lo);
  // cycles
  Space up = make_space(o, 1 - eps, Q + N + 1, filtered, lo);
  std::vector<FVec> cols;
  bool escaped = false;
  for (int i = 0; i < w.space.size(); ++i) cols.push_back(apply(o.mf.d, w.space, unit(w.space.size(), i), up, &escaped));
  if (escaped) throw std::logic_error("differential leaves its window");
  auto Z = kernel_of_columns(cols, up.size());
  // boundaries
  w.ech = TaggedEchelon<Fp>(w.space.size());
  if (!filtered) {
    Space down = make_space(o, 1 - eps, Q - N - 1, false, lo);
    for (int i = 0; i < down.size(); ++i) {
      FVec b = apply(o.mf.d, down, unit(down.size(), i), w.space, &escaped);
      w.ech.add(std::move(b));
    }
    if (escaped) throw std::logic_error("differential leaves its window");
  } else {
    // d(F_{Q+margin}) intersected with F_Q: echelon with high degrees first
    Space big_src = make_space(o, 1 - eps, Q + margin, true, lo);
    Space big_tgt = make_space(o, eps, Q + margin + N + 1, true, lo);
    std::vector<FVec> images;
    for (int i = 0; i < big_src.size(); ++i)
      images.push_back(apply(o.mf.d, big_src, unit(big_src.size(), i), big_tgt, &escaped));
    if (escaped) throw std::logic_error("differential leaves its window");
    // column-ordered elimination exposing the rows that vanish above Q
    const int W = big_tgt.size();
    int high = 0;
    while (high < W && big_tgt.degree[high] > Q) ++high;
    std::vector<FVec> m = images;
    int r = 0;
    for (int c = 0; c < high && r < int(m.size()); ++c) {
      int p = -1;
      for (int i = r; i < int(m.size()); ++i)
        if (m[i][c] != 0) {
          p = i;
          break;
        }
      if (p < 0) continue;
      std::swap(m[p], m[r]);
      for (int i = r + 1; i < int(m.size()); ++i) {
        if (m[i][c] == 0) continue;
        const Fp f = m[i][c] / m[r][c];
        for (int j = c; j < W; ++j)
          if (m[r][j] != 0) m[i][j] -= f * m[r][j];
      }
      ++r;
    }
    for (int i = r; i < int(m.size()); ++i) {
      FVec b(w.space.size());
      for (int j = high; j < W; ++j) {
        if (m[i][j] == 0) continue;
        auto it = w.space.index.find(big_tgt.keys[j]);
        if (it == w.space.index.end()) throw std::logic_error("filtered boundary outside its window");
        b[it->second] = m[i][j];
      }
      w.ech.add(std::move(b));
    }
  }
  for (auto& z : Z) {
    const int k = int(w.reps.size());
    FVec tag(k + 1);
    tag[k] = 1;
    if (w.ech.add(z, tag)) w.reps.push_back(z);
  }
  return w;
}

const WindowHomology& window_homology(Object& o, int eps, int Q, bool filtered, int lo, int margin) {
  const auto key = std::make_tuple(eps, Q, filtered, lo, margin);
  auto it = o.windows.find(key);
  if (it == o.windows.end()) it = o.windows.emplace(key, compute_window(o, eps, Q, filtered, lo, margin)).first;
  return it->second;
}

// coordinates of a cycle in the homology basis of a window
FVec coordinates_in(const WindowHomology& w, FVec v) {
  FVec tag(w.dim());
  w.ech.reduce(v, &tag);
  if (!is_zero_vec(v)) throw std::logic_error("image is not a cycle of the target window");
  tag.resize(w.dim());
  return tag;
}

template <class F>
int matrix_rank(std::vector<std::vector<F>> rows) {
  if (rows.empty()) return 0;
  TaggedEchelon<F> e(int(rows[0].size()));
  for (auto& r : rows) e.add(std::move(r));
  return e.rank();
}

bool linear_in_some_var(const Poly& p, const MF& m) {
  for (int v : m.vars) {
    if (v == kVarA || !m.is_internal(v) || p.degree_in(v) != 1) continue;
    const Poly lead = p.coeffs_in(v)[1];
    if (lead.is_constant() && !lead.is_zero()) return true;
  }
  return false;
}

// Exchanges the two entries of Koszul row i by relabelling generators
// S -> S xor {i}; degrees and parities travel with the generators, and
// phi(e_S) = (-1)^{#{j in S : j > i}} e_{S xor i} is an isomorphism.
MF swap_row(const MF& m, int i, PolyMatrix& phi, PolyMatrix& phi_inv) {
  std::vector<KoszulRow> rows = m.rows;
  std::swap(rows[i].a, rows[i].b);
  MF out = koszul_mf(m.spec, rows, 0, m.vars, m.boundary);
  const std::size_t n = m.size(), bit = std::size_t(1) << i;
  phi = zero_matrix(n, n);
  phi_inv = zero_matrix(n, n);
  for (std::size_t S = 0; S < n; ++S) {
    const int above = std::popcount(S >> (i + 1));
    const Q sign = (above & 1) ? Q(-1) : Q(1);
    phi[S ^ bit][S] = Poly(sign);
    phi_inv[S][S ^ bit] = Poly(sign);
    out.qdeg[S ^ bit] = m.qdeg[S];
    out.parity[S ^ bit] = m.parity[S];
  }
  if (!is_chain_map(m, out, Morphism{phi, 0, 0})) throw std::logic_error("row swap is not a chain map");
  return out;
}

// Shrinks a closed factorization by linear exclusions, swapping rows whose
// only linear entry sits on the wrong side. P maps original generators to
// reduced ones and I back; both are chain maps and mutually inverse up to
// homotopy.
struct Reduction {
  MF mf;
  PolyMatrix P, I;
  std::map<int, Poly> eliminated;
};

Reduction reduce_closed(const MF& start) {
  Reduction r;
  r.mf = start;
  r.P = identity_matrix(start.size());
  r.I = identity_matrix(start.size());
  for (;;) {
    ExclusionChain ch = exclude_all_linear(r.mf);
    if (!ch.steps.empty()) {
      r.I = mat_mul(r.I, ch.iota());
      r.P = ch.pi(r.P);
      for (const auto& e : ch.steps) {
        if (e.degree != 1) throw std::logic_error("expected a linear exclusion");
        Poly quo, root;
        divide_by_monic(Poly::x(e.var), e.beta, e.var, quo, root);
        for (auto& [v, p] : r.eliminated) p = p.subs(e.var, root);
        r.eliminated[e.var] = root;
      }
      r.mf = ch.result();
    }
    int row = -1;
    if (r.mf.koszul)
      for (int k = 0; k < int(r.mf.rows.size()) && row < 0; ++k)
        if (!linear_in_some_var(r.mf.rows[k].b, r.mf) && linear_in_some_var(r.mf.rows[k].a, r.mf)) row = k;
    if (row < 0) break;
    PolyMatrix phi, phi_inv;
    r.mf = swap_row(r.mf, row, phi, phi_inv);
    r.P = mat_mul(phi, r.P);
    r.I = mat_mul(r.I, phi_inv);
  }
  return r;
}

MF with_a_zero(MF m) {
  if (m.spec.kind != Variant::Equivariant) return m;
  m.d = mat_subs(m.d, {{kVarA, Poly(0)}});
  m.w = m.w.subs(kVarA, Poly(0));
  for (auto& r : m.rows) {
    r.a = r.a.subs(kVarA, Poly(0));
    r.b = r.b.subs(kVarA, Poly(0));
  }
  return m;
}

Object make_object(const MF& closed, int shift, Reduction* red_out) {
  Reduction red = reduce_closed(with_a_zero(closed));
  Object o;
  o.mf = red.mf;
  o.shift = shift;
  o.graded = closed.spec.graded();
  for (int v : o.mf.vars)
    if (v != kVarA) o.xvars.push_back(v);
  o.eliminated = red.eliminated;
  if (red_out) *red_out = std::move(red);
  return o;
}

constexpr int kWindowCap = 400;

// q-degrees where a graded object may carry homology: scan upward from the
// lowest generator degree until a long run of empty windows.
std::vector<int> graded_support(Object& o) {
  const int N = o.mf.spec.N;
  const int lo = o.min_degree();
  const int run = 2 * (N + 1) * (int(o.xvars.size()) + 1) + 4;
  std::vector<int> out;
  int last = lo;
  for (int Q = lo; Q <= lo + kWindowCap; ++Q) {
    if (Q - last > run) return out;
    int dim = 0;
    for (int eps = 0; eps < 2; ++eps) dim += graded_window_dim(o, eps, Q, lo);
    if (dim) {
      out.push_back(Q);
      last = Q;
    }
  }
  throw ResourceGuardError("homology window did not close");
}

int filtered_top_guess(Object& o) {
  // the associated graded object bounds the filtration of the homology
  Object g = o;
  g.graded = true;
  g.mf.spec.kind = Variant::Generic;
  const int N = o.mf.spec.N;
  for (auto& row : g.mf.d)
    for (auto& p : row) {
      Poly top;
      const int t = top_qdeg(p, N);
      for (const auto& [m, c] : p.terms())
        if (m.qdeg(N) == t) top.add_term(m, c);
      p = top;
    }
  auto supp = graded_support(g);
  return supp.empty() ? g.min_degree() : supp.back();
}

}  // namespace

std::map<std::pair<int, int>, int> mf_homology(const MF& closed, int shift) {
  Object o = make_object(closed, shift, nullptr);
  std::map<std::pair<int, int>, int> out;
  const int lo = o.min_degree();
  if (o.graded) {
    for (int Q : graded_support(o))
      for (int eps = 0; eps < 2; ++eps) {
        int d = graded_window_dim(o, eps, Q, lo);
        if (d) out[{eps, Q}] += d;
      }
    return out;
  }
  const int N = o.mf.spec.N;
  int T = filtered_top_guess(o) + 2 * (N + 1);
  int M = 2 * (N + 1);
  int prev[2] = {-1, -1};
  for (int attempt = 0; attempt < 6; ++attempt) {
    int cur[2];
    for (int eps = 0; eps < 2; ++eps) cur[eps] = window_homology(o, eps, T, true, lo, M).dim();
    if (cur[0] == prev[0] && cur[1] == prev[1]) {
      for (int eps = 0; eps < 2; ++eps)
        if (cur[eps]) out[{eps, 0}] = cur[eps];
      return out;
    }
    prev[0] = cur[0];
    prev[1] = cur[1];
    T += 2 * (N + 1);
    M += 2 * (N + 1);
  }
  throw ResourceGuardError("filtered homology did not stabilize");
}

BigradedDims complex_homology(const ComplexOfMF& c, std::size_t guard) {
  if (c.total_generators() > guard) throw ResourceGuardError("complex beyond the size guard");
  const bool graded = c.spec.graded();
  const int N = c.spec.N;
  const int H = int(c.objects.size());
  std::vector<std::vector<Object>> obj(H);
  std::vector<std::vector<Reduction>> reds(H);
  for (int i = 0; i < H; ++i)
    for (const auto& s : c.objects[i]) {
      Reduction r;
      obj[i].push_back(make_object(s.mf, s.shift, &r));
      reds[i].push_back(std::move(r));
    }
  // transported differentials, equivariant parameter set to 0
  std::vector<std::vector<std::vector<std::optional<PolyMatrix>>>> maps(H);
  for (int i = 0; i + 1 < H; ++i) {
    maps[i].assign(c.objects[i + 1].size(), std::vector<std::optional<PolyMatrix>>(c.objects[i].size()));
    for (std::size_t t = 0; t < c.objects[i + 1].size(); ++t)
      for (std::size_t s = 0; s < c.objects[i].size(); ++s) {
        const auto& f = c.diff[i][t][s];
        if (!f) continue;
        Morphism g = *f;
        if (c.spec.kind == Variant::Equivariant) g.m = mat_subs(g.m, {{kVarA, Poly(0)}});
        maps[i][t][s] = mat_mul(reds[i + 1][t].P, mat_mul(g.m, reds[i][s].I));
      }
  }
  // windows
  std::vector<std::pair<int, int>> windows;  // (Q or T, margin)
  int lo = 1 << 30;
  for (auto& deg : obj)
    for (auto& o : deg) lo = std::min(lo, o.min_degree());
  if (graded) {
    std::set<int> qs;
    for (auto& deg : obj)
      for (auto& o : deg)
        for (int Q : graded_support(o)) qs.insert(Q);
    for (int Q : qs) windows.push_back({Q, 0});
  } else {
    int top = lo;
    for (auto& deg : obj)
      for (auto& o : deg) top = std::max(top, filtered_top_guess(o));
    windows.push_back({top + 2 * (N + 1), 2 * (N + 1)});
  }
  BigradedDims out;
  for (auto [Q, margin] : windows) {
    for (int eps = 0; eps < 2; ++eps) {
      std::vector<std::vector<const WindowHomology*>> wh(H);
      std::vector<int> total(H, 0);
      for (int i = 0; i < H; ++i)
        for (auto& o : obj[i]) {
          wh[i].push_back(&window_homology(o, eps, Q, !graded, lo, margin));
          total[i] += wh[i].back()->dim();
        }
      // induced differential: rows = classes in degree i+1
      std::vector<int> rank(H, 0);
      for (int i = 0; i + 1 < H; ++i) {
        if (!total[i] || !total[i + 1]) continue;
        std::vector<FVec> cols;
        for (std::size_t s = 0; s < obj[i].size(); ++s)
          for (const auto& z : wh[i][s]->reps) {
            FVec col(total[i + 1]);
            int off = 0;
            for (std::size_t t = 0; t < obj[i + 1].size(); ++t) {
              const auto& M = maps[i][t][s];
              if (M) {
                bool escaped = false;
                FVec img = apply(*M, wh[i][s]->space, z, wh[i + 1][t]->space, &escaped, &obj[i + 1][t]);
                if (escaped) throw std::logic_error("induced map leaves its window");
                FVec co = coordinates_in(*wh[i + 1][t], img);
                for (int k = 0; k < int(co.size()); ++k) col[off + k] += co[k];
              }
              off += wh[i + 1][t]->dim();
            }
            cols.push_back(std::move(col));
          }
        rank[i] = matrix_rank(cols);
      }
      for (int i = 0; i < H; ++i) {
        const int d = total[i] - rank[i] - (i ? rank[i - 1] : 0);
        if (d < 0) throw std::logic_error("negative homology dimension");
        if (d) out[{c.lo + i, graded ? Q : 0}] += d;
      }
    }
  }
  return out;
}

BigradedDims strand_homology(const StrandComplex& c, const PotentialSpec& s) {
  GradedFreeComplex g = close_strand(c, s);
  return s.graded() ? homology_at_a0(g) : homology_at_a1(g);
}

std::vector<PoincareTerm> poincare(const BigradedDims& dims) {
  std::vector<PoincareTerm> out;
  for (const auto& [k, v] : dims)
    if (v) out.push_back(PoincareTerm{k.first, k.second, v});
  return out;
}

LaurentQ euler_characteristic(const BigradedDims& dims) {
  LaurentQ out;
  for (const auto& [k, v] : dims) {
    out[k.second] += (k.first % 2 == 0 ? 1 : -1) * long(v);
    if (out[k.second] == 0) out.erase(k.second);
  }
  return out;
}

std::string poincare_string(const BigradedDims& dims) {
  std::ostringstream o;
  bool first = true;
  for (const auto& t : poincare(dims)) {
    if (!first) o << " + ";
    first = false;
    if (t.rank != 1) o << t.rank;
    o << "t^" << t.t << "q^" << t.q;
  }
  if (first) o << "0";
  return o.str();
}

GradedFreeComplex specialize(const GradedFreeComplex& c, bool at_a1) {
  GradedFreeComplex out = c;
  for (std::size_t i = 0; i < c.d.size(); ++i) {
    SparseMat m(c.d[i].rows(), c.d[i].cols());
    for (int col = 0; col < c.d[i].cols(); ++col)
      for (const auto& [row, v] : c.d[i].column(col)) {
        if (!at_a1 && c.gens[i][col] != c.gens[i + 1][row]) continue;
        m.set(row, col, v);
      }
    out.d[i] = std::move(m);
  }
  if (at_a1)
    for (auto& deg : out.gens)
      for (auto& q : deg) q = 0;
  return out;
}

namespace {

// Per q-block data of a specialized complex in one degree.
struct BlockHomology {
  std::vector<int> gens;            // generator indices of the block
  std::map<int, int> local;         // generator -> position
  std::vector<Vec> reps;
  TaggedEchelon<mpq_class> ech{0};
  int dim() const { return int(reps.size()); }
};

Vec coordinates_in_block(const BlockHomology& b, Vec v) {
  Vec tag(b.dim());
  b.ech.reduce(v, &tag);
  if (!is_zero_vec(v)) throw std::logic_error("image is not a cycle");
  tag.resize(b.dim());
  return tag;
}

std::vector<int> block_gens(const GradedFreeComplex& c, int h, int q) {
  std::vector<int> out;
  if (h < c.lo || h > c.hi()) return out;
  const auto& g = c.gens[h - c.lo];
  for (int i = 0; i < int(g.size()); ++i)
    if (g[i] == q) out.push_back(i);
  return out;
}

BlockHomology block_homology(const GradedFreeComplex& c, int h, int q) {
  BlockHomology b;
  b.gens = block_gens(c, h, q);
  for (int i = 0; i < int(b.gens.size()); ++i) b.local[b.gens[i]] = i;
  const int n = int(b.gens.size());
  b.ech = TaggedEchelon<mpq_class>(n);
  // boundaries from h-1
  if (h - 1 >= c.lo) {
    const auto& d = c.d[h - 1 - c.lo];
    for (int src : block_gens(c, h - 1, q)) {
      Vec v(n);
      for (const auto& [row, val] : d.column(src)) {
        auto it = b.local.find(row);
        if (it != b.local.end()) v[it->second] = val;
      }
      b.ech.add(std::move(v));
    }
  }
  // cycles
  std::vector<Vec> cols;
  std::vector<int> up = block_gens(c, h + 1, q);
  std::map<int, int> up_local;
  for (int i = 0; i < int(up.size()); ++i) up_local[up[i]] = i;
  for (int src : b.gens) {
    Vec v(up.size());
    if (h <= c.hi() && h - c.lo < int(c.d.size()))
      for (const auto& [row, val] : c.d[h - c.lo].column(src)) {
        auto it = up_local.find(row);
        if (it != up_local.end()) v[it->second] = val;
      }
    cols.push_back(std::move(v));
  }
  for (auto& z : kernel_of_columns(cols, int(up.size()))) {
    const int k = b.dim();
    Vec tag(k + 1);
    tag[k] = 1;
    if (b.ech.add(z, tag)) b.reps.push_back(z);
  }
  return b;
}

std::set<int> q_values(const GradedFreeComplex& c) {
  std::set<int> qs;
  for (const auto& deg : c.gens) qs.insert(deg.begin(), deg.end());
  return qs;
}

}  // namespace

BigradedDims homology_dims(const GradedFreeComplex& c) {
  BigradedDims out;
  for (int q : q_values(c))
    for (int h = c.lo; h <= c.hi(); ++h) {
      const int d = block_homology(c, h, q).dim();
      if (d) out[{h, q}] = d;
    }
  return out;
}

BigradedDims induced_rank(const GradedFreeComplex& src, const GradedFreeComplex& tgt, const ChainMapF& f) {
  BigradedDims out;
  std::set<int> qs = q_values(src);
  for (int q : qs)
    for (const auto& [h, F] : f) {
      BlockHomology a = block_homology(src, h, q);
      if (!a.dim()) continue;
      BlockHomology b = block_homology(tgt, h, q);
      std::vector<Vec> cols;
      for (const auto& z : a.reps) {
        Vec img(b.gens.size());
        for (int i = 0; i < int(z.size()); ++i) {
          if (z[i] == 0) continue;
          for (const auto& [row, val] : F.column(a.gens[i])) {
            auto it = b.local.find(row);
            if (it == b.local.end()) {
              if (tgt.gens[h - tgt.lo][row] != q) throw std::logic_error("chain map does not preserve q");
              continue;
            }
            img[it->second] += z[i] * val;
          }
        }
        if (b.gens.empty()) continue;
        cols.push_back(coordinates_in_block(b, img));
      }
      const int r = matrix_rank(cols);
      if (r) out[{h, q}] = r;
    }
  return out;
}

ShortExact split_by_mask(const GradedFreeComplex& c, const std::vector<std::vector<bool>>& in_sub) {
  ShortExact out;
  out.whole = c;
  GradedFreeComplex& S = out.sub;
  GradedFreeComplex& Q = out.quotient;
  S.N = Q.N = c.N;
  S.lo = Q.lo = c.lo;
  const int H = int(c.gens.size());
  std::vector<std::vector<int>> pos(H);  // position inside sub or quotient
  for (int i = 0; i < H; ++i) {
    S.gens.emplace_back();
    Q.gens.emplace_back();
    for (int g = 0; g < int(c.gens[i].size()); ++g) {
      auto& target = in_sub[i][g] ? S.gens[i] : Q.gens[i];
      pos[i].push_back(int(target.size()));
      target.push_back(c.gens[i][g]);
    }
  }
  for (int i = 0; i < H; ++i) {
    const int up = i + 1 < H ? 1 : 0;
    SparseMat ds(up ? int(S.gens[i + 1].size()) : 0, int(S.gens[i].size()));
    SparseMat dq(up ? int(Q.gens[i + 1].size()) : 0, int(Q.gens[i].size()));
    if (up)
      for (int g = 0; g < int(c.gens[i].size()); ++g)
        for (const auto& [row, v] : c.d[i].column(g)) {
          if (in_sub[i][g] && !in_sub[i + 1][row]) throw std::invalid_argument("mask does not select a subcomplex");
          if (in_sub[i][g]) ds.set(pos[i + 1][row], pos[i][g], v);
          else if (!in_sub[i + 1][row]) dq.set(pos[i + 1][row], pos[i][g], v);
        }
    S.d.push_back(std::move(ds));
    Q.d.push_back(std::move(dq));
    SparseMat inc(int(c.gens[i].size()), int(S.gens[i].size()));
    SparseMat pr(int(Q.gens[i].size()), int(c.gens[i].size()));
    for (int g = 0; g < int(c.gens[i].size()); ++g) {
      if (in_sub[i][g]) inc.set(g, pos[i][g], 1);
      else pr.set(pos[i][g], g, 1);
    }
    out.incl[c.lo + i] = std::move(inc);
    out.proj[c.lo + i] = std::move(pr);
  }
  return out;
}

TriangleReport long_exact_sequence(const ShortExact& s) {
  TriangleReport r;
  r.h_sub = homology_dims(s.sub);
  r.h_whole = homology_dims(s.whole);
  r.h_quot = homology_dims(s.quotient);
  r.rank_incl = induced_rank(s.sub, s.whole, s.incl);
  r.rank_proj = induced_rank(s.whole, s.quotient, s.proj);
  auto get = [](const BigradedDims& m, int h, int q) {
    auto it = m.find({h, q});
    return it == m.end() ? 0 : it->second;
  };
  std::set<std::pair<int, int>> keys;
  for (const auto* m : {&r.h_sub, &r.h_whole, &r.h_quot})
    for (const auto& [k, v] : *m) {
      keys.insert(k);
      keys.insert({k.first - 1, k.second});
    }
  r.exact = true;
  std::ostringstream why;
  for (const auto& [h, q] : keys) {
    const int conn = get(r.h_quot, h, q) - get(r.rank_proj, h, q);
    if (conn) r.rank_connecting[{h, q}] = conn;
    // image of the inclusion equals the kernel of the projection
    if (get(r.h_whole, h, q) - get(r.rank_proj, h, q) != get(r.rank_incl, h, q)) {
      r.exact = false;
      why << "ker p != im i at (" << h << "," << q << "); ";
    }
    // image of the connecting map equals the kernel of the next inclusion
    if (get(r.h_sub, h + 1, q) - get(r.rank_incl, h + 1, q) != conn) {
      r.exact = false;
      why << "ker i != im delta at (" << h + 1 << "," << q << "); ";
    }
    if (conn < 0) r.exact = false;
  }
  LaurentQ sum;
  for (const auto& [q, v] : euler_characteristic(r.h_sub)) sum[q] += v;
  for (const auto& [q, v] : euler_characteristic(r.h_whole)) sum[q] -= v;
  for (const auto& [q, v] : euler_characteristic(r.h_quot)) sum[q] += v;
  r.euler_vanishes = std::all_of(sum.begin(), sum.end(), [](const auto& kv) { return kv.second == 0; });
  r.detail = why.str();
  return r;
}

namespace {

// Single cycle of wide edges in which both outputs of each wide edge feed the
// same next wide edge; returns its length or 0.
int wide_cycle_length(const Diagram& g) {
  std::vector<const Vertex*> ws;
  for (const auto& v : g.vertices) {
    if (v.kind != VertexKind::Wide) return 0;
    ws.push_back(&v);
  }
  if (ws.empty()) return 0;
  std::map<int, int> head_of;  // edge -> wide edge it enters
  for (int i = 0; i < int(ws.size()); ++i) {
    head_of[ws[i]->edges[0]] = i;
    head_of[ws[i]->edges[1]] = i;
  }
  std::vector<int> next(ws.size());
  for (int i = 0; i < int(ws.size()); ++i) {
    const int a = head_of.at(ws[i]->edges[2]), b = head_of.at(ws[i]->edges[3]);
    if (a != b) return 0;
    next[i] = a;
  }
  int len = 0, cur = 0;
  do {
    cur = next[cur];
    ++len;
  } while (cur != 0 && len <= int(ws.size()));
  return len == int(ws.size()) ? len : 0;
}

std::string power_str(const std::string& var, int k) {
  if (k == 0) return "";
  return k == 1 ? var : var + "^" + std::to_string(k);
}

}  // namespace

ClosedGraphHomology closed_graph_homology(const Diagram& g, const PotentialSpec& s, std::size_t guard) {
  if (!g.closed()) throw std::invalid_argument("graph is not closed");
  if (!g.crossingless()) throw std::invalid_argument("graph has crossings");
  const int N = s.N;
  ClosedGraphHomology out;
  const int circles = g.crossings(VertexKind::Circle);
  const int cycle = wide_cycle_length(g);
  if (circles == int(g.vertices.size())) {
    out.shape = circles == 1 ? "circle" : "circles";
    // tensor power of F[x]/(w'(x)) with basis x^i in degree 1-N+2i
    std::vector<std::pair<std::string, int>> basis{{"", 0}};
    for (int c = 0; c < circles; ++c) {
      std::vector<std::pair<std::string, int>> next;
      for (const auto& [name, q] : basis)
        for (int i = 0; i < N; ++i) {
          std::string m = power_str("x" + std::to_string(g.vertices[c].edges[0]), i);
          std::string joined = name.empty() ? m : (m.empty() ? name : name + "*" + m);
          next.push_back({joined, q + 1 - N + 2 * i});
        }
      basis = std::move(next);
    }
    for (auto& [name, q] : basis) {
      out.basis.push_back(name.empty() ? "1" : name);
      out.qdeg.push_back(q);
    }
    out.rank = long(basis.size());
    out.free_over_a = true;
    out.parity = circles % 2;  // each circle contributes odd parity
  } else if (cycle > 0) {
    out.shape = "wide cycle";
    RingModel m = ring_model(s, std::string(cycle, 'W'));
    std::string why;
    if (!certify_ring_model(m, &why)) throw std::logic_error("ring model failed its certificate: " + why);
    for (int i = 0; i < int(m.basis.size()); ++i) {
      out.basis.push_back(m.basis[i].is_one() ? "1" : mono_str(m.basis[i]));
      out.qdeg.push_back(m.basis_qdeg(i));
    }
    out.rank = long(m.basis.size());
    // a confluent system whose leading monomials avoid a has its standard
    // monomials as a free basis over F[a]
    out.free_over_a = std::all_of(m.relations.begin(), m.relations.end(),
                                  [&](const Poly& r) { return m.order.leading(r).e[kVarA] == 0; });
    out.parity = 0;
  } else {
    out.shape = "brute force";
  }
  if (out.shape != "brute force") return out;
  auto dims = mf_homology(reduced_graph_mf(g, s, guard));
  std::set<int> parities;
  long total = 0;
  std::vector<int> qs;
  for (const auto& [k, v] : dims) {
    parities.insert(k.first);
    total += v;
    for (int i = 0; i < v; ++i) qs.push_back(k.second);
  }
  out.parity = parities.size() == 1 ? *parities.begin() : -1;
  out.rank = total;
  out.qdeg = qs;
  return out;
}

bool moy2_check(const Diagram& g, const PotentialSpec& s, std::string* detail) {
  int u = -1, v = -1;
  for (int i = 0; i < int(g.vertices.size()) && u < 0; ++i) {
    if (g.vertices[i].kind != VertexKind::Wide) continue;
    std::set<int> outs{g.vertices[i].edges[2], g.vertices[i].edges[3]};
    for (int j = 0; j < int(g.vertices.size()); ++j) {
      if (j == i || g.vertices[j].kind != VertexKind::Wide) continue;
      if (std::set<int>{g.vertices[j].edges[0], g.vertices[j].edges[1]} == outs) {
        u = i;
        v = j;
        break;
      }
    }
  }
  if (u < 0) throw std::invalid_argument("no pair of consecutive wide edges");
  Diagram smaller;
  for (int i = 0; i < int(g.vertices.size()); ++i) {
    if (i == v) continue;
    Vertex x = g.vertices[i];
    if (i == u) {
      x.edges[2] = g.vertices[v].edges[2];
      x.edges[3] = g.vertices[v].edges[3];
    }
    smaller.vertices.push_back(x);
  }
  const auto big = closed_graph_homology(g, s);
  const auto small = closed_graph_homology(smaller, s);
  LaurentQ lhs, rhs;
  for (int q : big.qdeg) ++lhs[s.graded() ? q : 0];
  for (int q : small.qdeg) {
    if (s.graded()) {
      ++rhs[q + 1];
      ++rhs[q - 1];
    } else {
      rhs[0] += 2;
    }
  }
  if (detail) {
    std::ostringstream o;
    o << "rank " << big.rank << " vs 2 x " << small.rank;
    *detail = o.str();
  }
  return lhs == rhs;
}

}  // namespace kr
