#include "kr/mf.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace kr {

PolyMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return PolyMatrix(rows, std::vector<Poly>(cols));
}

PolyMatrix identity_matrix(std::size_t n) {
  PolyMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Poly(1);
  return m;
}

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.empty()) return {};
  std::size_t n = a.size(), k = a[0].size(), m = b.empty() ? 0 : b[0].size();
  if (b.size() != k) throw std::invalid_argument("matrix size mismatch");
  PolyMatrix r = zero_matrix(n, m);
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[t][j].is_zero()) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

PolyMatrix mat_add(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j];
  return r;
}

PolyMatrix mat_sub(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] -= b[i][j];
  return r;
}

PolyMatrix mat_scale(const PolyMatrix& a, const Poly& p) {
  PolyMatrix r = a;
  for (auto& row : r)
    for (auto& e : row)
      if (!e.is_zero()) e = e * p;
  return r;
}

bool mat_is_zero(const PolyMatrix& a) {
  for (auto& row : a)
    for (auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

PolyMatrix mat_subs(const PolyMatrix& a, const std::map<int, Poly>& s) {
  PolyMatrix r = a;
  for (auto& row : r)
    for (auto& e : row)
      if (!e.is_zero()) e = e.subs(s);
  return r;
}

int top_qdeg(const Poly& p, int N) {
  int d = -1;
  for (auto& kv : p.terms()) d = std::max(d, kv.first.qdeg(N));
  return d;
}

bool MF::is_internal(int v) const {
  return std::find(boundary.begin(), boundary.end(), v) == boundary.end();
}

namespace {

int row_a_degree(const KoszulRow& r, int N) {
  if (!r.a.is_zero()) return top_qdeg(r.a, N);
  if (!r.b.is_zero()) return 2 * N + 2 - top_qdeg(r.b, N);
  return N + 1;
}

std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

MF koszul_mf(const PotentialSpec& s, std::vector<KoszulRow> rows, int shift, std::vector<int> vars,
             std::vector<int> boundary) {
  MF m;
  m.spec = s;
  m.koszul = true;
  std::sort(vars.begin(), vars.end());
  std::sort(boundary.begin(), boundary.end());
  m.vars = vars;
  m.boundary = boundary;
  int k = int(rows.size());
  if (k > 20) throw std::length_error("too many Koszul rows");
  std::size_t n = std::size_t(1) << k;
  m.parity.resize(n);
  m.qdeg.resize(n);
  std::vector<int> step(k);
  for (int i = 0; i < k; ++i) step[i] = s.N + 1 - row_a_degree(rows[i], s.N);
  for (std::size_t S = 0; S < n; ++S) {
    m.parity[S] = std::popcount(S) & 1;
    int q = shift;
    for (int i = 0; i < k; ++i)
      if (S >> i & 1) q += step[i];
    m.qdeg[S] = q;
  }
  m.d = zero_matrix(n, n);
  for (std::size_t S = 0; S < n; ++S)
    for (int i = 0; i < k; ++i) {
      int below = std::popcount(S & ((std::size_t(1) << i) - 1));
      Q sign = (below & 1) ? Q(-1) : Q(1);
      std::size_t T = S ^ (std::size_t(1) << i);
      const Poly& e = (S >> i & 1) ? rows[i].b : rows[i].a;
      if (!e.is_zero()) m.d[T][S] += e * sign;
    }
  for (auto& r : rows) m.w += r.a * r.b;
  m.rows = std::move(rows);
  return m;
}

MF shifted(MF m, int s) {
  for (auto& q : m.qdeg) q += s;
  return m;
}

MF arc_mf(const PotentialSpec& s, int from_var, int to_var) {
  if (from_var == to_var) throw std::invalid_argument("arc needs distinct marks");
  KoszulRow r{pi_quotient(s, to_var, from_var), Poly::x(to_var) - Poly::x(from_var)};
  return koszul_mf(s, {r}, 0, {from_var, to_var}, {from_var, to_var});
}

MF wide_edge_mf(const PotentialSpec& s, int out_top, int out_bot, int in_top, int in_bot) {
  std::set<int> distinct{out_top, out_bot, in_top, in_bot};
  if (distinct.size() != 4) throw std::invalid_argument("wide edge needs four distinct marks");
  auto [u, v] = uv_quotients(s, out_top, out_bot, in_top, in_bot);
  Poly x1 = Poly::x(out_top), x2 = Poly::x(out_bot), x3 = Poly::x(in_top), x4 = Poly::x(in_bot);
  std::vector<KoszulRow> rows{{u, x1 + x2 - x3 - x4}, {v, x1 * x2 - x3 * x4}};
  std::vector<int> marks{out_top, out_bot, in_top, in_bot};
  return koszul_mf(s, rows, -1, marks, marks);
}

MF tensor(const MF& A, const MF& B) {
  if (!(A.spec.N == B.spec.N && A.spec.kind == B.spec.kind))
    throw std::invalid_argument("tensor of factorizations with different potentials");
  MF m;
  m.spec = A.spec;
  m.vars = sorted_union(A.vars, B.vars);
  // marks shared by both factors are glued: they stop being boundary
  std::vector<int> shared;
  std::set_intersection(A.boundary.begin(), A.boundary.end(), B.boundary.begin(), B.boundary.end(),
                        std::back_inserter(shared));
  for (int v : sorted_union(A.boundary, B.boundary))
    if (!std::binary_search(shared.begin(), shared.end(), v)) m.boundary.push_back(v);
  m.w = A.w + B.w;
  for (int v : shared)
    if (m.w.uses_var(v)) throw std::invalid_argument("inconsistent orientation at glued mark " + var_name(v));
  std::size_t na = A.size(), nb = B.size(), n = na * nb;
  m.parity.resize(n);
  m.qdeg.resize(n);
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < na; ++i) {
      m.parity[i + j * na] = (A.parity[i] + B.parity[j]) & 1;
      m.qdeg[i + j * na] = A.qdeg[i] + B.qdeg[j];
    }
  m.d = zero_matrix(n, n);
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < na; ++i) {
      std::size_t col = i + j * na;
      for (std::size_t r = 0; r < na; ++r)
        if (!A.d[r][i].is_zero()) m.d[r + j * na][col] += A.d[r][i];
      Q sign = A.parity[i] ? Q(-1) : Q(1);
      for (std::size_t r = 0; r < nb; ++r)
        if (!B.d[r][j].is_zero()) m.d[i + r * na][col] += B.d[r][j] * sign;
    }
  if (A.koszul && B.koszul) {
    m.koszul = true;
    m.rows = A.rows;
    m.rows.insert(m.rows.end(), B.rows.begin(), B.rows.end());
  }
  return m;
}

MF substitute(const MF& m, const std::map<int, int>& rename) {
  std::map<int, Poly> s;
  for (auto& [from, to] : rename) s[from] = Poly::x(to);
  MF r = m;
  r.d = mat_subs(m.d, s);
  r.w = m.w.subs(s);
  for (auto& row : r.rows) {
    row.a = row.a.subs(s);
    row.b = row.b.subs(s);
  }
  auto remap = [&](std::vector<int> v) {
    for (auto& x : v) {
      auto it = rename.find(x);
      if (it != rename.end()) x = it->second;
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  r.vars = remap(m.vars);
  // a mark that received an identification is now glued
  std::vector<int> b;
  for (int v : m.boundary) {
    bool touched = rename.count(v) > 0;
    for (auto& [from, to] : rename)
      if (to == v) touched = true;
    if (!touched) b.push_back(v);
  }
  r.boundary = b;
  return r;
}

bool mf_is_valid(const MF& m, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  std::size_t n = m.size();
  if (m.d.size() != n) return fail("matrix size");
  PolyMatrix sq = mat_mul(m.d, m.d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Poly want = i == j ? m.w : Poly();
      if (sq[i][j] != want) return fail("d^2 != w at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (!m.d[i][j].is_zero() && m.parity[i] == m.parity[j]) return fail("d is not odd");
    }
  if (m.spec.graded()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Poly& e = m.d[i][j];
        if (e.is_zero()) continue;
        if (!e.is_homogeneous(m.spec.N) || e.qdeg(m.spec.N) + m.qdeg[i] != m.qdeg[j] + m.spec.N + 1)
          return fail("d is not homogeneous of degree N+1");
      }
  }
  return true;
}

Morphism identity_morphism(const MF& m) { return Morphism{identity_matrix(m.size()), 0, 0}; }

Morphism multiplication(const MF& m, const Poly& p) {
  int deg = p.is_zero() ? 0 : top_qdeg(p, m.spec.N);
  return Morphism{mat_scale(identity_matrix(m.size()), p), 0, deg};
}

Morphism compose(const Morphism& g, const Morphism& f) {
  return Morphism{mat_mul(g.m, f.m), (g.parity + f.parity) & 1, g.qdeg + f.qdeg};
}

Morphism operator+(const Morphism& f, const Morphism& g) {
  return Morphism{mat_add(f.m, g.m), f.parity, f.qdeg};
}

Morphism operator-(const Morphism& f, const Morphism& g) {
  return Morphism{mat_sub(f.m, g.m), f.parity, f.qdeg};
}

Morphism operator*(const Poly& p, const Morphism& f) {
  // the q-degree is left to the caller, which knows N
  return Morphism{mat_scale(f.m, p), f.parity, f.qdeg};
}

bool is_chain_map(const MF& X, const MF& Y, const Morphism& f) {
  PolyMatrix l = mat_mul(Y.d, f.m), r = mat_mul(f.m, X.d);
  if (f.parity) r = mat_scale(r, Poly(-1));
  return l == r;
}

bool is_homogeneous_morphism(const MF& X, const MF& Y, const Morphism& f) {
  int N = X.spec.N;
  for (std::size_t i = 0; i < Y.size(); ++i)
    for (std::size_t j = 0; j < X.size(); ++j) {
      const Poly& e = f.m[i][j];
      if (e.is_zero()) continue;
      if ((Y.parity[i] + X.parity[j] + f.parity) & 1) return false;
      if (!e.is_homogeneous(N) || e.qdeg(N) + Y.qdeg[i] != X.qdeg[j] + f.qdeg) return false;
    }
  return true;
}

Morphism tensor_morphism(const MF& fsrc, const Morphism& f, const MF& gsrc, const Morphism& g,
                         const MF& ftgt, const MF& gtgt) {
  std::size_t na = fsrc.size(), nb = gsrc.size(), ma = ftgt.size(), mb = gtgt.size();
  Morphism r;
  r.parity = (f.parity + g.parity) & 1;
  r.qdeg = f.qdeg + g.qdeg;
  r.m = zero_matrix(ma * mb, na * nb);
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < na; ++i) {
      Q sign = (g.parity && fsrc.parity[i]) ? Q(-1) : Q(1);
      for (std::size_t bj = 0; bj < mb; ++bj) {
        if (g.m[bj][j].is_zero()) continue;
        Poly gs = g.m[bj][j] * sign;
        for (std::size_t ai = 0; ai < ma; ++ai)
          if (!f.m[ai][i].is_zero()) r.m[ai + bj * ma][i + j * na] += f.m[ai][i] * gs;
      }
    }
  return r;
}

Exclusion exclude_variable(const MF& m, int x) {
  if (!m.is_internal(x)) throw std::invalid_argument("cannot exclude boundary mark " + var_name(x));
  if (!m.koszul) throw std::invalid_argument("exclusion needs a Koszul presentation");
  Exclusion e;
  e.var = x;
  e.full = m;
  if (m.w.uses_var(x)) return e;
  // pick the eligible row of smallest degree in x
  // ties are broken by the number of terms, so plain arcs win over wide rows
  int best = -1, best_deg = 1 << 30;
  std::size_t best_size = 0;
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    const Poly& b = m.rows[i].b;
    int dg = b.degree_in(x);
    if (dg == 0) continue;
    Poly lead = b.coeffs_in(x)[dg];
    if (!lead.is_constant() || lead.is_zero()) continue;
    if (dg < best_deg || (dg == best_deg && b.size() < best_size)) {
      best = int(i);
      best_deg = dg;
      best_size = b.size();
    }
  }
  if (best < 0) return e;
  e.applied = true;
  e.row = best;
  e.degree = best_deg;
  const Poly& b = m.rows[best].b;
  e.lambda = b.coeffs_in(x)[best_deg].constant_term();
  e.beta = b * Q(1 / e.lambda);
  const int k = int(m.rows.size()), mdeg = best_deg, i = best;
  const std::size_t bit = std::size_t(1) << i;
  // reduced generators (T', s): T a full subset without row i
  std::vector<std::size_t> fullsets;
  for (std::size_t S = 0; S < m.size(); ++S)
    if (!(S & bit)) fullsets.push_back(S);
  std::vector<int> full_to_reduced_base(m.size(), -1);
  for (std::size_t t = 0; t < fullsets.size(); ++t) full_to_reduced_base[fullsets[t]] = int(t) * mdeg;
  std::size_t nr = fullsets.size() * mdeg;
  MF& r = e.reduced;
  r.spec = m.spec;
  r.w = m.w;
  for (int v : m.vars)
    if (v != x) r.vars.push_back(v);
  r.boundary = m.boundary;
  r.parity.resize(nr);
  r.qdeg.resize(nr);
  e.reduced_to_full.resize(nr);
  e.reduced_power.resize(nr);
  for (std::size_t t = 0; t < fullsets.size(); ++t)
    for (int s = 0; s < mdeg; ++s) {
      std::size_t g = t * mdeg + s;
      r.parity[g] = m.parity[fullsets[t]];
      r.qdeg[g] = m.qdeg[fullsets[t]] + 2 * s;
      e.reduced_to_full[g] = int(fullsets[t]);
      e.reduced_power[g] = s;
    }
  r.d = zero_matrix(nr, nr);
  e.iota = zero_matrix(m.size(), nr);
  Q neg_inv_lambda = -1 / e.lambda;
  for (std::size_t g = 0; g < nr; ++g) {
    std::size_t S = e.reduced_to_full[g];
    int s = e.reduced_power[g];
    Poly xs = Poly::monomial(Mono::var(x, s), 1);
    e.iota[S][g] = xs;
    for (std::size_t T : fullsets) {
      const Poly& entry = m.d[T][S];
      if (entry.is_zero()) continue;
      Poly quo, rem;
      divide_by_monic(entry * xs, e.beta, x, quo, rem);
      auto cs = rem.coeffs_in(x);
      for (int t = 0; t < int(cs.size()) && t < mdeg; ++t)
        if (!cs[t].is_zero()) r.d[full_to_reduced_base[T] + t][g] += cs[t];
      if (!quo.is_zero()) {
        int below = std::popcount(T & (bit - 1));
        Q sign = (below & 1) ? -neg_inv_lambda : neg_inv_lambda;
        e.iota[T | bit][g] += quo * sign;
      }
    }
  }
  if (mdeg == 1) {
    // still Koszul: substitute the root into the remaining rows
    Poly quo, rem;
    divide_by_monic(Poly::x(x), e.beta, x, quo, rem);
    r.koszul = true;
    for (int j = 0; j < k; ++j)
      if (j != i) r.rows.push_back({m.rows[j].a.subs(x, rem), m.rows[j].b.subs(x, rem)});
  }
  return e;
}

PolyMatrix apply_pi(const Exclusion& e, const PolyMatrix& rows_full) {
  if (!e.applied) return rows_full;
  std::size_t nr = e.reduced.size();
  std::size_t cols = rows_full.empty() ? 0 : rows_full[0].size();
  PolyMatrix out = zero_matrix(nr, cols);
  const std::size_t bit = std::size_t(1) << e.row;
  std::vector<int> base(e.full.size(), -1);
  for (std::size_t g = 0; g < nr; ++g)
    if (e.reduced_power[g] == 0) base[e.reduced_to_full[g]] = int(g);
  for (std::size_t T = 0; T < e.full.size(); ++T) {
    if (T & bit) continue;
    for (std::size_t c = 0; c < cols; ++c) {
      const Poly& p = rows_full[T][c];
      if (p.is_zero()) continue;
      Poly quo, rem;
      divide_by_monic(p, e.beta, e.var, quo, rem);
      auto cs = rem.coeffs_in(e.var);
      for (int t = 0; t < int(cs.size()) && t < e.degree; ++t)
        if (!cs[t].is_zero()) out[base[T] + t][c] += cs[t];
    }
  }
  return out;
}

PolyMatrix ExclusionChain::iota() const {
  PolyMatrix r = identity_matrix(original.size());
  for (auto& s : steps) r = mat_mul(r, s.iota);
  return r;
}

PolyMatrix ExclusionChain::pi(const PolyMatrix& rows_original) const {
  PolyMatrix r = rows_original;
  for (auto& s : steps) r = apply_pi(s, r);
  return r;
}

ExclusionChain exclude_marks(const MF& m, const std::vector<int>& marks) {
  ExclusionChain c;
  c.original = m;
  for (int x : marks) {
    Exclusion e = exclude_variable(c.result(), x);
    if (!e.applied) throw std::runtime_error("no eligible row to exclude " + var_name(x));
    c.steps.push_back(std::move(e));
  }
  return c;
}

ExclusionChain exclude_all_linear(const MF& m) {
  ExclusionChain c;
  c.original = m;
  for (bool progress = true; progress;) {
    progress = false;
    const MF& cur = c.result();
    if (!cur.koszul) break;
    for (int v : cur.vars) {
      if (!cur.is_internal(v)) continue;
      bool linear = false;
      for (auto& r : cur.rows) {
        if (r.b.degree_in(v) != 1) continue;
        Poly lead = r.b.coeffs_in(v)[1];
        if (lead.is_constant() && !lead.is_zero()) linear = true;
      }
      if (!linear) continue;
      Exclusion e = exclude_variable(cur, v);
      if (e.applied && e.degree == 1) {
        c.steps.push_back(std::move(e));
        progress = true;
        break;
      }
    }
  }
  return c;
}

Morphism transport(const ExclusionChain& A, const ExclusionChain& B, const Morphism& f) {
  return Morphism{B.pi(mat_mul(f.m, A.iota())), f.parity, f.qdeg};
}

}  // namespace kr
