#include "kr/homotopy.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

#include "kr/linalg.hpp"

namespace kr {

namespace {

void enum_x(const std::vector<int>& vars, std::size_t pos, int left, Mono cur, std::vector<Mono>& out) {
  if (pos + 1 == vars.size()) {
    cur.e[vars[pos]] = std::uint8_t(left);
    out.push_back(cur);
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur.e[vars[pos]] = std::uint8_t(k);
    enum_x(vars, pos + 1, left - k, cur, out);
  }
}

std::vector<int> ring_vars(const MF& X, const MF& Y) {
  std::vector<int> v = X.vars;
  v.insert(v.end(), Y.vars.begin(), Y.vars.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

using Key = std::tuple<int, int, int, Mono>;  // condition, row, column, monomial

struct Unknown {
  int cond, i, j;
  Mono mono;
};

// ansatz for a matrix X -> Y of the given parity and degree
std::vector<Unknown> matrix_ansatz(const MF& X, const MF& Y, int parity, int qdeg, int cond) {
  std::vector<Unknown> out;
  const int N = X.spec.N;
  bool with_a = X.spec.kind == Variant::Equivariant;
  bool filtered = !X.spec.graded();
  auto vars = ring_vars(X, Y);
  std::map<int, std::vector<Mono>> cache;
  for (std::size_t i = 0; i < Y.size(); ++i)
    for (std::size_t j = 0; j < X.size(); ++j) {
      if ((Y.parity[i] + X.parity[j] + parity) & 1) continue;
      int D = X.qdeg[j] + qdeg - Y.qdeg[i];
      auto it = cache.find(D);
      if (it == cache.end()) it = cache.emplace(D, ansatz_monomials(vars, N, D, with_a, filtered)).first;
      for (auto& m : it->second) out.push_back({cond, int(i), int(j), m});
    }
  return out;
}

void add_poly(std::map<Key, SparseRow>& eqs, int cond, int r, int c, const Poly& p, const Mono& mono,
              const Q& sign, int col) {
  for (auto& [m, coef] : p.terms()) eqs[Key{cond, r, c, m * mono}].emplace_back(col, coef * sign);
}

// Adds the columns of [d, h] for one unknown of h.
void add_commutator(std::map<Key, SparseRow>& eqs, const MF& X, const MF& Y, const Unknown& u, int hparity,
                    int col) {
  for (std::size_t r = 0; r < Y.size(); ++r)
    if (!Y.d[r][u.i].is_zero()) add_poly(eqs, u.cond, int(r), u.j, Y.d[r][u.i], u.mono, Q(1), col);
  Q s = hparity ? Q(1) : Q(-1);
  for (std::size_t c = 0; c < X.size(); ++c)
    if (!X.d[u.j][c].is_zero()) add_poly(eqs, u.cond, u.i, int(c), X.d[u.j][c], u.mono, s, col);
}

Morphism build_matrix(const MF& X, const MF& Y, const std::vector<Unknown>& us, const std::vector<mpq_class>& x,
                      int offset, int parity, int qdeg) {
  Morphism h{zero_matrix(Y.size(), X.size()), parity, qdeg};
  for (std::size_t k = 0; k < us.size(); ++k) {
    const mpq_class& v = x[offset + k];
    if (v != 0) h.m[us[k].i][us[k].j].add_term(us[k].mono, v);
  }
  return h;
}

}  // namespace

std::vector<Mono> ansatz_monomials(const std::vector<int>& vars, int N, int D, bool with_a, bool filtered) {
  std::vector<Mono> out;
  if (D < 0 || (D & 1)) return out;
  for (int m = 0; 2 * N * m <= D; ++m) {
    if (m > 0 && !with_a && !filtered) break;
    int xdeg = (D - 2 * N * m) / 2;
    Mono base;
    if (with_a) base.e[kVarA] = std::uint8_t(m);
    if (vars.empty()) {
      if (xdeg == 0) out.push_back(base);
    } else {
      enum_x(vars, 0, xdeg, base, out);
    }
  }
  return out;
}

bool verifies_homotopy(const MF& X, const MF& Y, const Morphism& f, const Morphism& h) {
  PolyMatrix dh = mat_mul(Y.d, h.m), hd = mat_mul(h.m, X.d);
  PolyMatrix br = h.parity ? mat_add(dh, hd) : mat_sub(dh, hd);
  return br == f.m;
}

std::optional<CombinationSolution> solve_homotopy_conditions(const std::vector<HomotopyCondition>& conds,
                                                            int ncoef) {
  std::vector<std::vector<Unknown>> hs;
  std::map<Key, SparseRow> eqs;
  std::map<Key, mpq_class> rhs;
  int col = ncoef;
  for (std::size_t ci = 0; ci < conds.size(); ++ci) {
    const auto& cd = conds[ci];
    int hpar = (cd.f.parity + 1) & 1;
    int hdeg = cd.f.qdeg - (cd.X->spec.N + 1);
    hs.push_back(matrix_ansatz(*cd.X, *cd.Y, hpar, hdeg, int(ci)));
    for (auto& u : hs.back()) add_commutator(eqs, *cd.X, *cd.Y, u, hpar, col++);
    if (int(cd.g.size()) != ncoef) throw std::invalid_argument("condition arity mismatch");
    for (int k = 0; k < ncoef; ++k)
      for (std::size_t r = 0; r < cd.g[k].m.size(); ++r)
        for (std::size_t c = 0; c < cd.g[k].m[r].size(); ++c)
          add_poly(eqs, int(ci), int(r), int(c), cd.g[k].m[r][c], Mono{}, Q(1), k);
    for (std::size_t r = 0; r < cd.f.m.size(); ++r)
      for (std::size_t c = 0; c < cd.f.m[r].size(); ++c)
        for (auto& [m, coef] : cd.f.m[r][c].terms()) {
          Key k{int(ci), int(r), int(c), m};
          rhs[k] += coef;
          eqs[k];  // make sure the equation exists
        }
  }
  SparseSystem sys(col);
  for (auto& [k, row] : eqs) {
    auto it = rhs.find(k);
    if (!sys.add(row, it == rhs.end() ? mpq_class(0) : it->second)) return std::nullopt;
  }
  auto x = sys.solve();
  if (!x) return std::nullopt;
  CombinationSolution sol;
  sol.c.assign(x->begin(), x->begin() + ncoef);
  int off = ncoef;
  for (std::size_t ci = 0; ci < conds.size(); ++ci) {
    const auto& cd = conds[ci];
    int hpar = (cd.f.parity + 1) & 1;
    int hdeg = cd.f.qdeg - (cd.X->spec.N + 1);
    Morphism h = build_matrix(*cd.X, *cd.Y, hs[ci], *x, off, hpar, hdeg);
    off += int(hs[ci].size());
    Morphism target = cd.f;
    for (int k = 0; k < ncoef; ++k) target = target - Morphism{mat_scale(cd.g[k].m, Poly(sol.c[k])), 0, 0};
    if (!verifies_homotopy(*cd.X, *cd.Y, target, h)) throw std::logic_error("homotopy solver produced a non-solution");
    sol.h.push_back(std::move(h));
  }
  return sol;
}

std::optional<Morphism> null_homotopy(const MF& X, const MF& Y, const Morphism& f) {
  HomotopyCondition c{&X, &Y, f, {}};
  auto s = solve_homotopy_conditions({c}, 0);
  if (!s) return std::nullopt;
  return s->h[0];
}

bool homotopic(const MF& X, const MF& Y, const Morphism& f, const Morphism& g) {
  return null_homotopy(X, Y, f - g).has_value();
}

std::optional<mpq_class> homotopy_scalar(const MF& X, const MF& Y, const Morphism& f, const Morphism& g) {
  HomotopyCondition c{&X, &Y, f, {g}};
  auto s = solve_homotopy_conditions({c}, 1);
  if (!s) return std::nullopt;
  return s->c[0];
}

std::vector<Morphism> chain_maps_mod_homotopy(const MF& X, const MF& Y, int parity, int qdeg) {
  auto fs = matrix_ansatz(X, Y, parity, qdeg, 0);
  std::map<std::tuple<int, int, Mono>, int> coord;
  for (std::size_t k = 0; k < fs.size(); ++k) coord[{fs[k].i, fs[k].j, fs[k].mono}] = int(k);
  // chain condition d_Y f - (-1)^p f d_X = 0, i.e. [d, f] with f's parity
  std::map<Key, SparseRow> eqs;
  for (std::size_t k = 0; k < fs.size(); ++k) add_commutator(eqs, X, Y, fs[k], parity, int(k));
  SparseSystem sys(int(fs.size()));
  for (auto& [k, row] : eqs) sys.add(row);
  auto kernel = sys.kernel();
  // null-homotopic maps
  int hpar = (parity + 1) & 1;
  auto hs = matrix_ansatz(X, Y, hpar, qdeg - (X.spec.N + 1), 0);
  SparseSystem span(int(fs.size()));
  for (std::size_t k = 0; k < hs.size(); ++k) {
    std::map<Key, SparseRow> one;
    add_commutator(one, X, Y, hs[k], hpar, 0);
    SparseRow v;
    for (auto& [key, row] : one) {
      mpq_class s = 0;
      for (auto& e : row) s += e.second;
      if (s == 0) continue;
      auto it = coord.find({std::get<1>(key), std::get<2>(key), std::get<3>(key)});
      if (it == coord.end()) throw std::logic_error("homotopy image outside the chain-map ansatz");
      v.emplace_back(it->second, s);
    }
    span.add(v);
  }
  std::vector<Morphism> out;
  for (auto& kv : kernel) {
    SparseRow v;
    for (std::size_t k = 0; k < kv.size(); ++k)
      if (kv[k] != 0) v.emplace_back(int(k), kv[k]);
    int before = span.rank();
    span.add(v);
    if (span.rank() > before) {
      Morphism f = build_matrix(X, Y, fs, kv, 0, parity, qdeg);
      if (!is_chain_map(X, Y, f)) throw std::logic_error("chain-map solver produced a non-chain map");
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace kr
