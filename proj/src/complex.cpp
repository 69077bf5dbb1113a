#include "kr/complex.hpp"

#include <algorithm>
#include <map>

namespace kr {

std::size_t ComplexOfMF::total_generators() const {
  std::size_t n = 0;
  for (const auto& deg : objects)
    for (const auto& s : deg) n += s.mf.size();
  return n;
}

const std::vector<Summand>& ComplexOfMF::at(int h) const {
  static const std::vector<Summand> empty;
  if (h < lo || h > hi()) return empty;
  return objects[h - lo];
}

bool same_mf(const MF& x, const MF& y) {
  return x.vars == y.vars && x.parity == y.parity && x.qdeg == y.qdeg && x.d == y.d && x.w == y.w;
}

namespace {

Morphism negated(const Morphism& f) { return Poly(-1) * f; }

MorphismMatrix empty_matrix(std::size_t rows, std::size_t cols) {
  return MorphismMatrix(rows, std::vector<std::optional<Morphism>>(cols));
}

void accumulate(std::optional<Morphism>& acc, const Morphism& f) {
  if (!acc) {
    acc = f;
  } else {
    *acc = *acc + f;
  }
}

// composite entries d_{h+1} d_h
std::vector<std::vector<std::optional<Morphism>>> square(const ComplexOfMF& c, int i) {
  const auto& d0 = c.diff[i];
  const auto& d1 = c.diff[i + 1];
  const std::size_t rows = c.objects[i + 2].size(), cols = c.objects[i].size();
  auto out = empty_matrix(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < c.objects[i + 1].size(); ++k)
        if (d1[r][k] && d0[k][j]) accumulate(out[r][j], compose(*d1[r][k], *d0[k][j]));
  return out;
}

}  // namespace

bool differentials_valid(const ComplexOfMF& c, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (c.diff.size() != c.objects.size()) return fail("differential count");
  for (std::size_t i = 0; i < c.diff.size(); ++i) {
    const std::size_t rows = i + 1 < c.objects.size() ? c.objects[i + 1].size() : 0;
    if (c.diff[i].size() != rows) return fail("differential rows");
    for (std::size_t r = 0; r < rows; ++r) {
      if (c.diff[i][r].size() != c.objects[i].size()) return fail("differential columns");
      for (std::size_t j = 0; j < c.objects[i].size(); ++j) {
        const auto& f = c.diff[i][r][j];
        if (!f) continue;
        const Summand& X = c.objects[i][j];
        const Summand& Y = c.objects[i + 1][r];
        if (f->parity != 0) return fail("odd differential entry");
        if (!is_chain_map(X.mf, Y.mf, *f)) return fail("entry is not a chain map: " + Y.label + " <- " + X.label);
        if (c.spec.graded()) {
          if (f->qdeg != X.shift - Y.shift) return fail("entry degree does not match shifts: " + Y.label + " <- " + X.label);
          if (!is_homogeneous_morphism(X.mf, Y.mf, *f)) return fail("inhomogeneous entry");
        }
      }
    }
  }
  return true;
}

bool d_squared_exactly_zero(const ComplexOfMF& c) {
  for (int i = 0; i + 2 < int(c.objects.size()); ++i)
    for (const auto& row : square(c, i))
      for (const auto& e : row)
        if (e && !mat_is_zero(e->m)) return false;
  return true;
}

bool d_squared_null_homotopic(const ComplexOfMF& c) {
  for (int i = 0; i + 2 < int(c.objects.size()); ++i) {
    auto sq = square(c, i);
    for (std::size_t r = 0; r < sq.size(); ++r)
      for (std::size_t j = 0; j < sq[r].size(); ++j) {
        const auto& e = sq[r][j];
        if (!e || mat_is_zero(e->m)) continue;
        if (!null_homotopy(c.objects[i][j].mf, c.objects[i + 2][r].mf, *e)) return false;
      }
  }
  return true;
}

int braid_top_mark(int slice, int n) {
  if (slice == 0) return 3;
  if (slice == n) return 1;
  return 5 + 2 * (slice - 1);
}

int braid_bot_mark(int slice, int n) {
  if (slice == 0) return 4;
  if (slice == n) return 2;
  return 6 + 2 * (slice - 1);
}

ComplexOfMF crossing_complex(const PotentialSpec& s, int sign, const LocalMarks& m) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("crossing sign must be +1 or -1");
  const int N = s.N;
  SaddlePair sp = chi_maps(s, m);
  ComplexOfMF c;
  c.spec = s;
  if (sign > 0) {
    c.lo = -1;
    c.objects = {{Summand{sp.wide, N, "1"}}, {Summand{sp.arcs, N - 1, "0"}}};
    c.diff = {MorphismMatrix{{sp.one}}, MorphismMatrix{}};
  } else {
    c.lo = 0;
    c.objects = {{Summand{sp.arcs, 1 - N, "0"}}, {Summand{sp.wide, -N, "1"}}};
    c.diff = {MorphismMatrix{{sp.zero}}, MorphismMatrix{}};
  }
  return c;
}

ComplexOfMF braid_complex(const PotentialSpec& s, int n, std::size_t guard) {
  if (n == 0) throw std::invalid_argument("braid word must be nonzero");
  const int sign = n > 0 ? 1 : -1;
  const int len = std::abs(n);
  if (len > 10) throw ResourceGuardError("braid complex beyond the size guard");
  std::size_t gens = 1;
  for (int i = 0; i < len; ++i) gens *= 8;
  if (gens > guard) throw ResourceGuardError("braid complex needs " + std::to_string(gens) +
                                             " generators, guard is " + std::to_string(guard));
  const int N = s.N;
  std::vector<SaddlePair> local;
  for (int i = 0; i < len; ++i) {
    LocalMarks m;
    m.top_in = braid_top_mark(i, len);
    m.bot_in = braid_bot_mark(i, len);
    m.top_out = braid_top_mark(i + 1, len);
    m.bot_out = braid_bot_mark(i + 1, len);
    local.push_back(chi_maps(s, m));
  }
  // per crossing: resolution 1 is the wide edge
  auto local_h = [&](int r) { return sign > 0 ? (r ? -1 : 0) : (r ? 1 : 0); };
  auto local_shift = [&](int r) { return sign > 0 ? (r ? N : N - 1) : (r ? -N : 1 - N); };
  auto factor = [&](int i, int r) -> const MF& { return r ? local[i].wide : local[i].arcs; };

  ComplexOfMF c;
  c.spec = s;
  c.lo = sign > 0 ? -len : 0;
  c.objects.assign(len + 1, {});
  std::map<unsigned, std::pair<int, int>> where;  // resolution -> (degree index, position)
  for (unsigned v = 0; v < (1u << len); ++v) {
    int h = 0, shift = 0;
    std::string label;
    for (int i = 0; i < len; ++i) {
      const int r = (v >> i) & 1;
      h += local_h(r);
      shift += local_shift(r);
      label += char('0' + r);
    }
    MF mf = factor(0, v & 1);
    for (int i = 1; i < len; ++i) mf = tensor(mf, factor(i, (v >> i) & 1));
    auto& deg = c.objects[h - c.lo];
    where[v] = {h - c.lo, int(deg.size())};
    deg.push_back(Summand{std::move(mf), shift, label});
  }
  c.diff.resize(len + 1);
  for (int i = 0; i <= len; ++i) {
    const std::size_t rows = i + 1 <= len ? c.objects[i + 1].size() : 0;
    c.diff[i] = empty_matrix(rows, c.objects[i].size());
  }
  for (unsigned v = 0; v < (1u << len); ++v)
    for (int i = 0; i < len; ++i) {
      const int r = (v >> i) & 1;
      // positive crossings go 1 -> 0, negative 0 -> 1
      if ((sign > 0) != (r == 1)) continue;
      const unsigned w = v ^ (1u << i);
      int before = 0;
      for (int j = 0; j < i; ++j) before += local_h((v >> j) & 1);
      auto piece = [&](int j, bool tgt) -> const MF& { return factor(j, ((tgt ? w : v) >> j) & 1); };
      auto map_at = [&](int j) -> Morphism {
        if (j != i) return identity_morphism(piece(j, false));
        return sign > 0 ? local[j].one : local[j].zero;
      };
      MF src = piece(0, false), tgt = piece(0, true);
      Morphism f = map_at(0);
      for (int j = 1; j < len; ++j) {
        const MF& ps = piece(j, false);
        const MF& pt = piece(j, true);
        f = tensor_morphism(src, f, ps, map_at(j), tgt, pt);
        src = tensor(src, ps);
        tgt = tensor(tgt, pt);
      }
      f.qdeg = 1;
      if (before % 2 != 0) f = negated(f);
      auto [di, si] = where[v];
      auto [dt, ti] = where[w];
      (void)dt;
      c.diff[di][ti][si] = f;
    }
  return c;
}

ComplexOfMF close_braid(const ComplexOfMF& c) {
  const std::map<int, int> rename{{1, 3}, {2, 4}};
  const std::map<int, Poly> subs{{1, Poly::x(3)}, {2, Poly::x(4)}};
  ComplexOfMF out = c;
  for (auto& deg : out.objects)
    for (auto& s : deg) s.mf = substitute(s.mf, rename);
  for (auto& m : out.diff)
    for (auto& row : m)
      for (auto& e : row)
        if (e) e->m = mat_subs(e->m, subs);
  return out;
}

ComplexOfMF simplified_b_complex(const PotentialSpec& s, int k) {
  if (k == 0) throw std::invalid_argument("simplified complex needs k != 0");
  const int N = s.N;
  const int K = std::abs(k);
  SaddlePair sp = chi_maps(s);
  const Morphism m13 = multiplication(sp.wide, Poly::x(1) - Poly::x(3));
  const Morphism m14 = multiplication(sp.wide, Poly::x(1) - Poly::x(4));
  ComplexOfMF c;
  c.spec = s;
  c.objects.assign(2 * K + 1, {});
  c.diff.assign(2 * K + 1, {});
  if (k > 0) {
    c.lo = -2 * K;
    for (int l = 2 * K; l >= 1; --l)
      c.objects[2 * K - l] = {Summand{sp.wide, 2 * K * (N - 1) + 2 * l - 1, "wide"}};
    c.objects[2 * K] = {Summand{sp.arcs, 2 * K * (N - 1), "arcs"}};
    for (int i = 0; i < 2 * K - 1; ++i) c.diff[i] = MorphismMatrix{{i % 2 == 0 ? m13 : m14}};
    c.diff[2 * K - 1] = MorphismMatrix{{sp.one}};
  } else {
    c.lo = 0;
    c.objects[0] = {Summand{sp.arcs, -2 * K * (N - 1), "arcs"}};
    for (int l = 1; l <= 2 * K; ++l) c.objects[l] = {Summand{sp.wide, -2 * K * (N - 1) - 2 * l + 1, "wide"}};
    c.diff[0] = MorphismMatrix{{sp.zero}};
    for (int l = 1; l < 2 * K; ++l) c.diff[l] = MorphismMatrix{{l % 2 == 1 ? m13 : m14}};
  }
  c.diff[2 * K] = MorphismMatrix{};
  return c;
}

ComplexOfMF shift_complex(const ComplexOfMF& c, int hshift, int qshift) {
  ComplexOfMF out = c;
  out.lo += hshift;
  for (auto& deg : out.objects)
    for (auto& s : deg) s.shift += qshift;
  return out;
}

namespace {

ComplexOfMF b_zero(const PotentialSpec& s) {
  ComplexOfMF c;
  c.spec = s;
  c.lo = 0;
  c.objects = {{Summand{arcs_mf(s), 0, "arcs"}}};
  c.diff = {MorphismMatrix{}};
  return c;
}

}  // namespace

ChainMapOfMF build_F_k(const PotentialSpec& s, int k, ComplexOfMF* src, ComplexOfMF* tgt) {
  if (k < 1) throw std::invalid_argument("F_k needs k >= 1");
  const ComplexOfMF A = shift_complex(k == 1 ? b_zero(s) : simplified_b_complex(s, k - 1), 0, 2 * (s.N - 1));
  const ComplexOfMF B = simplified_b_complex(s, k);
  ChainMapOfMF f;
  for (int h = A.lo; h <= A.hi(); ++h) {
    const auto& a = A.at(h);
    const auto& b = B.at(h);
    MorphismMatrix m = empty_matrix(b.size(), a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!same_mf(a[j].mf, b[j].mf) || a[j].shift != b[j].shift)
        throw std::logic_error("F_k: objects do not match");
      m[j][j] = identity_morphism(a[j].mf);
    }
    f.push_back(std::move(m));
  }
  if (src) *src = A;
  if (tgt) *tgt = B;
  return f;
}

ComplexOfMF cokernel_F_k(const PotentialSpec& s, int k) {
  ComplexOfMF A, B;
  build_F_k(s, k, &A, &B);
  // F_k is the identity onto degrees >= A.lo; what is left is B below A.lo
  ComplexOfMF c;
  c.spec = s;
  c.lo = B.lo;
  const int top = A.lo - 1;
  for (int h = B.lo; h <= top; ++h) {
    c.objects.push_back(B.at(h));
    c.diff.push_back(h < top ? B.diff[h - B.lo] : MorphismMatrix{});
  }
  return c;
}

ComplexOfMF mapping_cone(const ComplexOfMF& A, const ComplexOfMF& B, const ChainMapOfMF& f) {
  ComplexOfMF c;
  c.spec = A.spec;
  c.lo = std::min(A.lo, B.lo + 1);
  const int hi = std::max(A.hi(), B.hi() + 1);
  for (int j = c.lo; j <= hi; ++j) {
    std::vector<Summand> deg = A.at(j);
    for (const auto& b : B.at(j - 1)) deg.push_back(b);
    c.objects.push_back(std::move(deg));
  }
  for (int j = c.lo; j <= hi; ++j) {
    const auto& a0 = A.at(j);
    const auto& b0 = B.at(j - 1);
    const auto& a1 = A.at(j + 1);
    const auto& b1 = B.at(j);
    MorphismMatrix m = empty_matrix(j < hi ? a1.size() + b1.size() : 0, a0.size() + b0.size());
    if (j < hi) {
      if (!a0.empty() && !a1.empty())
        for (std::size_t r = 0; r < a1.size(); ++r)
          for (std::size_t s = 0; s < a0.size(); ++s) m[r][s] = A.diff[j - A.lo][r][s];
      if (!a0.empty() && !b1.empty() && j - A.lo >= 0 && j - A.lo < int(f.size()))
        for (std::size_t r = 0; r < b1.size(); ++r)
          for (std::size_t s = 0; s < a0.size(); ++s) m[a1.size() + r][s] = f[j - A.lo][r][s];
      if (!b0.empty() && !b1.empty())
        for (std::size_t r = 0; r < b1.size(); ++r)
          for (std::size_t s = 0; s < b0.size(); ++s) {
            const auto& e = B.diff[j - 1 - B.lo][r][s];
            if (e) m[a1.size() + r][a0.size() + s] = negated(*e);
          }
    }
    c.diff.push_back(std::move(m));
  }
  return c;
}

ComplexOfMF cone_of_x1_minus_x3(const PotentialSpec& s) {
  const MF w = wide_mf(s);
  ComplexOfMF A, B;
  A.spec = B.spec = s;
  A.lo = B.lo = 0;
  A.objects = {{Summand{w, 0, "wide"}}};
  B.objects = {{Summand{w, -2, "wide"}}};
  A.diff = B.diff = {MorphismMatrix{}};
  ChainMapOfMF f{MorphismMatrix{{multiplication(w, Poly::x(1) - Poly::x(3))}}};
  return mapping_cone(A, B, f);
}

ComplexOfMF gaussian_eliminate(const ComplexOfMF& input, int* steps) {
  ComplexOfMF c = input;
  int count = 0;
  for (;;) {
    bool found = false;
    for (int i = 0; i < int(c.diff.size()) && !found; ++i) {
      auto& d = c.diff[i];
      for (std::size_t r = 0; r < d.size() && !found; ++r)
        for (std::size_t col = 0; col < d[r].size() && !found; ++col) {
          if (!d[r][col]) continue;
          const Summand& A = c.objects[i][col];
          const Summand& B = c.objects[i + 1][r];
          if (A.shift != B.shift || !same_mf(A.mf, B.mf)) continue;
          auto scalar = homotopy_scalar(A.mf, B.mf, *d[r][col], identity_morphism(A.mf));
          if (!scalar || *scalar == 0) continue;
          found = true;
          const mpq_class inv = 1 / *scalar;
          // epsilon - gamma phi^{-1} delta on the remaining block
          MorphismMatrix nd = empty_matrix(d.size() - 1, d[r].size() - 1);
          for (std::size_t rr = 0, ri = 0; rr < d.size(); ++rr) {
            if (rr == r) continue;
            for (std::size_t cc = 0, ci = 0; cc < d[rr].size(); ++cc) {
              if (cc == col) continue;
              std::optional<Morphism> e = d[rr][cc];
              if (d[rr][col] && d[r][cc]) {
                Morphism corr = compose(*d[rr][col], compose(Poly(Q(inv)) * identity_morphism(A.mf), *d[r][cc]));
                accumulate(e, negated(corr));
              }
              nd[ri][ci] = e;
              ++ci;
            }
            ++ri;
          }
          d = std::move(nd);
          // drop the pivot source from the incoming differential and the
          // pivot target from the outgoing one
          if (i > 0) c.diff[i - 1].erase(c.diff[i - 1].begin() + col);
          for (auto& row : c.diff[i + 1]) row.erase(row.begin() + r);
          c.objects[i].erase(c.objects[i].begin() + col);
          c.objects[i + 1].erase(c.objects[i + 1].begin() + r);
          ++count;
        }
    }
    if (!found) break;
  }
  if (steps) *steps = count;
  return c;
}

BSquaredReduction reduce_b_squared(const DoubleEdgeModel& model) {
  const PotentialSpec& s = model.spec;
  const int N = s.N;
  BSquaredReduction out;
  const MF& g11 = model.g11.result();
  const MF& g10 = model.g10.result();
  const MF& g01 = model.g01.result();
  const MF& g00 = model.g00.result();
  const MF& single = model.single;

  ComplexOfMF& c = out.reduced_braid;
  c.spec = s;
  c.lo = -2;
  c.objects = {{Summand{g11, 2 * N, "G11"}},
               {Summand{g10, 2 * N - 1, "G10"}, Summand{g01, 2 * N - 1, "G01"}},
               {Summand{g00, 2 * N - 2, "G00"}}};
  c.diff = {MorphismMatrix{{negated(model.chi_r1)}, {model.chi_l1}},
            MorphismMatrix{{model.chi_l1_10_00, model.chi_r1_01_00}}, MorphismMatrix{}};
  out.braid_is_complex = differentials_valid(c) && d_squared_null_homotopic(c);

  // (J, xi_r^0): single{q^{2N-1}} + single{q^{2N+1}} -> G11{q^{2N}}, inverse (P; chi_r^1)
  const MF& cross = model.gcross.result();
  auto pj = homotopy_scalar(single, single, compose(model.P, model.J), identity_morphism(single));
  auto px = homotopy_scalar(cross, single, compose(model.P, model.xi_r0), identity_morphism(single));
  auto cx = homotopy_scalar(cross, g10, compose(model.chi_r1, model.xi_r0), identity_morphism(single));
  auto cj = homotopy_scalar(single, g10, compose(model.chi_r1, model.J), identity_morphism(single));
  bool ok = same_mf(cross, single) && same_mf(g10, single) && pj && px && cx && cj && *pj == 0 && *cx == 0 &&
            *px != 0 && *cj != 0;
  if (ok) {
    Morphism back = Poly(Q(1 / *px)) * compose(model.xi_r0, model.P) +
                    Poly(Q(1 / *cj)) * compose(model.J, model.chi_r1);
    back.qdeg = 0;
    ok = homotopic(g11, g11, back, identity_morphism(g11));
  }
  out.replacement_ok = ok;
  if (cj) out.pivot_scalar = *cj;

  ComplexOfMF& r = out.replaced;
  r = c;
  r.objects[0] = {Summand{single, 2 * N - 1, "G'"}, Summand{cross, 2 * N + 1, "G''"}};
  r.diff[0] = MorphismMatrix{{negated(compose(model.chi_r1, model.J)), negated(compose(model.chi_r1, model.xi_r0))},
                             {compose(model.chi_l1, model.J), compose(model.chi_l1, model.xi_r0)}};
  out.eliminated = gaussian_eliminate(r);
  const ComplexOfMF& e = out.eliminated;

  const ComplexOfMF b1 = simplified_b_complex(s, 1);
  bool iso = e.lo == b1.lo && e.objects.size() == b1.objects.size();
  for (std::size_t i = 0; iso && i < e.objects.size(); ++i) {
    iso = e.objects[i].size() == 1 && same_mf(e.objects[i][0].mf, b1.objects[i][0].mf) &&
          e.objects[i][0].shift == b1.objects[i][0].shift;
  }
  if (iso) {
    auto first = homotopy_scalar(e.objects[0][0].mf, e.objects[1][0].mf, *e.diff[0][0][0], *b1.diff[0][0][0]);
    auto last = homotopy_scalar(e.objects[1][0].mf, e.objects[2][0].mf, *e.diff[1][0][0], *b1.diff[1][0][0]);
    if (first) out.first_map_scalar = *first;
    if (last) out.last_map_scalar = *last;
    iso = first && last && *first != 0 && *last != 0;
  }
  out.isomorphic_to_B1 = iso;
  return out;
}

namespace {

PackageCheck check(const std::string& name, bool ok, const std::string& detail = {}) {
  return PackageCheck{name, ok, detail};
}

std::string scalar_text(const std::optional<mpq_class>& c) { return c ? c->get_str() : std::string("none"); }

}  // namespace

std::vector<PackageCheck> saddle_identities(const PotentialSpec& s) {
  std::vector<PackageCheck> out;
  const SaddlePair chi = chi_maps(s), xi = xi_maps(s);
  const Poly x14 = Poly::x(1) - Poly::x(4), x13 = Poly::x(1) - Poly::x(3);
  auto exact = [](const Morphism& f, const MF& m, const Poly& p) {
    return f.m == mat_scale(identity_matrix(m.size()), p);
  };
  out.push_back(check("chi1 chi0 = (x1-x4) id", exact(compose(chi.one, chi.zero), chi.arcs, x14)));
  out.push_back(check("chi0 chi1 = (x1-x4) id", exact(compose(chi.zero, chi.one), chi.wide, x14)));
  out.push_back(check("xi1 xi0 = (x1-x3) id", exact(compose(xi.one, xi.zero), xi.arcs, x13)));
  out.push_back(check("xi0 xi1 = (x1-x3) id", exact(compose(xi.zero, xi.one), xi.wide, x13)));
  bool maps_ok = true;
  for (const SaddlePair* p : {&chi, &xi}) {
    maps_ok = maps_ok && is_chain_map(p->arcs, p->wide, p->zero) && is_chain_map(p->wide, p->arcs, p->one);
    if (s.graded())
      maps_ok = maps_ok && p->zero.qdeg == 1 && p->one.qdeg == 1 &&
                is_homogeneous_morphism(p->arcs, p->wide, p->zero) && is_homogeneous_morphism(p->wide, p->arcs, p->one);
  }
  out.push_back(check("saddle maps are even chain maps of degree 1", maps_ok));
  out.push_back(check("xi1 chi0 ~ 0", null_homotopy(chi.arcs, xi.arcs, compose(xi.one, chi.zero)).has_value()));
  out.push_back(check("chi1 xi0 ~ 0", null_homotopy(xi.arcs, chi.arcs, compose(chi.one, xi.zero)).has_value()));
  return out;
}

std::vector<PackageCheck> homotopy_package(const DoubleEdgeModel& m) {
  std::vector<PackageCheck> out;
  const MF& g11 = m.g11.result();
  const MF& single = m.single;
  const Morphism id1 = identity_morphism(single);
  auto sc = [&](const MF& X, const MF& Y, const Morphism& f, const Morphism& g) {
    return homotopy_scalar(X, Y, f, g);
  };
  auto is = [](const std::optional<mpq_class>& c, long v) { return c && *c == v; };
  auto nonzero = [](const std::optional<mpq_class>& c) { return c && *c != 0; };

  auto pm5j = sc(single, single, compose(m.P, compose(m.m5, m.J)), id1);
  auto pm6j = sc(single, single, compose(m.P, compose(m.m6, m.J)), id1);
  auto pj = sc(single, single, compose(m.P, m.J), id1);
  out.push_back(check("P m(x5) J ~ id", is(pm5j, 1), scalar_text(pm5j)));
  out.push_back(check("P m(x6) J ~ -id", is(pm6j, -1), scalar_text(pm6j)));
  out.push_back(check("P J ~ 0", is(pj, 0), scalar_text(pj)));

  const MF& cross = m.gcross.result();
  auto pchi = sc(m.g10.result(), single, compose(m.P, m.chi_r0), id1);
  auto chij = sc(single, m.g10.result(), compose(m.chi_r1, m.J), id1);
  auto pxi = sc(cross, single, compose(m.P, m.xi_r0), id1);
  auto xij = sc(single, cross, compose(m.xi_r1, m.J), id1);
  out.push_back(check("P chi_r0 ~ c id, c != 0", nonzero(pchi), scalar_text(pchi)));
  out.push_back(check("chi_r1 J ~ c id, c != 0", nonzero(chij), scalar_text(chij)));
  out.push_back(check("P xi_r0 ~ c id, c != 0", nonzero(pxi), scalar_text(pxi)));
  out.push_back(check("xi_r1 J ~ c id, c != 0", nonzero(xij), scalar_text(xij)));

  // the two homotopy-inverse pairs: forward composite diagonal with nonzero
  // scalars, and the normalized reverse composite ~ id on the double edge
  auto pair_check = [&](const std::string& name, const Morphism& in1, const MF& src1, const Morphism& out2) {
    auto a = sc(src1, single, compose(m.P, in1), id1);
    auto b = sc(single, single, compose(out2, m.J), id1);
    auto off1 = null_homotopy(src1, single, compose(out2, in1)).has_value();
    bool ok = nonzero(a) && nonzero(b) && off1 && is(pj, 0);
    if (ok) {
      Morphism back = Poly(Q(1 / *a)) * compose(in1, m.P) + Poly(Q(1 / *b)) * compose(m.J, out2);
      back.qdeg = 0;
      ok = homotopic(g11, g11, back, identity_morphism(g11));
    }
    out.push_back(check(name, ok, "scalars " + scalar_text(a) + ", " + scalar_text(b)));
  };
  pair_check("(chi_r0, J) and (P; xi_r1) are inverse equivalences", m.chi_r0, m.g10.result(), m.xi_r1);
  pair_check("(xi_r0, J) and (P; chi_r1) are inverse equivalences", m.xi_r0, cross, m.chi_r1);

  const Poly x1 = Poly::x(1), x3 = Poly::x(3), x4 = Poly::x(4);
  auto m53 = m.m5 - multiplication(g11, x3);
  auto m54 = m.m5 - multiplication(g11, x4);
  auto c13 = sc(single, single, compose(m.P, compose(m53, m.chi_r0)), multiplication(single, x1 - x3));
  auto c14 = sc(single, single, compose(m.P, compose(m54, m.chi_r0)), multiplication(single, x1 - x4));
  out.push_back(check("P m(x5-x3) chi_r0 ~ c m(x1-x3), c = P chi_r0 scalar", pchi && c13 && *c13 == *pchi,
                      scalar_text(c13)));
  out.push_back(check("P m(x5-x4) chi_r0 ~ c m(x1-x4), c = P chi_r0 scalar", pchi && c14 && *c14 == *pchi,
                      scalar_text(c14)));

  const MF& g01 = m.g01.result();
  Morphism m15 = transport(m.g01, m.g01, multiplication(m.g01.original, x1 - Poly::x(5)));
  out.push_back(check("m(x1-x5) ~ m(x1-x3) on the right-wide resolution",
                      homotopic(g01, g01, m15, multiplication(g01, x1 - x3))));

  auto lr = sc(m.g10.result(), g01, compose(m.chi_l1, m.chi_r0), multiplication(single, x1 - x4));
  auto rl = sc(m.g10.result(), g01, compose(m.chi_r0_00_01, m.chi_l1_10_00), multiplication(single, x1 - x4));
  out.push_back(check("chi_l1 chi_r0 ~ chi_r0 chi_l1 ~ c (x1-x4) id, c != 0", nonzero(lr) && rl && *lr == *rl,
                      scalar_text(lr) + ", " + scalar_text(rl)));
  return out;
}

}  // namespace kr
