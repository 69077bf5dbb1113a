#include "kr/morphisms.hpp"

#include <bit>
#include <stdexcept>

namespace kr {

namespace {

int wedge_sign_left(std::size_t S, int i) {  // e_i ^ e_S
  return (std::popcount(S & ((std::size_t(1) << i) - 1)) & 1) ? -1 : 1;
}

// Matrix of the exterior-algebra automorphism e_l -> sum_k M[k][l] e_k.
PolyMatrix exterior_power(const PolyMatrix& M) {
  int k = int(M.size());
  std::size_t n = std::size_t(1) << k;
  PolyMatrix out = zero_matrix(n, n);
  for (std::size_t S = 0; S < n; ++S) {
    std::map<std::size_t, Poly> cur{{0, Poly(1)}};
    for (int l = 0; l < k; ++l) {
      if (!(S >> l & 1)) continue;
      std::map<std::size_t, Poly> next;
      for (auto& [T, c] : cur)
        for (int r = 0; r < k; ++r) {
          if (M[r][l].is_zero() || (T >> r & 1)) continue;
          // e_T ^ e_r : move e_r left past the larger members of T
          int larger = std::popcount(T >> (r + 1));
          Poly term = c * M[r][l];
          if (larger & 1) term = -term;
          next[T | (std::size_t(1) << r)] += term;
        }
      cur.swap(next);
    }
    for (auto& [T, c] : cur)
      if (!c.is_zero()) out[T][S] = c;
  }
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(what);
}

}  // namespace

MF arcs_mf(const PotentialSpec& s, const LocalMarks& m) {
  return tensor(arc_mf(s, m.top_in, m.top_out), arc_mf(s, m.bot_in, m.bot_out));
}

MF wide_mf(const PotentialSpec& s, const LocalMarks& m) {
  return wide_edge_mf(s, m.top_out, m.bot_out, m.top_in, m.bot_in);
}

MF crossed_arcs_mf(const PotentialSpec& s, const LocalMarks& m) {
  return tensor(arc_mf(s, m.bot_in, m.top_out), arc_mf(s, m.top_in, m.bot_out));
}

KoszulIso row_change(const MF& src, const PolyMatrix& M, const PolyMatrix& Minv) {
  if (!src.koszul) throw std::invalid_argument("row change needs a Koszul factorization");
  std::size_t k = src.rows.size();
  require(mat_mul(M, Minv) == identity_matrix(k), "row change: Minv is not the inverse of M");
  std::vector<KoszulRow> rows(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      rows[i].a += M[i][j] * src.rows[j].a;
      rows[i].b += Minv[j][i] * src.rows[j].b;  // (M^{-T} b)_i
    }
  KoszulIso out;
  out.target = koszul_mf(src.spec, rows, src.qdeg[0], src.vars, src.boundary);
  out.forward = Morphism{exterior_power(M), 0, 0};
  out.backward = Morphism{exterior_power(Minv), 0, 0};
  require(is_chain_map(src, out.target, out.forward), "row change is not a chain map");
  require(is_chain_map(out.target, src, out.backward), "row change inverse is not a chain map");
  return out;
}

KoszulIso wedge_shear(const MF& src, int i, int j, const Poly& lambda) {
  if (!src.koszul) throw std::invalid_argument("shear needs a Koszul factorization");
  std::vector<KoszulRow> rows = src.rows;
  rows[i].a += lambda * src.rows[j].b;
  rows[j].a -= lambda * src.rows[i].b;
  KoszulIso out;
  out.target = koszul_mf(src.spec, rows, src.qdeg[0], src.vars, src.boundary);
  std::size_t n = src.size();
  out.forward = Morphism{identity_matrix(n), 0, 0};
  out.backward = Morphism{identity_matrix(n), 0, 0};
  const std::size_t bi = std::size_t(1) << i, bj = std::size_t(1) << j;
  for (std::size_t S = 0; S < n; ++S) {
    if ((S & bi) || (S & bj)) continue;
    int sg = wedge_sign_left(S, j) * wedge_sign_left(S | bj, i);
    Poly t = lambda * Q(sg);
    out.forward.m[S | bi | bj][S] += t;
    out.backward.m[S | bi | bj][S] -= t;
  }
  require(is_chain_map(src, out.target, out.forward), "shear is not a chain map");
  require(is_chain_map(out.target, src, out.backward), "shear inverse is not a chain map");
  return out;
}

namespace {

// Saddle between arcs (q1 -> top_out, p -> bot_out) and the wide edge; the
// composite in either order is multiplication by (x_top_out - x_p).
SaddlePair saddle(const PotentialSpec& s, const LocalMarks& m, int q1, int p) {
  SaddlePair out;
  out.arcs = tensor(arc_mf(s, q1, m.top_out), arc_mf(s, p, m.bot_out));
  out.wide = wide_mf(s, m);
  Poly xp = Poly::x(p);
  Poly c = Poly::x(m.top_out) - xp;
  // wide: second b-entry becomes (x_top_out - p)(x_bot_out - p)
  KoszulIso W = row_change(out.wide, {{Poly(1), xp}, {Poly(), Poly(1)}}, {{Poly(1), -xp}, {Poly(), Poly(1)}});
  // arcs: first b-entry becomes the sum of both
  KoszulIso A = row_change(out.arcs, {{Poly(1), Poly()}, {Poly(-1), Poly(1)}},
                           {{Poly(1), Poly()}, {Poly(1), Poly(1)}});
  require(A.target.rows[0].b == W.target.rows[0].b, "saddle: first rows differ");
  Poly lambda = divide_exact(W.target.rows[0].a - A.target.rows[0].a, A.target.rows[1].b);
  KoszulIso S = wedge_shear(A.target, 0, 1, lambda);
  const auto& ra = S.target.rows;
  const auto& rw = W.target.rows;
  require(ra[0].a == rw[0].a && ra[0].b == rw[0].b, "saddle: shear did not align first rows");
  require(ra[1].a == rw[1].a * c && rw[1].b == ra[1].b * c, "saddle: second rows not related by c");
  std::size_t n = 4;
  Morphism F{zero_matrix(n, n), 0, 1}, G{zero_matrix(n, n), 0, 1};
  for (std::size_t T = 0; T < n; ++T) {
    bool second = T & 2;
    F.m[T][T] = second ? Poly(1) : c;
    G.m[T][T] = second ? c : Poly(1);
  }
  require(is_chain_map(S.target, W.target, F), "saddle: F is not a chain map");
  require(is_chain_map(W.target, S.target, G), "saddle: G is not a chain map");
  out.zero = compose(W.backward, compose(F, compose(S.forward, A.forward)));
  out.one = compose(A.backward, compose(S.backward, compose(G, W.forward)));
  out.zero.qdeg = out.one.qdeg = 1;
  require(is_chain_map(out.arcs, out.wide, out.zero), "saddle 0-map is not a chain map");
  require(is_chain_map(out.wide, out.arcs, out.one), "saddle 1-map is not a chain map");
  return out;
}

}  // namespace

SaddlePair chi_maps(const PotentialSpec& s, const LocalMarks& m) { return saddle(s, m, m.top_in, m.bot_in); }

SaddlePair xi_maps(const PotentialSpec& s, const LocalMarks& m) { return saddle(s, m, m.bot_in, m.top_in); }

namespace {

bool same_mf(const MF& a, const MF& b) { return a.d == b.d && a.qdeg == b.qdeg && a.parity == b.parity; }

Morphism left_map(const MF& lsrc, const Morphism& f, const MF& ltgt, const MF& right) {
  return tensor_morphism(lsrc, f, right, identity_morphism(right), ltgt, right);
}

Morphism right_map(const MF& left, const MF& rsrc, const Morphism& g, const MF& rtgt) {
  return tensor_morphism(left, identity_morphism(left), rsrc, g, left, rtgt);
}

}  // namespace

DoubleEdgeModel build_double_edge_model(const PotentialSpec& s) {
  DoubleEdgeModel M;
  M.spec = s;
  LocalMarks L{3, 4, 5, 6}, R{5, 6, 1, 2}, whole{3, 4, 1, 2};
  SaddlePair chiL = chi_maps(s, L), chiR = chi_maps(s, R), xiR = xi_maps(s, R);
  const MF &wL = chiL.wide, &aL = chiL.arcs, &wR = chiR.wide, &aR = chiR.arcs, &cR = xiR.arcs;
  MF f11 = tensor(wL, wR), f10 = tensor(wL, aR), f01 = tensor(aL, wR), f00 = tensor(aL, aR), fx = tensor(wL, cR);
  M.g11 = exclude_marks(f11, {5, 6});
  M.g10 = exclude_marks(f10, {5, 6});
  M.g01 = exclude_marks(f01, {5, 6});
  M.g00 = exclude_marks(f00, {5, 6});
  M.gcross = exclude_marks(fx, {5, 6});
  M.single = wide_mf(s, whole);
  M.arcs = arcs_mf(s, whole);
  require(same_mf(M.g10.result(), M.single), "reduced left-wide resolution differs from the wide edge");
  require(same_mf(M.g01.result(), M.single), "reduced right-wide resolution differs from the wide edge");
  require(same_mf(M.gcross.result(), M.single), "reduced crossed resolution differs from the wide edge");
  require(same_mf(M.g00.result(), M.arcs), "reduced arc resolution differs from the arcs");

  const MF& red = M.g11.result();
  M.m5 = transport(M.g11, M.g11, multiplication(f11, Poly::x(5)));
  M.m6 = transport(M.g11, M.g11, multiplication(f11, Poly::x(6)));

  M.chi_r0 = transport(M.g10, M.g11, right_map(wL, aR, chiR.zero, wR));
  M.chi_r1 = transport(M.g11, M.g10, right_map(wL, wR, chiR.one, aR));
  M.chi_r0_00_01 = transport(M.g00, M.g01, right_map(aL, aR, chiR.zero, wR));
  M.chi_r1_01_00 = transport(M.g01, M.g00, right_map(aL, wR, chiR.one, aR));
  M.chi_l0 = transport(M.g01, M.g11, left_map(aL, chiL.zero, wL, wR));
  M.chi_l1 = transport(M.g11, M.g01, left_map(wL, chiL.one, aL, wR));
  M.chi_l0_00_10 = transport(M.g00, M.g10, left_map(aL, chiL.zero, wL, aR));
  M.chi_l1_10_00 = transport(M.g10, M.g00, left_map(wL, chiL.one, aL, aR));
  M.xi_r0 = transport(M.gcross, M.g11, right_map(wL, cR, xiR.zero, wR));
  M.xi_r1 = transport(M.g11, M.gcross, right_map(wL, wR, xiR.one, cR));
  for (Morphism* f : {&M.chi_r0, &M.chi_r1, &M.chi_r0_00_01, &M.chi_r1_01_00, &M.chi_l0, &M.chi_l1,
                      &M.chi_l0_00_10, &M.chi_l1_10_00, &M.xi_r0, &M.xi_r1})
    f->qdeg = 1;
  M.m5.qdeg = M.m6.qdeg = 2;

  auto Js = chain_maps_mod_homotopy(M.single, red, 0, -1);
  auto Ps = chain_maps_mod_homotopy(red, M.single, 0, -1);
  if (Js.size() != 1 || Ps.size() != 1)
    throw std::runtime_error("inclusion/projection spaces are not one-dimensional (" + std::to_string(Js.size()) +
                             ", " + std::to_string(Ps.size()) + ")");
  M.J = Js[0];
  M.P = Ps[0];
  Morphism pmj = compose(M.P, compose(M.m5, M.J));
  auto sc = homotopy_scalar(M.single, M.single, pmj, identity_morphism(M.single));
  if (!sc || *sc == 0) throw std::runtime_error("P m(x5) J is not a nonzero multiple of the identity");
  M.P = Poly(Q(1) / *sc) * M.P;
  return M;
}

}  // namespace kr
