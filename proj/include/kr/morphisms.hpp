#pragma once
// The saddle maps between two parallel arcs, a wide edge and a virtual
// crossing, plus the inclusion/projection pair of the double-wide-edge
// decomposition.

#include "kr/homotopy.hpp"
#include "kr/mf.hpp"

namespace kr {

struct LocalMarks {
  int top_in = 3, bot_in = 4, top_out = 1, bot_out = 2;
};

// arcs top_in -> top_out, bot_in -> bot_out
MF arcs_mf(const PotentialSpec& s, const LocalMarks& m = {});
MF wide_mf(const PotentialSpec& s, const LocalMarks& m = {});
// arcs bot_in -> top_out, top_in -> bot_out (virtual crossing)
MF crossed_arcs_mf(const PotentialSpec& s, const LocalMarks& m = {});

// Isomorphism induced by the algebra automorphism of the exterior algebra
// sending e_l to sum_k M[k][l] e_k. The target has rows a' = M a and
// b' = M^{-T} b; Minv must be the polynomial inverse of M.
struct KoszulIso {
  MF target;
  Morphism forward;   // source -> target
  Morphism backward;  // target -> source
};
KoszulIso row_change(const MF& src, const PolyMatrix& M, const PolyMatrix& Minv);
// 1 + lambda e_i e_j: a_i += lambda b_j, a_j -= lambda b_i
KoszulIso wedge_shear(const MF& src, int i, int j, const Poly& lambda);

struct SaddlePair {
  MF arcs;       // source of the 0-map
  MF wide;
  Morphism zero;  // arcs -> wide
  Morphism one;   // wide -> arcs
};
// chi^0, chi^1 with chi^1 chi^0 = (x_out_top - x_in_bot) id
SaddlePair chi_maps(const PotentialSpec& s, const LocalMarks& m = {});
// xi^0 (crossed arcs -> wide), xi^1 with xi^1 xi^0 = (x_out_top - x_in_top) id
SaddlePair xi_maps(const PotentialSpec& s, const LocalMarks& m = {});

// Everything living on the two-crossing tangle with inputs x3, x4, outputs
// x1, x2 and middle marks x5 (top) and x6 (bottom). Every resolution is
// reduced to boundary variables; maps are transported accordingly.
struct DoubleEdgeModel {
  PotentialSpec spec;
  ExclusionChain g11, g10, g01, g00, gcross;  // gcross: left wide + virtual crossing
  MF single;                                   // one wide edge on x1..x4
  MF arcs;                                     // two arcs on x1..x4
  Morphism J, P;                               // single -> g11 and g11 -> single, degree -1
  Morphism m5, m6;                             // multiplication on the reduced g11
  // right saddle maps: g10 <-> g11, g00 <-> g01
  Morphism chi_r0, chi_r1, chi_r0_00_01, chi_r1_01_00;
  // left saddle maps: g01 <-> g11, g00 <-> g10
  Morphism chi_l0, chi_l1, chi_l0_00_10, chi_l1_10_00;
  Morphism xi_r0, xi_r1;                       // gcross <-> g11
};

// Builds the model; J and P are found by the chain-map solver and scaled so
// that P m(x5) J ~ id. Throws if the spaces are not one-dimensional.
DoubleEdgeModel build_double_edge_model(const PotentialSpec& s);

}  // namespace kr
