#pragma once
// Homology of closed graphs and of closed complexes: catalogued quotient-ring
// answers, a brute-force oracle that works directly with matrix
// factorizations, Poincare data, and exact-triangle bookkeeping.

#include <map>
#include <string>
#include <vector>

#include "kr/complex.hpp"
#include "kr/graded_complex.hpp"
#include "kr/moy.hpp"
#include "kr/twostrand.hpp"

namespace kr {

struct ClosedGraphHomology {
  std::string shape;               // "circle", "circles", "wide cycle", "brute force"
  long rank = 0;
  std::vector<std::string> basis;  // monomials (catalogued shapes only)
  std::vector<int> qdeg;           // q-degree per basis element, or per dimension
  int parity = -1;                 // Z2 degree carrying the homology, -1 if mixed
  bool free_over_a = false;        // certified free over F[a] (equivariant)
};

// Catalogued shapes (disjoint circles, a cycle of j wide edges) come from the
// quotient ring models; any other crossingless closed graph is computed by
// brute force on its factorization. Throws ResourceGuardError past the guard.
ClosedGraphHomology closed_graph_homology(const Diagram& g, const PotentialSpec& s, std::size_t guard = 4096);

// Dimensions of the homology of a closed factorization, keyed by
// (Z2 degree, q-degree); q is 0 for the deformed potential. `shift` is added
// to every q-degree.
std::map<std::pair<int, int>, int> mf_homology(const MF& closed, int shift = 0);

// Two consecutive wide edges on the same pair of strands collapse to one:
// checks qdim H(G) = (q + q^-1) qdim H(G') (both sides computed). Throws
// std::invalid_argument if the pattern is absent.
bool moy2_check(const Diagram& g, const PotentialSpec& s, std::string* detail = nullptr);

// Brute-force homology of a closed complex of factorizations: homology of each
// object, induced maps, homology of the resulting complex of vector spaces.
// Graded potentials give (h, q) ranks; the deformed potential gives (h, 0).
// The equivariant potential is evaluated at a = 0.
BigradedDims complex_homology(const ComplexOfMF& closed, std::size_t guard = 4096);

// Homology of a closed strand complex by the quotient-ring route: at a = 0
// for graded potentials, at a = 1 (ungraded) for the deformed one.
BigradedDims strand_homology(const StrandComplex& c, const PotentialSpec& s);

struct PoincareTerm {
  int t = 0, q = 0, rank = 0;
};
std::vector<PoincareTerm> poincare(const BigradedDims& dims);
// sum (-1)^h rank q^q
LaurentQ euler_characteristic(const BigradedDims& dims);
std::string poincare_string(const BigradedDims& dims);

// Specialization of a complex over F[a] to a complex over F: a = 0 keeps only
// the degree-preserving entries, a = 1 keeps every entry and forgets q.
GradedFreeComplex specialize(const GradedFreeComplex& c, bool at_a1);

// Chain map between specialized complexes: f[h] maps degree h of the source
// to degree h of the target.
using ChainMapF = std::map<int, SparseMat>;

// Rank of the induced map on homology, per (h, q).
BigradedDims induced_rank(const GradedFreeComplex& src, const GradedFreeComplex& tgt, const ChainMapF& f);
BigradedDims homology_dims(const GradedFreeComplex& c);

// A subcomplex picked by a generator mask, with the quotient and the two maps.
struct ShortExact {
  GradedFreeComplex sub, whole, quotient;
  ChainMapF incl, proj;
};
ShortExact split_by_mask(const GradedFreeComplex& c, const std::vector<std::vector<bool>>& in_sub);

// Bookkeeping of the long exact sequence of a short exact sequence.
struct TriangleReport {
  BigradedDims h_sub, h_whole, h_quot;
  BigradedDims rank_incl, rank_proj, rank_connecting;
  bool exact = false;          // ker = im at all three spots of every degree
  bool euler_vanishes = false; // chi(sub) - chi(whole) + chi(quot) = 0
  std::string detail;
};
TriangleReport long_exact_sequence(const ShortExact& s);

}  // namespace kr
