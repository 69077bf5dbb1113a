#pragma once
// Chain complexes of matrix factorizations: crossings, open 2-braids, the
// simplified complexes, mapping cones and Gaussian elimination up to homotopy.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kr/morphisms.hpp"

namespace kr {

struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Summand {
  MF mf;
  int shift = 0;  // the object is mf{q^shift}
  std::string label;
};

using MorphismMatrix = std::vector<std::vector<std::optional<Morphism>>>;  // [tgt][src]

struct ComplexOfMF {
  PotentialSpec spec;
  int lo = 0;
  std::vector<std::vector<Summand>> objects;  // [h - lo]
  std::vector<MorphismMatrix> diff;           // [h - lo]: degree h -> h + 1

  int hi() const { return lo + int(objects.size()) - 1; }
  std::size_t total_generators() const;
  const std::vector<Summand>& at(int h) const;
};

bool same_mf(const MF& x, const MF& y);

// Every entry is a chain map of the degree dictated by the shifts.
bool differentials_valid(const ComplexOfMF& c, std::string* why = nullptr);
bool d_squared_exactly_zero(const ComplexOfMF& c);
// d^2 null-homotopic entry by entry (for complexes living in the homotopy category)
bool d_squared_null_homotopic(const ComplexOfMF& c);

// Marks of the open braid b^n: slice 0 carries the inputs (x3, x4), slice n
// the outputs (x1, x2), interior slices use x5, x6, x7, ...
int braid_top_mark(int slice, int n);
int braid_bot_mark(int slice, int n);

// Single crossing: positive is wide{q^N} (h=-1) -> arcs{q^{N-1}} (h=0) by chi^1;
// negative is arcs{q^{1-N}} (h=0) -> wide{q^{-N}} (h=1) by chi^0.
ComplexOfMF crossing_complex(const PotentialSpec& s, int sign, const LocalMarks& m = {});
// Tensor product of |n| crossings with the standard sign rule; throws
// ResourceGuardError beyond `guard` generators in total.
ComplexOfMF braid_complex(const PotentialSpec& s, int n, std::size_t guard = 4096);

// The simplified complexes for k != 0 on the marks x1..x4.
ComplexOfMF simplified_b_complex(const PotentialSpec& s, int k);

using ChainMapOfMF = std::vector<MorphismMatrix>;  // [h - src.lo]: src^h -> tgt^h

// Degrees -2k..-2 ... of B_k; F_k embeds B_{k-1}{q^{2(N-1)}} (B_0 = arcs{q^0}).
ComplexOfMF shift_complex(const ComplexOfMF& c, int hshift, int qshift);
ChainMapOfMF build_F_k(const PotentialSpec& s, int k, ComplexOfMF* src = nullptr,
                       ComplexOfMF* tgt = nullptr);
// Cokernel of the termwise split injection F_k.
ComplexOfMF cokernel_F_k(const PotentialSpec& s, int k);

// Cone of f: A -> B with A^j + B^{j-1} in degree j and d(a,b) = (da, f a - d b).
ComplexOfMF mapping_cone(const ComplexOfMF& A, const ComplexOfMF& B, const ChainMapOfMF& f);
// Cone of m(x1 - x3): wide -> wide{q^-2}.
ComplexOfMF cone_of_x1_minus_x3(const PotentialSpec& s);

// Gaussian elimination in the homotopy category: pivots on an entry between
// identical factorizations with equal shifts that is homotopic to c id,
// c != 0, scanning degrees upwards and entries by (row, column).
ComplexOfMF gaussian_eliminate(const ComplexOfMF& c, int* steps = nullptr);

// The reduction of C(b^2) to B_1 carried out on the double-edge model.
struct BSquaredReduction {
  ComplexOfMF reduced_braid;  // C(b^2) on reduced resolutions
  ComplexOfMF replaced;       // after inserting (J, xi_r^0)
  ComplexOfMF eliminated;     // after Gaussian elimination
  bool braid_is_complex = false;
  bool replacement_ok = false;     // the inserted map has a homotopy inverse of Lemma 2.4 type
  mpq_class pivot_scalar = 0;      // chi_r^1 J ~ c id
  mpq_class first_map_scalar = 0;  // first map ~ c' m(x1 - x3)
  mpq_class last_map_scalar = 0;   // last map ~ c'' chi^1
  bool isomorphic_to_B1 = false;
};
BSquaredReduction reduce_b_squared(const DoubleEdgeModel& model);

// The morphism identities of the saddle maps and the double-edge model.
struct PackageCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};
std::vector<PackageCheck> saddle_identities(const PotentialSpec& s);     // chi/xi compositions
std::vector<PackageCheck> homotopy_package(const DoubleEdgeModel& m);   // the homotopy identities

}  // namespace kr

namespace kr {
// Trace closure: identifies the outputs (x1, x2) with the inputs (x3, x4).
ComplexOfMF close_braid(const ComplexOfMF& c);
}  // namespace kr
