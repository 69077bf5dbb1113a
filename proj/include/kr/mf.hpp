#pragma once
// Graded matrix factorizations over polynomial rings, with Koszul
// presentations, tensor products, morphisms and mark exclusion.

#include <optional>
#include <string>
#include <vector>

#include "kr/poly.hpp"
#include "kr/ring.hpp"

namespace kr {

using PolyMatrix = std::vector<std::vector<Poly>>;  // [row][column]

PolyMatrix zero_matrix(std::size_t rows, std::size_t cols);
PolyMatrix identity_matrix(std::size_t n);
PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix mat_add(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix mat_sub(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix mat_scale(const PolyMatrix& a, const Poly& p);
bool mat_is_zero(const PolyMatrix& a);
PolyMatrix mat_subs(const PolyMatrix& a, const std::map<int, Poly>& s);

struct KoszulRow {
  Poly a;  // the "up" entry (wedge)
  Poly b;  // the "down" entry (contraction)
};

// Top q-degree of a polynomial (maximum over terms); -1 for zero.
int top_qdeg(const Poly& p, int N);

struct MF {
  PotentialSpec spec;
  std::vector<int> vars;      // ring variables (mark indices)
  std::vector<int> boundary;  // marks that must not be excluded
  Poly w;
  std::vector<int> parity;  // Z2 degree per generator
  std::vector<int> qdeg;    // q-degree per generator
  PolyMatrix d;             // d[i][j] = coefficient of generator i in d(generator j)
  std::vector<KoszulRow> rows;
  bool koszul = false;  // generators indexed by subsets of rows when set

  std::size_t size() const { return parity.size(); }
  bool is_internal(int v) const;
};

// Koszul factorization of the listed rows; generator of the empty subset sits
// in q-degree `shift`.
MF koszul_mf(const PotentialSpec& s, std::vector<KoszulRow> rows, int shift,
             std::vector<int> vars, std::vector<int> boundary);
MF shifted(MF m, int s);

// One-row factorization of an oriented arc from_var -> to_var.
MF arc_mf(const PotentialSpec& s, int from_var, int to_var);
// Wide edge with inputs (in_top, in_bot) and outputs (out_top, out_bot).
MF wide_edge_mf(const PotentialSpec& s, int out_top, int out_bot, int in_top, int in_bot);
MF tensor(const MF& A, const MF& B);

// Identify variables (closure). Marks listed in `to` become the new variable.
MF substitute(const MF& m, const std::map<int, int>& rename);

// d^2 == w and (graded variants) homogeneity of d of degree N+1.
bool mf_is_valid(const MF& m, std::string* why = nullptr);

struct Morphism {
  PolyMatrix m;  // [target generator][source generator]
  int parity = 0;
  int qdeg = 0;
};

Morphism identity_morphism(const MF& m);
Morphism multiplication(const MF& m, const Poly& p);
Morphism compose(const Morphism& g, const Morphism& f);  // g after f
Morphism operator+(const Morphism& f, const Morphism& g);
Morphism operator-(const Morphism& f, const Morphism& g);
Morphism operator*(const Poly& p, const Morphism& f);
// d_Y f = (-1)^{|f|} f d_X exactly
bool is_chain_map(const MF& X, const MF& Y, const Morphism& f);
// every entry homogeneous of the degree implied by f.qdeg
bool is_homogeneous_morphism(const MF& X, const MF& Y, const Morphism& f);
// f (x) g with the Koszul sign (f(x)g)(x(x)y) = (-1)^{|g||x|} f(x)(x)g(y).
Morphism tensor_morphism(const MF& fsrc, const Morphism& f, const MF& gsrc, const Morphism& g,
                         const MF& ftgt, const MF& gtgt);

// Removal of an internal mark x using a Koszul row whose b-entry is
// lambda * (monic polynomial of degree m in x).
struct Exclusion {
  bool applied = false;
  int var = -1;
  int row = -1;
  int degree = 0;  // m
  Poly beta;       // monic part
  mpq_class lambda = 1;
  MF full;
  MF reduced;
  PolyMatrix iota;                  // [full gen][reduced gen], a chain map
  std::vector<int> reduced_to_full; // reduced gen (T', s) -> full gen T
  std::vector<int> reduced_power;   // -> s
};

// Throws std::invalid_argument if x is a boundary mark or the input is not
// Koszul; returns applied=false if no row is eligible.
Exclusion exclude_variable(const MF& m, int x);
// pi applied to a matrix whose rows are indexed by full generators.
PolyMatrix apply_pi(const Exclusion& e, const PolyMatrix& rows_full);

// A sequence of exclusions; maps between the first full and the last reduced.
struct ExclusionChain {
  MF original;
  std::vector<Exclusion> steps;
  const MF& result() const { return steps.empty() ? original : steps.back().reduced; }
  PolyMatrix iota() const;
  PolyMatrix pi(const PolyMatrix& rows_original) const;
};

// Exclude the listed marks in order (each must succeed).
ExclusionChain exclude_marks(const MF& m, const std::vector<int>& marks);
// Greedily exclude every internal mark that has a linear row.
ExclusionChain exclude_all_linear(const MF& m);

// pi_B o f o iota_A
Morphism transport(const ExclusionChain& A, const ExclusionChain& B, const Morphism& f);

}  // namespace kr
