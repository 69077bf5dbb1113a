#pragma once
// Complexes of graded free F[a]-modules whose differential entries are single
// monomials c a^m; the exponent m is implied by the generator degrees.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace kr {

// Sparse matrix stored by columns with a row index kept in sync.
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(int rows, int cols) : rows_(rows), col_(cols) { row_index_.resize(rows); }
  int rows() const { return rows_; }
  int cols() const { return int(col_.size()); }
  const mpq_class* get(int r, int c) const;
  void set(int r, int c, const mpq_class& v);
  void add(int r, int c, const mpq_class& v);
  const std::map<int, mpq_class>& column(int c) const { return col_[c]; }
  const std::set<int>& row(int r) const { return row_index_[r]; }
  std::size_t nonzeros() const;
  // keep only the listed rows/cols (in the given order)
  SparseMat restricted(const std::vector<int>& rows, const std::vector<int>& cols) const;

 private:
  int rows_ = 0;
  std::vector<std::map<int, mpq_class>> col_;
  std::vector<std::set<int>> row_index_;
};

struct GradedFreeComplex {
  int N = 2;
  int lo = 0;
  std::vector<std::vector<int>> gens;  // gens[h - lo]: q-degrees of generators
  std::vector<SparseMat> d;           // d[h - lo]: C^h -> C^{h+1}

  int hi() const { return lo + int(gens.size()) - 1; }
  int total_rank() const;
  // exponent of a carried by a nonzero entry src (degree h) -> tgt (degree h+1)
  std::optional<int> exponent(int h, int src, int tgt) const;
};

// Shape and grading checks: sizes agree, every nonzero entry has a
// nonnegative integral exponent.
bool grading_consistent(const GradedFreeComplex& c, std::string* why = nullptr);
bool d_squared_zero(const GradedFreeComplex& c);

// Laurent polynomial in q as exponent -> coefficient
using LaurentQ = std::map<int, long>;
// sum over generators of (-1)^h q^deg, i.e. the graded Euler characteristic
// over F after setting a = 0
LaurentQ euler_characteristic(const GradedFreeComplex& c);

// (h, q) -> rank; q is 0 for ungraded results
using BigradedDims = std::map<std::pair<int, int>, int>;

// Homology over F with a = 0 (graded) or a = 1 (ungraded), computed by
// Gaussian elimination; `euler_ok` reports whether the graded Euler
// characteristic stayed constant after every step.
BigradedDims homology_at_a0(const GradedFreeComplex& c, bool* euler_ok = nullptr, int* steps = nullptr);
BigradedDims homology_at_a1(const GradedFreeComplex& c);

struct Piece {
  int h = 0;       // degree of the source generator
  int q_src = 0;
  int q_tgt = 0;   // meaningful for type 2
  int k = -1;      // a-exponent; -1 marks a type-1 (free) piece
  bool free() const { return k < 0; }
};

struct GradedModuleOverA {
  std::vector<int> free;                       // q-degrees of free summands
  std::vector<std::pair<int, int>> torsion;    // (q-degree, exponent k >= 1)
};

// Fast decomposition: generalized Gaussian elimination pivoting on entries
// that are minimal in their row and column (units first).
std::vector<Piece> decompose(const GradedFreeComplex& c);
std::map<int, GradedModuleOverA> homology_over_A(const GradedFreeComplex& c);
std::map<int, GradedModuleOverA> homology_from_pieces(const std::vector<Piece>& pieces);

// Dense decomposition that also returns per-degree change-of-basis matrices
// B_h (rows: new basis in terms of old) and their inverses; the transformed
// differential B_{h+1} d_h B_h^{-1} is a direct sum of elementary pieces.
struct DecompositionWitness {
  std::vector<Piece> pieces;
  std::vector<std::vector<std::vector<mpq_class>>> basis, inverse;  // indexed by h - lo
  bool verified = false;
};
DecompositionWitness decompose_with_witness(const GradedFreeComplex& c);

// s with free q-degrees exactly {N + 1 - 2l + s : l = 1..N}; throws
// std::domain_error otherwise.
int extract_s_N(const GradedModuleOverA& h0, int N);

// Random complex: a direct sum of elementary pieces disguised by a random
// grading-preserving change of basis. The hidden pieces are returned.
GradedFreeComplex random_complex(std::mt19937_64& rng, int N, int degrees, int pieces_per_degree,
                                 std::vector<Piece>* hidden = nullptr);

}  // namespace kr
