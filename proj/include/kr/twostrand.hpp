#pragma once
// Closed two-strand diagrams as cyclic words in the pieces A (two parallel
// arcs) and W (a wide edge). Homology of a closed word is a quotient ring
// free over the base; complexes of words are turned into graded free
// complexes by computing the induced maps in those rings.

#include <map>
#include <string>
#include <vector>

#include "kr/graded_complex.hpp"
#include "kr/poly.hpp"
#include "kr/ring.hpp"

namespace kr {

// Marks of a closed word of length n: slice s (between piece s-1 and piece s)
// carries top_s = x_{1+2s} and bot_s = x_{2+2s}.
int word_top(int slice, int n);
int word_bot(int slice, int n);

struct RingModel {
  PotentialSpec spec;
  std::string word;
  int lowest = 0;                 // q-degree of the class of 1
  std::vector<Poly> relations;    // rewriting system in block coordinates
  MonomialOrder order;
  std::vector<int> coords;        // block coordinate variables
  std::vector<Mono> basis;        // standard monomials, a free basis over the base
  std::map<int, Poly> slice_subs; // every mark in block coordinates
  std::map<Mono, int> index;

  Poly reduce(const Poly& p) const;  // p in marks
  // p = sum_i coeff_i * basis_i with coefficients polynomials in a
  std::map<int, Poly> coordinates(const Poly& p) const;
  int basis_qdeg(int i) const { return lowest + 2 * basis[i].x_total(); }
  int wide_count() const;
};

RingModel ring_model(const PotentialSpec& s, const std::string& word);
// S-pairs reduce to zero, the basis has the expected size and the defining
// ideal (arc identifications, symmetric-function equalities, u and v) lies
// in the ideal of the rewriting system and conversely.
bool certify_ring_model(const RingModel& m, std::string* why = nullptr);
// N^2 for no wide edge, N(N-1) 2^{j-1} for j wide edges
long expected_rank(int N, int wide_edges);

enum class LocalOp { Mul13, Mul14, Chi0, Chi1 };

struct WordSummand {
  std::string word;
  int shift = 0;
  int tag = 0;  // homological degree in the first tensor factor's source complex
};

struct StrandTerm {
  int tgt = 0, src = 0;  // positions in the target / source degree
  LocalOp op = LocalOp::Mul13;
  int piece = 0;
  int coeff = 1;
};

// A symbolic complex whose objects are open two-strand words (pieces glued
// left to right) and whose maps act on one piece.
struct StrandComplex {
  int length = 0;
  int lo = 0;
  std::vector<std::vector<WordSummand>> objects;  // [h - lo]
  std::vector<std::vector<StrandTerm>> diff;      // [h - lo]
  int hi() const { return lo + int(objects.size()) - 1; }
};

StrandComplex strand_crossing(int sign, int N);
StrandComplex strand_cube(int n, int N);  // C(b^n), n != 0
StrandComplex strand_B(int k, int N);     // B_k; B_0 is a single A
StrandComplex strand_cone_x13(int N);     // W -> W{q^-2} by x1 - x3, degrees 0, 1
StrandComplex strand_tensor(const StrandComplex& a, const StrandComplex& b);
StrandComplex strand_shift(const StrandComplex& c, int hshift, int qshift);
// The simplified complex of b^n: B_{n/2} for even n, B_{(n-1)/2} or B_{(n+1)/2}
// followed by one crossing of the sign of n for odd n.
StrandComplex strand_torus(int n, int N);
// Total rank of close_strand(c, .) without building it.
long closed_rank(const StrandComplex& c, int N);

// The polynomial by which a local map acts between closed words.
Poly closed_map_poly(LocalOp op, int piece, const std::string& src, const std::string& tgt);

// Closure followed by homology of every object: a complex of graded free
// modules over F[a] (or over F for the generic and deformed potentials).
// Generator order: objects in order, basis monomials in order.
GradedFreeComplex close_strand(const StrandComplex& c, const PotentialSpec& s);

// Offsets of each summand's generators inside its degree of close_strand.
std::vector<std::vector<int>> generator_offsets(const StrandComplex& c, const PotentialSpec& s);

}  // namespace kr
