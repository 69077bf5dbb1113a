#pragma once
// State-sum model of the deformed homology of closed knotted graphs: edges
// colored by N-th roots of unity, constant through crossings and distinct
// on the two sides of a wide edge.

#include <map>
#include <string>
#include <vector>

#include "kr/cyclotomic.hpp"
#include "kr/moy.hpp"

namespace kr {

// Edge -> k, standing for zeta_N^k.
struct GornikState {
  std::map<int, int> phi;
  bool operator==(const GornikState& o) const { return phi == o.phi; }
  bool operator<(const GornikState& o) const { return phi < o.phi; }
};

// Every state, each once. Edges are assigned most-constrained first after
// collapsing the crossing identifications. Throws std::invalid_argument on
// an open graph.
std::vector<GornikState> enumerate_states(const Diagram& g, int N);
long deformed_dimension(const Diagram& g, int N);
// Whether an assignment obeys the crossing and wide-edge rules.
bool is_state(const Diagram& g, int N, const GornikState& s);

// The eigenvalue zeta^{phi(e)} of multiplication by x_e on the basis vector
// of the state.
Cyc multiplication_action(const GornikState& s, int edge, int N);
// x_e - x_f is invertible on the deformed homology iff no state gives e and f
// the same color; e == f is never invertible.
bool is_multiplication_invertible(const Diagram& g, int N, int e, int f);
// For a graph whose first wide edge replaced a crossing: multiplication by
// x1 - x3 (first output against first input) is invertible, so the cone of
// that map is acyclic. Throws std::invalid_argument without a wide edge.
bool cone_vanishing_certificate(const Diagram& g, int N);

// Evaluates the relations holding in the homology of each wide edge and
// each edge (w'(x) = 0 with w = x^{N+1} - (N+1) x, the symmetric functions
// of inputs and outputs agree, u = v = 0) at the state's eigenvalues in
// Q(zeta_N). `why` names the first failing relation.
bool eigenvalues_consistent(const Diagram& g, int N, const GornikState& s, std::string* why = nullptr);

}  // namespace kr
