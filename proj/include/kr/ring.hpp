#pragma once
// The three potentials and the polynomials derived from them.

#include <string>
#include <utility>

#include "kr/poly.hpp"

namespace kr {

enum class Variant { Generic, Equivariant, Deformed };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);  // throws std::invalid_argument

struct PotentialSpec {
  int N = 2;
  Variant kind = Variant::Generic;
  // c in the deformed potential x^{N+1} - c x; c = N + 1 puts the critical
  // points at the N-th roots of unity
  Q deform = 1;

  PotentialSpec() = default;
  PotentialSpec(int n, Variant k);
  bool graded() const { return kind != Variant::Deformed; }
  // the constant c in w = x^{N+1} - c x, as a polynomial (0, a or 1)
  Poly linear_coefficient() const;
};

// w(x_v)
Poly potential(const PotentialSpec& s, int v);
// (w(x_i) - w(x_j)) / (x_i - x_j)
Poly pi_quotient(const PotentialSpec& s, int i, int j);
// g with w(x) + w(y) = g(x + y, xy), evaluated at polynomials (sum, prod)
Poly g_poly(const PotentialSpec& s, const Poly& sum, const Poly& prod);
// (u, v) with u (x_i+x_j-x_k-x_l) + v (x_i x_j - x_k x_l) = g(..i,j) - g(..k,l)
std::pair<Poly, Poly> uv_quotients(const PotentialSpec& s, int i, int j, int k, int l);

}  // namespace kr
