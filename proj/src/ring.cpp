#include "kr/ring.hpp"

#include <stdexcept>

namespace kr {

namespace {
// scratch variables used only inside g_poly / uv_quotients
constexpr int kS = kMaxVars - 2;
constexpr int kT = kMaxVars - 1;
}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Generic: return "generic";
    case Variant::Equivariant: return "equivariant";
    case Variant::Deformed: return "deformed";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "generic") return Variant::Generic;
  if (s == "equivariant") return Variant::Equivariant;
  if (s == "deformed") return Variant::Deformed;
  throw std::invalid_argument("unknown potential '" + s + "'");
}

PotentialSpec::PotentialSpec(int n, Variant k) : N(n), kind(k) {
  if (n < 2) throw std::invalid_argument("N must be at least 2");
}

Poly PotentialSpec::linear_coefficient() const {
  switch (kind) {
    case Variant::Generic: return Poly();
    case Variant::Equivariant: return Poly::a();
    case Variant::Deformed: return Poly(deform);
  }
  return Poly();
}

Poly potential(const PotentialSpec& s, int v) {
  if (s.N < 2) throw std::invalid_argument("N must be at least 2");
  Poly x = Poly::x(v);
  return x.pow(s.N + 1) - s.linear_coefficient() * x;
}

Poly pi_quotient(const PotentialSpec& s, int i, int j) {
  if (i == j) throw std::invalid_argument("pi_quotient needs distinct variables");
  Poly r;
  Poly xi = Poly::x(i), xj = Poly::x(j);
  for (int k = 0; k <= s.N; ++k) r += xi.pow(k) * xj.pow(s.N - k);
  return r - s.linear_coefficient();
}

Poly g_poly(const PotentialSpec& s, const Poly& sum, const Poly& prod) {
  // power sums p_k = x^k + y^k via Newton: p_k = s p_{k-1} - t p_{k-2}
  Poly p0(2), p1 = sum;
  for (int k = 2; k <= s.N + 1; ++k) {
    Poly p2 = sum * p1 - prod * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1 - s.linear_coefficient() * sum;
}

std::pair<Poly, Poly> uv_quotients(const PotentialSpec& s, int i, int j, int k, int l) {
  Poly s1 = Poly::x(i) + Poly::x(j), t1 = Poly::x(i) * Poly::x(j);
  Poly s2 = Poly::x(k) + Poly::x(l), t2 = Poly::x(k) * Poly::x(l);
  Poly g = g_poly(s, Poly::var(kS), Poly::var(kT));
  // g(s1,t1) - g(s2,t2) = [g(s1,t1) - g(s2,t1)] + [g(s2,t1) - g(s2,t2)]
  Poly u = g.subs(kT, t1).divided_difference(kS, s1, s2);
  Poly v = g.subs(kS, s2).divided_difference(kT, t1, t2);
  return {u, v};
}

}  // namespace kr
