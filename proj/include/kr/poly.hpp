#pragma once
// Sparse multivariate polynomials over Q. Variable 0 is the equivariant
// parameter a; variables 1.. are edge marks x1, x2, ...

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kr {

using Q = mpq_class;

constexpr int kMaxVars = 32;
constexpr int kVarA = 0;

struct Mono {
  std::array<std::uint8_t, kMaxVars> e{};

  int operator[](int v) const { return e[v]; }
  int total() const;
  int x_total() const;  // ignores a
  int qdeg(int N) const { return 2 * x_total() + 2 * N * e[kVarA]; }
  bool divides(const Mono& o) const;
  bool is_one() const;
  Mono operator*(const Mono& o) const;
  Mono operator/(const Mono& o) const;  // requires divides
  static Mono var(int v, int p = 1);
  static Mono lcm(const Mono& x, const Mono& y);
  bool operator<(const Mono& o) const { return e < o.e; }
  bool operator==(const Mono& o) const { return e == o.e; }
};

class Poly {
 public:
  using Terms = std::map<Mono, Q>;

  Poly() = default;
  Poly(long c);  // NOLINT: constants convert implicitly
  Poly(const Q& c);  // NOLINT
  static Poly var(int v) { return monomial(Mono::var(v), 1); }
  static Poly x(int i) { return var(i); }
  static Poly a() { return var(kVarA); }
  static Poly monomial(const Mono& m, const Q& c);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Q constant_term() const;
  Q coeff(const Mono& m) const;
  std::size_t size() const { return t_.size(); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Q& c);
  void add_term(const Mono& m, const Q& c);
  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
  friend Poly operator*(const Poly& p, const Poly& q);
  friend Poly operator*(Poly p, const Q& c) { return p *= c; }
  friend Poly operator*(const Q& c, Poly p) { return p *= c; }
  Poly operator-() const { return *this * Q(-1); }
  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return !(t_ == o.t_); }

  Poly pow(int k) const;
  int degree_in(int v) const;
  bool uses_var(int v) const { return degree_in(v) > 0; }
  std::vector<int> variables() const;
  // q-degree of every term (deg x = 2, deg a = 2N); -1 for zero, throws if
  // inhomogeneous
  int qdeg(int N) const;
  bool is_homogeneous(int N) const;
  // Substitute var v by p.
  Poly subs(int v, const Poly& p) const;
  // Simultaneous substitution; vars missing from the map stay.
  Poly subs(const std::map<int, Poly>& s) const;
  Poly eval_a(const Q& val) const { return subs(kVarA, Poly(val)); }
  // Coefficients as a polynomial in v: result[k] is the coefficient of v^k.
  std::vector<Poly> coeffs_in(int v) const;
  // (p(v=s) - p(v=t)) / (s - t) as a polynomial, for symbolic s, t given
  // as polynomials not involving v.
  Poly divided_difference(int v, const Poly& s, const Poly& t) const;

  std::string str() const;

 private:
  Terms t_;
};

std::string var_name(int v);
std::string mono_str(const Mono& m);

// Exact division; throws std::domain_error when q does not divide p.
Poly divide_exact(const Poly& p, const Poly& q);
// Division by a polynomial monic (up to a nonzero constant) in variable v:
// p = quo * b + rem with deg_v(rem) < deg_v(b).
void divide_by_monic(const Poly& p, const Poly& b, int v, Poly& quo, Poly& rem);

// Graded lexicographic order: plain total degree first (every variable has
// weight 1), ties broken lexicographically along `priority` (earlier = larger);
// variables absent from `priority` rank below it, smaller index larger.
class MonomialOrder {
 public:
  MonomialOrder();  // a > x1 > x2 > ...
  explicit MonomialOrder(std::vector<int> priority);
  bool greater(const Mono& x, const Mono& y) const;
  Mono leading(const Poly& p) const;
  const std::vector<int>& priority() const { return priority_; }

 private:
  std::vector<int> priority_;
  std::array<int, kMaxVars> rank_{};
};

// Full reduction of p by relations whose leading coefficients are units.
Poly normal_form(const Poly& p, const std::vector<Poly>& relations, const MonomialOrder& order);

// S-polynomial of f and g under the order.
Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& order);

// Checks that every S-pair of the relation set reduces to zero, i.e. that the
// rewriting system is confluent. Returns the index pairs that fail.
std::vector<std::pair<int, int>> confluence_failures(const std::vector<Poly>& relations,
                                                     const MonomialOrder& order);

// Standard monomials (not divisible by any leading monomial) in the listed
// variables; requires a zero-dimensional leading ideal in those variables.
std::vector<Mono> standard_monomials(const std::vector<Poly>& relations, const MonomialOrder& order,
                                     const std::vector<int>& vars);

}  // namespace kr
