#pragma once
// Exact arithmetic in Q(zeta_n): dense coefficient vectors reduced modulo the
// n-th cyclotomic polynomial.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace kr {

// Coefficients (constant term first) of the n-th cyclotomic polynomial.
std::vector<mpq_class> cyclotomic_polynomial(int n);

class Cyc {
 public:
  Cyc() = default;  // zero with unset order; adopts the order of its partner
  Cyc(int n, const mpq_class& c);
  static Cyc zeta(int n, int k = 1);  // zeta^k

  int order() const { return n_; }
  bool is_zero() const;
  const std::vector<mpq_class>& coeffs() const { return c_; }

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc operator-() const;
  Cyc inverse() const;  // throws std::domain_error on zero
  Cyc operator/(const Cyc& o) const { return *this * o.inverse(); }
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }
  std::string str() const;

 private:
  int n_ = 0;
  std::vector<mpq_class> c_;  // length phi(n) once the order is set
  static int common(const Cyc& x, const Cyc& y);
  void reduce();
  Cyc with_order(int n) const;
};

}  // namespace kr
