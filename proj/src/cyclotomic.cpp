#include "kr/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace kr {

namespace {

using UPoly = std::vector<mpq_class>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// a = q*b + r
void divmod(UPoly a, const UPoly& b, UPoly& q, UPoly& r) {
  trim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t s = a.size() - b.size();
    mpq_class f = a.back() / b.back();
    q[s] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[s + j] -= f * b[j];
    trim(a);
  }
  r = a;
  trim(q);
}

UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

std::mutex g_mu;
std::map<int, UPoly> g_cache;

}  // namespace

std::vector<mpq_class> cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
  {
    std::lock_guard<std::mutex> lk(g_mu);
    auto it = g_cache.find(n);
    if (it != g_cache.end()) return it->second;
  }
  UPoly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    UPoly q, r;
    divmod(num, cyclotomic_polynomial(d), q, r);
    if (!r.empty()) throw std::logic_error("cyclotomic division not exact");
    num = q;
  }
  std::lock_guard<std::mutex> lk(g_mu);
  g_cache[n] = num;
  return num;
}

Cyc::Cyc(int n, const mpq_class& c) : n_(n) {
  if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
  c_.assign(cyclotomic_polynomial(n).size() - 1, 0);
  c_[0] = c;
}

Cyc Cyc::zeta(int n, int k) {
  Cyc z(n, 0);
  k %= n;
  if (k < 0) k += n;
  UPoly p(k + 1, 0);
  p[k] = 1;
  z.c_ = p;
  z.reduce();
  return z;
}

void Cyc::reduce() {
  const UPoly phi = cyclotomic_polynomial(n_);
  std::size_t deg = phi.size() - 1;
  UPoly q, r;
  divmod(c_, phi, q, r);
  r.resize(deg, 0);
  c_ = r;
}

int Cyc::common(const Cyc& x, const Cyc& y) {
  if (x.n_ && y.n_ && x.n_ != y.n_) throw std::invalid_argument("mixed cyclotomic orders");
  return x.n_ ? x.n_ : y.n_;
}

Cyc Cyc::with_order(int n) const {
  if (n_ == n) return *this;
  if (n == 0) return *this;
  Cyc r(n, 0);
  return r;  // only the unset zero changes order
}

bool Cyc::is_zero() const {
  for (auto& c : c_)
    if (c != 0) return false;
  return true;
}

Cyc Cyc::operator+(const Cyc& o) const {
  int n = common(*this, o);
  Cyc a = with_order(n), b = o.with_order(n);
  for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator-() const {
  Cyc r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Cyc Cyc::operator*(const Cyc& o) const {
  int n = common(*this, o);
  if (n == 0) return Cyc();
  Cyc a = with_order(n), b = o.with_order(n);
  Cyc r(n, 0);
  UPoly x = a.c_, y = b.c_;
  trim(x);
  trim(y);
  r.c_ = mul(x, y);
  if (r.c_.empty()) r.c_.push_back(0);
  r.reduce();
  return r;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in cyclotomic field");
  // extended Euclid: find s with s*self = 1 mod phi
  UPoly r0 = cyclotomic_polynomial(n_), r1 = c_;
  trim(r1);
  UPoly s0, s1{1};
  while (r1.size() > 1) {
    UPoly q, r;
    divmod(r0, r1, q, r);
    UPoly s = sub(s0, mul(q, s1));
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s;
  }
  // r1 is a nonzero constant since phi is irreducible
  Cyc out(n_, 0);
  out.c_ = s1;
  for (auto& c : out.c_) c /= r1[0];
  if (out.c_.empty()) out.c_.push_back(0);
  out.reduce();
  return out;
}

bool Cyc::operator==(const Cyc& o) const { return (*this - o).is_zero(); }

std::string Cyc::str() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (any) os << " + ";
    os << c_[i].get_str();
    if (i) os << "*z^" << i;
    any = true;
  }
  return any ? os.str() : "0";
}

}  // namespace kr
