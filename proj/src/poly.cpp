#include "kr/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kr {

int Mono::total() const {
  int s = 0;
  for (auto x : e) s += x;
  return s;
}

int Mono::x_total() const { return total() - e[kVarA]; }

bool Mono::divides(const Mono& o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

bool Mono::is_one() const {
  for (auto x : e)
    if (x) return false;
  return true;
}

Mono Mono::operator*(const Mono& o) const {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) {
    int s = int(e[i]) + int(o.e[i]);
    if (s > 255) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = std::uint8_t(s);
  }
  return r;
}

Mono Mono::operator/(const Mono& o) const {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::uint8_t(e[i] - o.e[i]);
  return r;
}

Mono Mono::var(int v, int p) {
  if (v < 0 || v >= kMaxVars) throw std::out_of_range("variable index");
  Mono m;
  m.e[v] = std::uint8_t(p);
  return m;
}

Mono Mono::lcm(const Mono& x, const Mono& y) {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::max(x.e[i], y.e[i]);
  return r;
}

Poly::Poly(long c) {
  if (c != 0) t_[Mono{}] = Q(c);
}

Poly::Poly(const Q& c) {
  if (c != 0) t_[Mono{}] = c;
}

Poly Poly::monomial(const Mono& m, const Q& c) {
  Poly p;
  if (c != 0) p.t_[m] = c;
  return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

Q Poly::constant_term() const { return coeff(Mono{}); }

Q Poly::coeff(const Mono& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Q(0) : it->second;
}

void Poly::add_term(const Mono& m, const Q& c) {
  if (c == 0) return;
  auto [it, ins] = t_.try_emplace(m, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Q& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& kv : t_) kv.second *= c;
  return *this;
}

Poly operator*(const Poly& p, const Poly& q) {
  Poly r;
  for (auto& [m1, c1] : p.t_)
    for (auto& [m2, c2] : q.t_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

Poly Poly::pow(int k) const {
  Poly r(1), b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

int Poly::degree_in(int v) const {
  int d = 0;
  for (auto& kv : t_) d = std::max(d, int(kv.first[v]));
  return d;
}

std::vector<int> Poly::variables() const {
  std::vector<int> r;
  for (int v = 0; v < kMaxVars; ++v)
    if (degree_in(v) > 0) r.push_back(v);
  return r;
}

int Poly::qdeg(int N) const {
  int d = -1;
  for (auto& kv : t_) {
    int e = kv.first.qdeg(N);
    if (d >= 0 && e != d) throw std::domain_error("inhomogeneous polynomial: " + str());
    d = e;
  }
  return d;
}

bool Poly::is_homogeneous(int N) const {
  int d = -1;
  for (auto& kv : t_) {
    int e = kv.first.qdeg(N);
    if (d >= 0 && e != d) return false;
    d = e;
  }
  return true;
}

Poly Poly::subs(int v, const Poly& p) const {
  std::map<int, Poly> s{{v, p}};
  return subs(s);
}

Poly Poly::subs(const std::map<int, Poly>& s) const {
  // cache powers of substituted values
  std::map<std::pair<int, int>, Poly> powers;
  auto power = [&](int v, int k) -> const Poly& {
    auto key = std::make_pair(v, k);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, s.at(v).pow(k)).first->second;
  };
  Poly r;
  for (auto& [m, c] : t_) {
    Mono keep = m;
    Poly factor(c);
    for (auto& [v, val] : s) {
      (void)val;
      if (m[v]) {
        factor = factor * power(v, m[v]);
        keep.e[v] = 0;
      }
    }
    for (auto& [m2, c2] : factor.t_) r.add_term(keep * m2, c2);
  }
  return r;
}

std::vector<Poly> Poly::coeffs_in(int v) const {
  std::vector<Poly> r(degree_in(v) + 1);
  for (auto& [m, c] : t_) {
    Mono k = m;
    k.e[v] = 0;
    r[m[v]].add_term(k, c);
  }
  return r;
}

Poly Poly::divided_difference(int v, const Poly& s, const Poly& t) const {
  auto cs = coeffs_in(v);
  Poly r;
  std::vector<Poly> sp{Poly(1)}, tp{Poly(1)};
  for (std::size_t k = 1; k < cs.size(); ++k) {
    sp.push_back(sp.back() * s);
    tp.push_back(tp.back() * t);
  }
  for (std::size_t k = 1; k < cs.size(); ++k) {
    if (cs[k].is_zero()) continue;
    Poly h;
    for (std::size_t i = 0; i < k; ++i) h += sp[i] * tp[k - 1 - i];
    r += cs[k] * h;
  }
  return r;
}

std::string var_name(int v) { return v == kVarA ? "a" : "x" + std::to_string(v); }

std::string mono_str(const Mono& m) {
  std::string s;
  for (int v = 0; v < kMaxVars; ++v) {
    if (!m[v]) continue;
    if (!s.empty()) s += "*";
    s += var_name(v);
    if (m[v] > 1) s += "^" + std::to_string(m[v]);
  }
  return s.empty() ? "1" : s;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  // print in default order, largest first, for stable output
  MonomialOrder ord;
  std::vector<std::pair<Mono, Q>> v(t_.begin(), t_.end());
  std::sort(v.begin(), v.end(), [&](auto& x, auto& y) { return ord.greater(x.first, y.first); });
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : v) {
    Q ac = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << ac.get_str();
    } else {
      if (ac != 1) os << ac.get_str() << "*";
      os << mono_str(m);
    }
  }
  return os.str();
}

MonomialOrder::MonomialOrder() : MonomialOrder(std::vector<int>{}) {}

MonomialOrder::MonomialOrder(std::vector<int> priority) : priority_(std::move(priority)) {
  // rank: smaller rank = larger variable
  std::vector<bool> seen(kMaxVars, false);
  int r = 0;
  for (int v : priority_) {
    if (v < 0 || v >= kMaxVars || seen[v]) throw std::invalid_argument("bad variable priority");
    seen[v] = true;
    rank_[v] = r++;
  }
  for (int v = 0; v < kMaxVars; ++v)
    if (!seen[v]) rank_[v] = r++;
  // store the full permutation so comparisons walk it directly
  std::vector<int> full(kMaxVars);
  for (int v = 0; v < kMaxVars; ++v) full[rank_[v]] = v;
  priority_ = full;
}

bool MonomialOrder::greater(const Mono& x, const Mono& y) const {
  int tx = x.total(), ty = y.total();
  if (tx != ty) return tx > ty;
  for (int v : priority_) {
    if (x[v] != y[v]) return x[v] > y[v];
  }
  return false;
}

Mono MonomialOrder::leading(const Poly& p) const {
  if (p.is_zero()) throw std::domain_error("leading term of zero");
  auto it = p.terms().begin();
  Mono best = it->first;
  for (++it; it != p.terms().end(); ++it)
    if (greater(it->first, best)) best = it->first;
  return best;
}

Poly divide_exact(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw std::domain_error("division by zero polynomial");
  MonomialOrder ord;
  Mono lq = ord.leading(q);
  Q cq = q.coeff(lq);
  Poly rem = p, quo;
  while (!rem.is_zero()) {
    Mono lr = ord.leading(rem);
    if (!lq.divides(lr)) throw std::domain_error("inexact division");
    Poly t = Poly::monomial(lr / lq, rem.coeff(lr) / cq);
    quo += t;
    rem -= t * q;
  }
  return quo;
}

void divide_by_monic(const Poly& p, const Poly& b, int v, Poly& quo, Poly& rem) {
  auto bc = b.coeffs_in(v);
  int m = int(bc.size()) - 1;
  if (m < 1 || !bc[m].is_constant() || bc[m].is_zero())
    throw std::domain_error("divisor is not monic in the variable");
  Q lead = bc[m].constant_term();
  quo = Poly();
  rem = p;
  for (;;) {
    int d = rem.degree_in(v);
    if (d < m || rem.is_zero()) break;
    Poly top = rem.coeffs_in(v)[d];
    Poly t = top * Poly::monomial(Mono::var(v, d - m), Q(1) / lead);
    quo += t;
    rem -= t * b;
  }
}

Poly normal_form(const Poly& p, const std::vector<Poly>& relations, const MonomialOrder& order) {
  struct Rel {
    Mono lead;
    Q lc;
    const Poly* p;
  };
  std::vector<Rel> rels;
  for (auto& r : relations) {
    if (r.is_zero()) continue;
    Mono l = order.leading(r);
    rels.push_back({l, r.coeff(l), &r});
  }
  Poly rem = p, out;
  while (!rem.is_zero()) {
    Mono l = order.leading(rem);
    Q c = rem.coeff(l);
    const Rel* hit = nullptr;
    for (auto& r : rels)
      if (r.lead.divides(l)) {
        hit = &r;
        break;
      }
    if (!hit) {
      out.add_term(l, c);
      rem.add_term(l, -c);
      continue;
    }
    rem -= Poly::monomial(l / hit->lead, c / hit->lc) * *hit->p;
  }
  return out;
}

Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& order) {
  Mono lf = order.leading(f), lg = order.leading(g);
  Mono l = Mono::lcm(lf, lg);
  return Poly::monomial(l / lf, Q(1) / f.coeff(lf)) * f - Poly::monomial(l / lg, Q(1) / g.coeff(lg)) * g;
}

std::vector<std::pair<int, int>> confluence_failures(const std::vector<Poly>& relations,
                                                     const MonomialOrder& order) {
  std::vector<std::pair<int, int>> bad;
  for (std::size_t i = 0; i < relations.size(); ++i)
    for (std::size_t j = i + 1; j < relations.size(); ++j) {
      if (relations[i].is_zero() || relations[j].is_zero()) continue;
      Mono li = order.leading(relations[i]), lj = order.leading(relations[j]);
      Mono l = Mono::lcm(li, lj);
      if (l == li * lj) continue;  // coprime leading terms always reduce to zero
      if (!normal_form(s_polynomial(relations[i], relations[j], order), relations, order).is_zero())
        bad.emplace_back(int(i), int(j));
    }
  return bad;
}

std::vector<Mono> standard_monomials(const std::vector<Poly>& relations, const MonomialOrder& order,
                                     const std::vector<int>& vars) {
  std::vector<Mono> leads;
  for (auto& r : relations)
    if (!r.is_zero()) leads.push_back(order.leading(r));
  for (int v : vars) {
    bool pure = false;
    for (auto& l : leads) {
      bool only_v = l[v] > 0;
      for (int u = 0; u < kMaxVars && only_v; ++u)
        if (u != v && l[u]) only_v = false;
      if (only_v) pure = true;
    }
    if (!pure) throw std::domain_error("quotient is not finite in " + var_name(v));
  }
  std::set<Mono> seen;
  std::vector<Mono> out, frontier{Mono{}};
  auto standard = [&](const Mono& m) {
    for (auto& l : leads)
      if (l.divides(m)) return false;
    return true;
  };
  while (!frontier.empty()) {
    std::vector<Mono> next;
    for (auto& m : frontier) {
      if (!seen.insert(m).second || !standard(m)) continue;
      out.push_back(m);
      for (int v : vars) next.push_back(m * Mono::var(v));
    }
    frontier.swap(next);
  }
  std::sort(out.begin(), out.end(), [&](const Mono& x, const Mono& y) { return order.greater(y, x); });
  return out;
}

}  // namespace kr
