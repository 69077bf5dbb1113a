#include "kr/twostrand.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace kr {

int word_top(int slice, int n) { return 1 + 2 * (((slice % n) + n) % n); }
int word_bot(int slice, int n) { return 2 + 2 * (((slice % n) + n) % n); }

namespace {

// complete homogeneous symmetric polynomial h_k(y, z)
Poly complete_h(int k, const Poly& y, const Poly& z) {
  Poly out;
  for (int i = 0; i <= k; ++i) out += y.pow(i) * z.pow(k - i);
  return out;
}

Poly derivative_w(const PotentialSpec& s, const Poly& x) {
  return Poly(Q(s.N + 1)) * x.pow(s.N) - s.linear_coefficient();
}

}  // namespace

int RingModel::wide_count() const { return int(std::count(word.begin(), word.end(), 'W')); }

Poly RingModel::reduce(const Poly& p) const { return normal_form(p.subs(slice_subs), relations, order); }

std::map<int, Poly> RingModel::coordinates(const Poly& p) const {
  std::map<int, Poly> out;
  const Poly r = reduce(p);
  for (const auto& [m, c] : r.terms()) {
    Mono x = m, am;
    x.e[kVarA] = 0;
    am.e[kVarA] = m.e[kVarA];
    auto it = index.find(x);
    if (it == index.end()) throw std::logic_error("normal form outside the standard monomials: " + mono_str(m) + " in word " + word);
    out[it->second].add_term(am, c);
  }
  return out;
}

long expected_rank(int N, int wide_edges) {
  if (wide_edges == 0) return long(N) * N;
  return long(N) * (N - 1) * (1L << (wide_edges - 1));
}

RingModel ring_model(const PotentialSpec& s, const std::string& word) {
  const int n = int(word.size());
  if (n == 0) throw std::invalid_argument("empty word");
  if (2 * n + 2 >= 30) throw std::invalid_argument("word too long for the mark budget");
  for (char ch : word)
    if (ch != 'A' && ch != 'W') throw std::invalid_argument("word letters must be A or W");
  RingModel m;
  m.spec = s;
  m.word = word;
  const int N = s.N;
  std::vector<int> wides;
  for (int p = 0; p < n; ++p)
    if (word[p] == 'W') wides.push_back(p);
  const int j = int(wides.size());
  if (j == 0) {
    const int y = word_top(0, n), z = word_bot(0, n);
    for (int sl = 0; sl < n; ++sl) {
      m.slice_subs[word_top(sl, n)] = Poly::x(y);
      m.slice_subs[word_bot(sl, n)] = Poly::x(z);
    }
    m.coords = {y, z};
    m.order = MonomialOrder({y, z});
    m.relations = {derivative_w(s, Poly::x(y)), derivative_w(s, Poly::x(z))};
    m.lowest = 2 - 2 * N;
  } else {
    // block b starts right after the b-th wide edge; its first slice represents it
    std::vector<int> rep(j), block_of(n);
    for (int b = 0; b < j; ++b) {
      rep[b] = (wides[b] + 1) % n;
      int sl = rep[b];
      for (;;) {
        block_of[sl] = b;
        if (word[sl] == 'W') break;  // piece sl leaves this block
        sl = (sl + 1) % n;
      }
    }
    const int y1 = word_top(rep[0], n), z1 = word_bot(rep[0], n);
    const Poly Y1 = Poly::x(y1), Z1 = Poly::x(z1);
    std::vector<int> priority;
    for (int b = j - 1; b >= 1; --b) priority.push_back(word_top(rep[b], n));
    priority.push_back(z1);
    priority.push_back(y1);
    m.order = MonomialOrder(priority);
    m.coords = {y1, z1};
    m.relations = {complete_h(N - 1, Y1, Z1), Poly(Q(N + 1)) * Y1.pow(N) - s.linear_coefficient()};
    for (int b = 1; b < j; ++b) {
      const Poly Yb = Poly::x(word_top(rep[b], n));
      m.coords.push_back(word_top(rep[b], n));
      m.relations.push_back((Yb - Y1) * (Yb - Z1));
    }
    for (int sl = 0; sl < n; ++sl) {
      const int b = block_of[sl];
      const Poly Yb = Poly::x(word_top(rep[b], n));
      m.slice_subs[word_top(sl, n)] = Yb;
      m.slice_subs[word_bot(sl, n)] = b == 0 ? Z1 : Y1 + Z1 - Yb;
    }
    m.lowest = 4 - 2 * N - j;
  }
  m.basis = standard_monomials(m.relations, m.order, m.coords);
  for (int i = 0; i < int(m.basis.size()); ++i) m.index[m.basis[i]] = i;
  return m;
}

bool certify_ring_model(const RingModel& m, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (!confluence_failures(m.relations, m.order).empty()) return fail("rewriting system not confluent");
  if (long(m.basis.size()) != expected_rank(m.spec.N, m.wide_count())) return fail("basis size");
  const PotentialSpec& s = m.spec;
  const int n = int(m.word.size());
  // defining generators vanish
  std::vector<Poly> gens;
  for (int p = 0; p < n; ++p) {
    const Poly ti = Poly::x(word_top(p, n)), bi = Poly::x(word_bot(p, n));
    const Poly to = Poly::x(word_top(p + 1, n)), bo = Poly::x(word_bot(p + 1, n));
    if (m.word[p] == 'A') {
      gens.push_back(to - ti);
      gens.push_back(bo - bi);
    } else {
      gens.push_back(to + bo - ti - bi);
      gens.push_back(to * bo - ti * bi);
    }
  }
  const int j = m.wide_count();
  if (j == 0) {
    gens.push_back(derivative_w(s, Poly::x(word_top(0, n))));
    gens.push_back(derivative_w(s, Poly::x(word_bot(0, n))));
  } else {
    for (int sl = 0; sl < n; ++sl) {
      auto [u, v] = uv_quotients(s, word_top(sl, n), word_bot(sl, n), word_top(sl, n), word_bot(sl, n));
      gens.push_back(u);
      gens.push_back(v);
    }
  }
  for (const auto& g : gens)
    if (!m.reduce(g).is_zero()) return fail("defining generator does not vanish: " + g.str());
  // conversely every relation is the image of an element of the defining ideal
  if (j >= 1) {
    const int y1 = m.coords[0], z1 = m.coords[1];
    auto [u, v] = uv_quotients(s, y1, z1, y1, z1);
    const Poly h = v * Q(Q(-1) / Q(s.N + 1));
    const Poly y = u + Poly::x(z1) * v;
    if (m.relations[0] != h || m.relations[1] != y) return fail("u, v relations");
    for (int b = 2; b < int(m.coords.size()); ++b) {
      const Poly yb = Poly::x(m.coords[b]);
      // e2 of block b minus e2 of block 1, with the e1 equalities substituted
      const Poly e2 = (yb * (Poly::x(y1) + Poly::x(z1) - yb) - Poly::x(y1) * Poly::x(z1)) * Q(-1);
      if (m.relations[b] != e2) return fail("block relation");
    }
  } else {
    if (m.relations[0] != derivative_w(s, Poly::x(m.coords[0]))) return fail("circle relation");
  }
  return true;
}

namespace {

StrandComplex with_degree_tags(StrandComplex c) {
  for (std::size_t i = 0; i < c.objects.size(); ++i)
    for (auto& w : c.objects[i]) w.tag = c.lo + int(i);
  return c;
}

}  // namespace

StrandComplex strand_crossing(int sign, int N) {
  StrandComplex c;
  c.length = 1;
  if (sign > 0) {
    c.lo = -1;
    c.objects = {{WordSummand{"W", N}}, {WordSummand{"A", N - 1}}};
    c.diff = {{StrandTerm{0, 0, LocalOp::Chi1, 0, 1}}, {}};
  } else if (sign < 0) {
    c.lo = 0;
    c.objects = {{WordSummand{"A", 1 - N}}, {WordSummand{"W", -N}}};
    c.diff = {{StrandTerm{0, 0, LocalOp::Chi0, 0, 1}}, {}};
  } else {
    throw std::invalid_argument("crossing sign must be nonzero");
  }
  return with_degree_tags(c);
}

StrandComplex strand_tensor(const StrandComplex& a, const StrandComplex& b) {
  StrandComplex c;
  c.length = a.length + b.length;
  c.lo = a.lo + b.lo;
  const int H = int(a.objects.size() + b.objects.size()) - 1;
  c.objects.assign(H, {});
  c.diff.assign(H, {});
  // position of (degree of a, index in a, degree of b, index in b)
  std::map<std::tuple<int, int, int, int>, int> pos;
  for (int ia = 0; ia < int(a.objects.size()); ++ia)
    for (int ib = 0; ib < int(b.objects.size()); ++ib)
      for (int xa = 0; xa < int(a.objects[ia].size()); ++xa)
        for (int xb = 0; xb < int(b.objects[ib].size()); ++xb) {
          auto& deg = c.objects[ia + ib];
          pos[{ia, xa, ib, xb}] = int(deg.size());
          deg.push_back(WordSummand{a.objects[ia][xa].word + b.objects[ib][xb].word,
                                    a.objects[ia][xa].shift + b.objects[ib][xb].shift, a.objects[ia][xa].tag});
        }
  for (int ia = 0; ia < int(a.objects.size()); ++ia)
    for (int ib = 0; ib < int(b.objects.size()); ++ib) {
      const int sign_b = ((a.lo + ia) % 2 == 0) ? 1 : -1;
      for (int xb = 0; xb < int(b.objects[ib].size()); ++xb)
        for (const auto& t : a.diff[ia])
          c.diff[ia + ib].push_back(
              StrandTerm{pos[{ia + 1, t.tgt, ib, xb}], pos[{ia, t.src, ib, xb}], t.op, t.piece, t.coeff});
      for (int xa = 0; xa < int(a.objects[ia].size()); ++xa)
        for (const auto& t : b.diff[ib])
          c.diff[ia + ib].push_back(StrandTerm{pos[{ia, xa, ib + 1, t.tgt}], pos[{ia, xa, ib, t.src}], t.op,
                                               t.piece + a.length, t.coeff * sign_b});
    }
  return c;
}

StrandComplex strand_cube(int n, int N) {
  if (n == 0) throw std::invalid_argument("braid word must be nonzero");
  StrandComplex c = strand_crossing(n > 0 ? 1 : -1, N);
  for (int i = 1; i < std::abs(n); ++i) c = strand_tensor(c, strand_crossing(n > 0 ? 1 : -1, N));
  return c;
}

StrandComplex strand_B(int k, int N) {
  StrandComplex c;
  c.length = 1;
  if (k == 0) {
    c.lo = 0;
    c.objects = {{WordSummand{"A", 0}}};
    c.diff = {{}};
    return with_degree_tags(c);
  }
  const int K = std::abs(k);
  c.objects.assign(2 * K + 1, {});
  c.diff.assign(2 * K + 1, {});
  if (k > 0) {
    c.lo = -2 * K;
    for (int l = 2 * K; l >= 1; --l) c.objects[2 * K - l] = {WordSummand{"W", 2 * K * (N - 1) + 2 * l - 1}};
    c.objects[2 * K] = {WordSummand{"A", 2 * K * (N - 1)}};
    for (int i = 0; i < 2 * K - 1; ++i)
      c.diff[i] = {StrandTerm{0, 0, i % 2 == 0 ? LocalOp::Mul13 : LocalOp::Mul14, 0, 1}};
    c.diff[2 * K - 1] = {StrandTerm{0, 0, LocalOp::Chi1, 0, 1}};
  } else {
    c.lo = 0;
    c.objects[0] = {WordSummand{"A", -2 * K * (N - 1)}};
    for (int l = 1; l <= 2 * K; ++l) c.objects[l] = {WordSummand{"W", -2 * K * (N - 1) - 2 * l + 1}};
    c.diff[0] = {StrandTerm{0, 0, LocalOp::Chi0, 0, 1}};
    for (int l = 1; l < 2 * K; ++l)
      c.diff[l] = {StrandTerm{0, 0, l % 2 == 1 ? LocalOp::Mul13 : LocalOp::Mul14, 0, 1}};
  }
  return with_degree_tags(c);
}

StrandComplex strand_cone_x13(int) {
  StrandComplex c;
  c.length = 1;
  c.lo = 0;
  c.objects = {{WordSummand{"W", 0}}, {WordSummand{"W", -2}}};
  c.diff = {{StrandTerm{0, 0, LocalOp::Mul13, 0, 1}}, {}};
  return with_degree_tags(c);
}

StrandComplex strand_shift(const StrandComplex& c, int hshift, int qshift) {
  StrandComplex out = c;
  out.lo += hshift;
  for (auto& deg : out.objects)
    for (auto& w : deg) {
      w.shift += qshift;
      w.tag += hshift;
    }
  return out;
}

Poly closed_map_poly(LocalOp op, int piece, const std::string& src, const std::string& tgt) {
  const int n = int(src.size());
  const Poly x1 = Poly::x(word_top(piece + 1, n));
  const Poly x3 = Poly::x(word_top(piece, n));
  const Poly x4 = Poly::x(word_bot(piece, n));
  switch (op) {
    case LocalOp::Mul13: return x1 - x3;
    case LocalOp::Mul14: return x1 - x4;
    case LocalOp::Chi1: {
      const long j = std::count(src.begin(), src.end(), 'W');
      return j == 1 ? x1 - x4 : Poly(1);
    }
    case LocalOp::Chi0: {
      const long j = std::count(tgt.begin(), tgt.end(), 'W');
      return j == 1 ? Poly(1) : x1 - x4;
    }
  }
  return Poly();
}

namespace {

const RingModel& cached_model(const PotentialSpec& s, const std::string& word) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, std::string, std::string>, RingModel> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(s.N, int(s.kind), s.deform.get_str(), word);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, ring_model(s, word)).first;
  return it->second;
}

}  // namespace

StrandComplex strand_torus(int n, int N) {
  if (n % 2 == 0) return strand_B(n / 2, N);
  const int sign = n > 0 ? 1 : -1;
  return strand_tensor(strand_B((n - sign) / 2, N), strand_crossing(sign, N));
}

long closed_rank(const StrandComplex& c, int N) {
  long total = 0;
  for (const auto& deg : c.objects)
    for (const auto& w : deg) total += expected_rank(N, int(std::count(w.word.begin(), w.word.end(), 'W')));
  return total;
}

std::vector<std::vector<int>> generator_offsets(const StrandComplex& c, const PotentialSpec& s) {
  std::vector<std::vector<int>> off(c.objects.size());
  for (std::size_t i = 0; i < c.objects.size(); ++i) {
    int o = 0;
    for (const auto& w : c.objects[i]) {
      off[i].push_back(o);
      o += int(cached_model(s, w.word).basis.size());
    }
  }
  return off;
}

GradedFreeComplex close_strand(const StrandComplex& c, const PotentialSpec& s) {
  GradedFreeComplex g;
  g.N = s.N;
  g.lo = c.lo;
  const auto off = generator_offsets(c, s);
  for (const auto& deg : c.objects) {
    std::vector<int> q;
    for (const auto& w : deg) {
      const RingModel& m = cached_model(s, w.word);
      for (int i = 0; i < int(m.basis.size()); ++i) q.push_back(m.basis_qdeg(i) + w.shift);
    }
    g.gens.push_back(std::move(q));
  }
  for (std::size_t i = 0; i < c.objects.size(); ++i) {
    const int rows = i + 1 < c.objects.size() ? int(g.gens[i + 1].size()) : 0;
    SparseMat d(rows, int(g.gens[i].size()));
    for (const auto& t : c.diff[i]) {
      const WordSummand& src = c.objects[i][t.src];
      const WordSummand& tgt = c.objects[i + 1][t.tgt];
      const RingModel& ms = cached_model(s, src.word);
      const RingModel& mt = cached_model(s, tgt.word);
      const Poly p = closed_map_poly(t.op, t.piece, src.word, tgt.word) * Q(t.coeff);
      for (int b = 0; b < int(ms.basis.size()); ++b) {
        const Poly img = p * Poly::monomial(ms.basis[b], 1);
        for (const auto& [bi, coeff] : mt.coordinates(img)) {
          if (coeff.size() != 1 && s.graded())
            throw std::logic_error("induced map entry is not a single monomial");
          mpq_class v = 0;
          for (const auto& [mono, cv] : coeff.terms()) v += cv;  // a = 1 for the deformed potential
          if (s.graded()) {
            const int m_exp = coeff.terms().begin()->first.e[kVarA];
            const int qs = g.gens[i][off[i][t.src] + b], qt = g.gens[i + 1][off[i + 1][t.tgt] + bi];
            if (qs - qt != 2 * s.N * m_exp) throw std::logic_error("induced map has the wrong degree");
          }
          d.add(off[i + 1][t.tgt] + bi, off[i][t.src] + b, v);
        }
      }
    }
    g.d.push_back(std::move(d));
  }
  return g;
}

}  // namespace kr
