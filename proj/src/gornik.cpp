#include "kr/gornik.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "kr/ring.hpp"

namespace kr {

namespace {

struct UnionFind {
  std::map<int, int> parent;
  int find(int x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return parent[x] = x;
    return it->second = find(it->second);
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool crossing(VertexKind k) { return k == VertexKind::Positive || k == VertexKind::Negative; }

bool wide_ok(const Vertex& v, const std::map<int, int>& phi) {
  const int a = phi.at(v.edges[0]), b = phi.at(v.edges[1]);
  const int c = phi.at(v.edges[2]), d = phi.at(v.edges[3]);
  return a != b && std::multiset<int>{a, b} == std::multiset<int>{c, d};
}

void require_closed(const Diagram& g, int N) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (!g.closed()) throw std::invalid_argument("graph is not closed");
}

Cyc evaluate(const Poly& p, const std::map<int, int>& exps, int N) {
  Cyc out(N, 0);
  for (const auto& [m, c] : p.terms()) {
    int k = 0;
    for (int v = 0; v < kMaxVars; ++v) {
      if (!m[v]) continue;
      auto it = exps.find(v);
      if (it == exps.end()) throw std::logic_error("relation uses an unassigned mark");
      k += m[v] * it->second;
    }
    out += Cyc(N, c) * Cyc::zeta(N, k);
  }
  return out;
}

}  // namespace

std::vector<GornikState> enumerate_states(const Diagram& g, int N) {
  require_closed(g, N);
  // crossings identify outputs with the opposite inputs
  UnionFind uf;
  for (int e : g.edges()) uf.find(e);
  for (const auto& v : g.vertices)
    if (crossing(v.kind)) {
      uf.unite(v.edges[2], v.edges[1]);
      uf.unite(v.edges[3], v.edges[0]);
    }
  std::map<int, std::vector<int>> members;
  for (int e : g.edges()) members[uf.find(e)].push_back(e);
  std::vector<const Vertex*> wides;
  for (const auto& v : g.vertices)
    if (v.kind == VertexKind::Wide) wides.push_back(&v);
  // classes touching many wide-edge ends first
  std::map<int, int> degree;
  for (const Vertex* w : wides)
    for (int e : w->edges) ++degree[uf.find(e)];
  std::vector<int> order;
  for (const auto& [root, _] : members) order.push_back(root);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return degree[x] > degree[y]; });
  // a wide edge is checked once its last class is colored
  std::map<int, int> position;
  for (int i = 0; i < int(order.size()); ++i) position[order[i]] = i;
  std::vector<std::vector<const Vertex*>> due(order.size());
  for (const Vertex* w : wides) {
    int last = 0;
    for (int e : w->edges) last = std::max(last, position[uf.find(e)]);
    due[last].push_back(w);
  }

  std::vector<GornikState> out;
  std::map<int, int> color;  // class root -> exponent
  std::map<int, int> phi;
  std::function<void(int)> go = [&](int i) {
    if (i == int(order.size())) {
      GornikState s;
      for (const auto& [root, es] : members)
        for (int e : es) s.phi[e] = color[root];
      out.push_back(std::move(s));
      return;
    }
    for (int k = 0; k < N; ++k) {
      for (int e : members[order[i]]) phi[e] = k;
      color[order[i]] = k;
      bool ok = true;
      for (const Vertex* w : due[i])
        if (!wide_ok(*w, phi)) {
          ok = false;
          break;
        }
      if (ok) go(i + 1);
    }
    for (int e : members[order[i]]) phi.erase(e);
    color.erase(order[i]);
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

long deformed_dimension(const Diagram& g, int N) { return long(enumerate_states(g, N).size()); }

bool is_state(const Diagram& g, int N, const GornikState& s) {
  require_closed(g, N);
  for (int e : g.edges()) {
    auto it = s.phi.find(e);
    if (it == s.phi.end() || it->second < 0 || it->second >= N) return false;
  }
  for (const auto& v : g.vertices) {
    if (crossing(v.kind) && (s.phi.at(v.edges[2]) != s.phi.at(v.edges[1]) || s.phi.at(v.edges[3]) != s.phi.at(v.edges[0])))
      return false;
    if (v.kind == VertexKind::Wide && !wide_ok(v, s.phi)) return false;
  }
  return true;
}

Cyc multiplication_action(const GornikState& s, int edge, int N) {
  auto it = s.phi.find(edge);
  if (it == s.phi.end()) throw std::invalid_argument("edge " + std::to_string(edge) + " is not colored");
  return Cyc::zeta(N, it->second);
}

bool is_multiplication_invertible(const Diagram& g, int N, int e, int f) {
  const auto states = enumerate_states(g, N);
  if (e == f) return false;
  for (const auto& s : states)
    if ((multiplication_action(s, e, N) - multiplication_action(s, f, N)).is_zero()) return false;
  return true;
}

bool cone_vanishing_certificate(const Diagram& g, int N) {
  for (const auto& v : g.vertices)
    if (v.kind == VertexKind::Wide) return is_multiplication_invertible(g, N, v.edges[2], v.edges[0]);
  throw std::invalid_argument("graph has no wide edge");
}

bool eigenvalues_consistent(const Diagram& g, int N, const GornikState& s, std::string* why) {
  PotentialSpec spec(N, Variant::Deformed);
  spec.deform = N + 1;  // critical points at the N-th roots of unity
  auto fail = [&](const std::string& what) {
    if (why) *why = what;
    return false;
  };
  for (int e : g.edges()) {
    auto it = s.phi.find(e);
    if (it == s.phi.end()) return fail("edge " + std::to_string(e) + " is not colored");
    // w'(x) = (N+1)(x^N - 1)
    Cyc x = Cyc::zeta(N, it->second), p(N, 1);
    for (int i = 0; i < N; ++i) p *= x;
    if (!(p - Cyc(N, 1)).is_zero()) return fail("w'(x) at edge " + std::to_string(e));
  }
  // marks 1, 2 = outputs, 3, 4 = inputs of a wide edge
  const auto [u, v] = uv_quotients(spec, 1, 2, 3, 4);
  const Poly sum = Poly::x(1) + Poly::x(2) - Poly::x(3) - Poly::x(4);
  const Poly prod = Poly::x(1) * Poly::x(2) - Poly::x(3) * Poly::x(4);
  for (const auto& vx : g.vertices) {
    const auto& ed = vx.edges;
    if (crossing(vx.kind)) {
      if (s.phi.at(ed[2]) != s.phi.at(ed[1]) || s.phi.at(ed[3]) != s.phi.at(ed[0]))
        return fail("crossing on edges " + std::to_string(ed[0]) + "," + std::to_string(ed[1]));
      continue;
    }
    if (vx.kind != VertexKind::Wide) continue;
    const std::map<int, int> ex{{1, s.phi.at(ed[2])}, {2, s.phi.at(ed[3])}, {3, s.phi.at(ed[0])}, {4, s.phi.at(ed[1])}};
    const std::string at = " at the wide edge into " + std::to_string(ed[0]) + "," + std::to_string(ed[1]);
    if (!evaluate(sum, ex, N).is_zero()) return fail("x1 + x2 = x3 + x4" + at);
    if (!evaluate(prod, ex, N).is_zero()) return fail("x1 x2 = x3 x4" + at);
    if (!evaluate(u, ex, N).is_zero()) return fail("u = 0" + at);
    if (!evaluate(v, ex, N).is_zero()) return fail("v = 0" + at);
  }
  return true;
}

}  // namespace kr
