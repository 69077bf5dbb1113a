#include "kr/moy.hpp"

#include "kr/complex.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kr {

std::vector<int> Diagram::edges() const {
  std::set<int> e;
  for (const auto& v : vertices) e.insert(v.edges.begin(), v.edges.end());
  return {e.begin(), e.end()};
}

bool Diagram::closed() const {
  std::map<int, int> heads, tails;
  for (const auto& v : vertices) {
    if (v.kind == VertexKind::Circle) {
      ++heads[v.edges[0]];
      ++tails[v.edges[0]];
      continue;
    }
    ++heads[v.edges[0]];
    ++heads[v.edges[1]];
    ++tails[v.edges[2]];
    ++tails[v.edges[3]];
  }
  for (int e : edges())
    if (heads[e] != 1 || tails[e] != 1) return false;
  return true;
}

int Diagram::crossings(VertexKind k) const {
  return int(std::count_if(vertices.begin(), vertices.end(), [&](const Vertex& v) { return v.kind == k; }));
}

int Diagram::link_components() const {
  const auto es = edges();
  std::map<int, int> parent;
  for (int e : es) parent[e] = e;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& v : vertices) {
    if (v.kind == VertexKind::Wide) throw std::invalid_argument("components need a crossing-only diagram");
    if (v.kind == VertexKind::Circle) continue;
    // strands run in_top -> out_bot and in_bot -> out_top
    parent[find(v.edges[0])] = find(v.edges[3]);
    parent[find(v.edges[1])] = find(v.edges[2]);
  }
  std::set<int> roots;
  for (int e : es) roots.insert(find(e));
  return int(roots.size());
}

std::string Diagram::canonical() const {
  std::ostringstream out;
  for (const auto& v : vertices) {
    switch (v.kind) {
      case VertexKind::Positive: out << "X+"; break;
      case VertexKind::Negative: out << "X-"; break;
      case VertexKind::Wide: out << "W"; break;
      case VertexKind::Circle: out << "O"; break;
    }
    for (int e : v.edges) out << ' ' << e;
    out << '\n';
  }
  return out.str();
}

Diagram parse_diagram(const std::string& text) {
  Diagram d;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    auto bad = [&](const std::string& why) {
      return std::invalid_argument("line " + std::to_string(lineno) + ": " + why);
    };
    Vertex v;
    std::size_t want = 4;
    if (tag == "X+") v.kind = VertexKind::Positive;
    else if (tag == "X-") v.kind = VertexKind::Negative;
    else if (tag == "W") v.kind = VertexKind::Wide;
    else if (tag == "O") v.kind = VertexKind::Circle, want = 1;
    else throw bad("unknown record '" + tag + "'");
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      int e = 0;
      try {
        e = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw bad("edge id '" + tok + "' is not an integer");
      }
      if (used != tok.size()) throw bad("edge id '" + tok + "' is not an integer");
      if (e < 0) throw bad("edge ids must be nonnegative");
      v.edges.push_back(e);
    }
    if (v.edges.size() != want) throw bad("expected " + std::to_string(want) + " edge ids");
    d.vertices.push_back(std::move(v));
  }
  if (d.vertices.empty()) throw std::invalid_argument("diagram has no vertices");
  return d;
}

Diagram read_diagram_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open diagram file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_diagram(ss.str());
}

namespace {

int edge_top(int s, int n) { return 1 + 2 * (((s % n) + n) % n); }
int edge_bot(int s, int n) { return 2 + 2 * (((s % n) + n) % n); }

Vertex piece(VertexKind k, int p, int n) {
  return Vertex{k, {edge_top(p, n), edge_bot(p, n), edge_top(p + 1, n), edge_bot(p + 1, n)}};
}

}  // namespace

Diagram torus_diagram(int n) {
  if (n == 0) throw std::invalid_argument("torus diagram needs n != 0");
  Diagram d;
  const int len = std::abs(n);
  for (int p = 0; p < len; ++p) d.vertices.push_back(piece(n > 0 ? VertexKind::Positive : VertexKind::Negative, p, len));
  return d;
}

Diagram wide_replacement(int n, int replaced) {
  if (replaced < 0 || replaced > std::abs(n)) throw std::invalid_argument("cannot replace that many crossings");
  Diagram d = torus_diagram(n);
  for (int p = 0; p < replaced; ++p) d.vertices[p].kind = VertexKind::Wide;
  return d;
}

Diagram word_diagram(const std::string& word) {
  const int n = int(word.size());
  Diagram d;
  int wides = 0;
  for (char c : word) wides += c == 'W';
  if (wides == 0) {
    d.vertices = {Vertex{VertexKind::Circle, {1}}, Vertex{VertexKind::Circle, {2}}};
    return d;
  }
  // bare arcs merge their edges: relabel slice s by the slice after the last wide edge
  std::vector<int> label(n);
  for (int s = 0; s < n; ++s) {
    int t = s;
    while (word[((t - 1) % n + n) % n] != 'W') t = ((t - 1) % n + n) % n;
    label[s] = t;
  }
  for (int p = 0; p < n; ++p) {
    if (word[p] != 'W') continue;
    d.vertices.push_back(Vertex{VertexKind::Wide,
                                {edge_top(label[p], n), edge_bot(label[p], n), edge_top(label[(p + 1) % n], n),
                                 edge_bot(label[(p + 1) % n], n)}});
  }
  return d;
}

namespace {

// Local factorizations of a crossingless closed graph; each wide edge is
// followed by the arcs leaving it so that marks glue as early as possible.
std::vector<MF> graph_parts(const Diagram& d, const PotentialSpec& s) {
  if (!d.closed()) throw std::invalid_argument("graph is not closed");
  if (!d.crossingless()) throw std::invalid_argument("graph has crossings");
  const auto es = d.edges();
  if (2 * es.size() + 1 > std::size_t(kMaxVars)) throw std::length_error("graph too large for the mark budget");
  std::map<int, int> idx;
  for (std::size_t i = 0; i < es.size(); ++i) idx[es[i]] = int(i);
  // each edge runs from its tail mark (at the vertex it leaves) to its head mark
  auto tail = [&](int e) { return 1 + 2 * idx[e]; };
  auto head = [&](int e) { return 2 + 2 * idx[e]; };
  std::vector<MF> parts;
  for (const auto& v : d.vertices) {
    if (v.kind == VertexKind::Circle) {
      parts.push_back(arc_mf(s, tail(v.edges[0]), head(v.edges[0])));
      parts.push_back(arc_mf(s, head(v.edges[0]), tail(v.edges[0])));
    } else {
      parts.push_back(wide_edge_mf(s, tail(v.edges[2]), tail(v.edges[3]), head(v.edges[0]), head(v.edges[1])));
      for (int k = 2; k < 4; ++k) parts.push_back(arc_mf(s, tail(v.edges[k]), head(v.edges[k])));
    }
  }
  return parts;
}

}  // namespace

MF closed_graph_mf(const Diagram& d, const PotentialSpec& s) {
  const auto parts = graph_parts(d, s);
  MF m = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) m = tensor(m, parts[i]);
  return m;
}

MF reduced_graph_mf(const Diagram& d, const PotentialSpec& s, std::size_t guard) {
  const auto parts = graph_parts(d, s);
  MF m = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (m.size() * parts[i].size() > guard) throw ResourceGuardError("closed graph beyond the size guard");
    m = exclude_all_linear(tensor(m, parts[i])).result();
  }
  return m;
}

}  // namespace kr
