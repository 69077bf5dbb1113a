#pragma once
// Knotted MOY graphs: the line-oriented diagram format, a few builders, and
// the matrix factorization of a crossingless closed graph.

#include <iosfwd>
#include <string>
#include <vector>

#include "kr/mf.hpp"

namespace kr {

enum class VertexKind { Positive, Negative, Wide, Circle };

// Crossings and wide edges list (in_top, in_bot, out_top, out_bot); a circle
// lists its single edge.
struct Vertex {
  VertexKind kind;
  std::vector<int> edges;
};

struct Diagram {
  std::vector<Vertex> vertices;

  std::vector<int> edges() const;  // sorted, distinct
  bool closed() const;             // every edge has exactly one head and one tail
  int crossings(VertexKind k) const;
  bool crossingless() const { return crossings(VertexKind::Positive) + crossings(VertexKind::Negative) == 0; }
  // connected components of the underlying link; throws unless crossing-only
  int link_components() const;
  std::string canonical() const;  // one record per line, as parsed
};

// Throws std::invalid_argument naming the offending line.
Diagram parse_diagram(const std::string& text);
Diagram read_diagram_file(const std::string& path);

// Closure of b^n (T(2,n)); crossing p has inputs on edges of slice p and
// outputs on slice p+1 (mod n), edge ids 1+2s (top) and 2+2s (bottom).
Diagram torus_diagram(int n);
// Closure of a word over {A, W}: A pieces are bare arcs, W pieces wide edges.
Diagram word_diagram(const std::string& word);
// Closure of b^n with its first `replaced` crossings replaced by wide edges.
Diagram wide_replacement(int n, int replaced);

// Matrix factorization of a crossingless closed diagram, marks = edge ids.
MF closed_graph_mf(const Diagram& d, const PotentialSpec& s);
// A homotopy equivalent factorization built factor by factor with linear
// exclusions in between; throws ResourceGuardError when an intermediate
// tensor product would exceed `guard` generators.
MF reduced_graph_mf(const Diagram& d, const PotentialSpec& s, std::size_t guard = 4096);

}  // namespace kr
