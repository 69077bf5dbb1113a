#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "kr/homology.hpp"
#include "kr/morphisms.hpp"
#include "kr/moy.hpp"

using namespace kr;

namespace {

const Variant kVariants[] = {Variant::Generic, Variant::Equivariant, Variant::Deformed};

// q-degrees of [N]: N-1, N-3, ..., 1-N
std::map<int, int> quantum_integer(int N) {
  std::map<int, int> r;
  for (int l = 0; l < N; ++l) ++r[N - 1 - 2 * l];
  return r;
}

std::map<int, int> q_profile(const std::map<std::pair<int, int>, int>& dims) {
  std::map<int, int> r;
  for (auto& [k, v] : dims)
    if (v) r[k.second] += v;
  return r;
}

long total(const std::map<std::pair<int, int>, int>& dims) {
  long t = 0;
  for (auto& [k, v] : dims) t += v;
  return t;
}

MF circle_with_two_marks(const PotentialSpec& s) { return tensor(arc_mf(s, 1, 5), arc_mf(s, 5, 1)); }

}  // namespace

TEST_CASE("constructed factorizations square to the potential") {
  for (int N = 2; N <= 4; ++N)
    for (Variant v : kVariants) {
      PotentialSpec s(N, v);
      std::string why;
      MF arc = arc_mf(s, 3, 1);
      CHECK_MESSAGE(mf_is_valid(arc, &why), why);
      CHECK(arc.w == potential(s, 1) - potential(s, 3));
      MF wide = wide_edge_mf(s, 1, 2, 3, 4);
      CHECK_MESSAGE(mf_is_valid(wide, &why), why);
      CHECK(wide.w == potential(s, 1) + potential(s, 2) - potential(s, 3) - potential(s, 4));
      MF both = tensor(arc_mf(s, 3, 1), arc_mf(s, 4, 2));
      CHECK(mf_is_valid(both));
      CHECK(both.w == arc_mf(s, 3, 1).w + arc_mf(s, 4, 2).w);
      CHECK(same_mf(both, arcs_mf(s)));
      // the two arcs crossing virtually
      CHECK(same_mf(tensor(arc_mf(s, 4, 1), arc_mf(s, 3, 2)), crossed_arcs_mf(s)));
    }
}

TEST_CASE("closed circle homology is the quantum integer") {
  for (int N = 2; N <= 4; ++N) {
    PotentialSpec s(N, Variant::Generic);
    auto dims = mf_homology(closed_graph_mf(parse_diagram("O 1"), s));
    CHECK(total(dims) == N);
    CHECK(q_profile(dims) == quantum_integer(N));
    // disjoint union multiplies q-dimensions
    auto two = q_profile(mf_homology(closed_graph_mf(parse_diagram("O 1\nO 2"), s)));
    std::map<int, int> sq;
    for (auto& [a, x] : quantum_integer(N))
      for (auto& [b, y] : quantum_integer(N)) sq[a + b] += x * y;
    CHECK(two == sq);
  }
  PotentialSpec d(3, Variant::Deformed);
  CHECK(total(mf_homology(closed_graph_mf(parse_diagram("O 1"), d))) == 3);
}

TEST_CASE("mark exclusion") {
  for (int N = 2; N <= 3; ++N) {
    PotentialSpec s(N, Variant::Generic);
    MF c = circle_with_two_marks(s);
    REQUIRE(c.boundary.empty());
    Exclusion e = exclude_variable(c, 5);
    REQUIRE(e.applied);
    CHECK(e.reduced.size() < c.size());
    CHECK(mf_is_valid(e.reduced));
    CHECK(is_chain_map(e.reduced, c, Morphism{e.iota, 0, 0}));
    auto before = mf_homology(c), after = mf_homology(e.reduced);
    CHECK(before == after);
    CHECK(total(after) == N);
  }
  PotentialSpec s(2, Variant::Generic);
  CHECK_THROWS_AS(exclude_variable(arc_mf(s, 3, 1), 1), std::invalid_argument);
  // a mark with no linear row: the input comes back unchanged
  MF w = wide_edge_mf(s, 1, 2, 3, 4);
  MF closed = substitute(w, {{3, 1}, {4, 2}});
  Exclusion none = exclude_variable(closed, 2);
  CHECK_FALSE(none.applied);
}

TEST_CASE("closing the double wide edge through exclusions") {
  // of the two middle marks of stacked wide edges one is linear in the
  // other, the second survives with a quadratic row
  for (int N = 2; N <= 3; ++N) {
    PotentialSpec s(N, Variant::Generic);
    MF two = tensor(wide_edge_mf(s, 1, 2, 5, 6), wide_edge_mf(s, 5, 6, 3, 4));
    auto chain = exclude_all_linear(two);
    const MF& r = chain.result();
    CHECK(mf_is_valid(r));
    CHECK(std::count_if(r.vars.begin(), r.vars.end(), [](int v) { return v > 4; }) == 1);
    CHECK(r.size() * 2 == two.size());
  }
}

TEST_CASE("closed wide edges have the catalogued ranks") {
  for (int N = 2; N <= 3; ++N) {
    PotentialSpec s(N, Variant::Generic);
    CHECK(total(mf_homology(closed_graph_mf(word_diagram("W"), s))) == N * (N - 1));
  }
  PotentialSpec s(2, Variant::Generic);
  CHECK(total(mf_homology(reduced_graph_mf(word_diagram("WW"), s))) == 2 * 2 * 1);
}

TEST_CASE("morphism algebra") {
  PotentialSpec s(2, Variant::Generic);
  MF w = wide_mf(s);
  Morphism id = identity_morphism(w);
  Morphism m1 = multiplication(w, Poly::x(1));
  CHECK(is_chain_map(w, w, id));
  CHECK(is_chain_map(w, w, m1));
  CHECK(is_homogeneous_morphism(w, w, m1));
  Morphism diff = compose(m1, id) - m1;
  CHECK(mat_is_zero(diff.m));
  Morphism twice = Poly(2) * m1;
  CHECK(mat_is_zero((twice - m1 - m1).m));
}
