#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "kr/gornik.hpp"
#include "kr/homology.hpp"

using namespace kr;

namespace {

long brute_deformed(const Diagram& d, int N) {
  PotentialSpec s(N, Variant::Deformed);
  long t = 0;
  for (auto& [k, v] : mf_homology(reduced_graph_mf(d, s))) t += v;
  return t;
}

}  // namespace

TEST_CASE("state counts of small graphs") {
  Diagram unknot = parse_diagram("O 1");
  CHECK(deformed_dimension(unknot, 2) == 2);
  CHECK(deformed_dimension(unknot, 3) == 3);
  for (int N = 2; N <= 4; ++N) {
    CHECK(deformed_dimension(word_diagram("W"), N) == N * (N - 1));
    CHECK(deformed_dimension(word_diagram("WW"), N) == 2 * N * (N - 1));
    CHECK(deformed_dimension(torus_diagram(3), N) == N);
    CHECK(deformed_dimension(torus_diagram(2), N) == N * N);
    CHECK(deformed_dimension(torus_diagram(-4), N) == N * N);
  }
}

TEST_CASE("states against the factorization oracle") {
  for (int N = 2; N <= 3; ++N)
    for (std::string w : {"W", "WW"}) CHECK(deformed_dimension(word_diagram(w), N) == brute_deformed(word_diagram(w), N));
  CHECK(deformed_dimension(parse_diagram("O 1\nO 2"), 3) == brute_deformed(parse_diagram("O 1\nO 2"), 3));
}

TEST_CASE("every enumerated state obeys the rules and the relations") {
  for (int N = 2; N <= 4; ++N)
    for (const Diagram& d : {word_diagram("WW"), torus_diagram(3), wide_replacement(3, 1), wide_replacement(4, 2)}) {
      auto states = enumerate_states(d, N);
      CHECK(std::is_sorted(states.begin(), states.end()));
      CHECK(std::adjacent_find(states.begin(), states.end()) == states.end());
      for (auto& st : states) {
        CHECK(is_state(d, N, st));
        std::string why;
        CHECK_MESSAGE(eigenvalues_consistent(d, N, st, &why), why);
      }
    }
  // all colors equal on a wide edge violates the rules and the relations
  Diagram w = word_diagram("W");
  GornikState bad;
  for (int e : w.edges()) bad.phi[e] = 0;
  CHECK_FALSE(is_state(w, 2, bad));
  std::string why;
  CHECK_FALSE(eigenvalues_consistent(w, 2, bad, &why));
  CHECK_FALSE(why.empty());
  CHECK_THROWS_AS(enumerate_states(parse_diagram("W 1 2 3 4"), 2), std::invalid_argument);
}

TEST_CASE("multiplication eigenvalues and invertibility") {
  Diagram d = wide_replacement(2, 1);
  auto states = enumerate_states(d, 3);
  REQUIRE_FALSE(states.empty());
  for (auto& st : states)
    for (auto& [e, k] : st.phi) CHECK(multiplication_action(st, e, 3) == Cyc::zeta(3, k));
  CHECK_FALSE(is_multiplication_invertible(d, 3, 1, 1));
  for (int N = 2; N <= 4; ++N) {
    CHECK(cone_vanishing_certificate(wide_replacement(2, 1), N));
    // a wide edge followed by an odd number of crossings comes from a knot
    CHECK(cone_vanishing_certificate(wide_replacement(4, 1), N));
    CHECK(cone_vanishing_certificate(wide_replacement(6, 1), N));
    // followed by an even number it comes from a two-component link
    CHECK_FALSE(cone_vanishing_certificate(wide_replacement(3, 1), N));
  }
  // the two outputs of a theta graph meet the same two inputs
  CHECK_FALSE(cone_vanishing_certificate(parse_diagram("W 1 2 1 2"), 2));
  CHECK_THROWS_AS(cone_vanishing_certificate(torus_diagram(3), 2), std::invalid_argument);
}

TEST_CASE("knot closures have N states and two-component links N^2") {
  for (int N = 2; N <= 3; ++N)
    for (int n = -4; n <= 4; ++n) {
      if (!n) continue;
      Diagram d = torus_diagram(n);
      long expect = d.link_components() == 1 ? N : N * N;
      CHECK(deformed_dimension(d, N) == expect);
    }
}
