#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kr/complex.hpp"
#include "kr/homotopy.hpp"
#include "kr/morphisms.hpp"

using namespace kr;

TEST_CASE("saddle compositions hold exactly and the mixed ones vanish up to homotopy") {
  for (int N = 2; N <= 4; ++N)
    for (Variant v : {Variant::Generic, Variant::Equivariant, Variant::Deformed}) {
      for (auto& c : saddle_identities(PotentialSpec(N, v)))
        CHECK_MESSAGE(c.ok, "N=", N, " ", variant_name(v), ": ", c.name, " ", c.detail);
    }
}

TEST_CASE("null homotopies are found and verified") {
  PotentialSpec s(2, Variant::Generic);
  // x1, x5, x3 all mark one arc
  MF arc = tensor(arc_mf(s, 3, 5), arc_mf(s, 5, 1));
  Morphism zero{zero_matrix(arc.size(), arc.size()), 0, 2};
  auto h0 = null_homotopy(arc, arc, zero);
  REQUIRE(h0);
  CHECK(mat_is_zero(h0->m));

  Morphism m1 = multiplication(arc, Poly::x(1)), m5 = multiplication(arc, Poly::x(5)),
           m3 = multiplication(arc, Poly::x(3));
  auto h = null_homotopy(arc, arc, m1 - m5);
  REQUIRE(h);
  CHECK(verifies_homotopy(arc, arc, m1 - m5, *h));
  // symmetric and transitive on this sample
  CHECK(homotopic(arc, arc, m5, m1));
  CHECK(homotopic(arc, arc, m5, m3));
  CHECK(homotopic(arc, arc, m1, m3));
  // multiplication by a mark is not null-homotopic on a closed circle
  MF circle = tensor(arc_mf(s, 1, 5), arc_mf(s, 5, 1));
  CHECK_FALSE(null_homotopy(circle, circle, multiplication(circle, Poly::x(1))).has_value());
  CHECK(null_homotopy(circle, circle, multiplication(circle, Poly::x(1) - Poly::x(5))).has_value());

  auto chi = chi_maps(s), xi = xi_maps(s);
  Morphism f = compose(xi.one, chi.zero);
  auto hf = null_homotopy(chi.arcs, xi.arcs, f);
  REQUIRE(hf);
  CHECK(verifies_homotopy(chi.arcs, xi.arcs, f, *hf));
}

TEST_CASE("homotopy scalars") {
  PotentialSpec s(2, Variant::Generic);
  MF arc = tensor(arc_mf(s, 3, 5), arc_mf(s, 5, 1));
  Morphism m1 = multiplication(arc, Poly::x(1)), m5 = multiplication(arc, Poly::x(5));
  auto c = homotopy_scalar(arc, arc, Poly(3) * m5, m1);
  REQUIRE(c);
  CHECK(*c == 3);
}

TEST_CASE("double-edge homotopy package") {
  for (int N = 2; N <= 3; ++N) {
    PotentialSpec s(N, Variant::Generic);
    DoubleEdgeModel m = build_double_edge_model(s);
    auto first = homotopy_package(m);
    REQUIRE_FALSE(first.empty());
    for (auto& c : first) CHECK_MESSAGE(c.ok, "N=", N, ": ", c.name, " ", c.detail);
    // the scalars are deterministic
    auto second = homotopy_package(build_double_edge_model(s));
    REQUIRE(second.size() == first.size());
    for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i].detail == second[i].detail);
  }
}

TEST_CASE("chain maps modulo homotopy between the saddle ends") {
  PotentialSpec s(2, Variant::Generic);
  auto chi = chi_maps(s);
  // degree-one even maps arcs -> wide are spanned by chi^0
  auto basis = chain_maps_mod_homotopy(chi.arcs, chi.wide, 0, 1);
  CHECK(basis.size() == 1u);
}
