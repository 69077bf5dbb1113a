#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kr/rasmussen.hpp"

using namespace kr;

TEST_CASE("two-strand torus knots") {
  CHECK(s_N_torus(3, 2).s == 2);
  CHECK(s_N_torus(3, 3).s == 4);
  for (int N = 2; N <= 4; ++N) {
    CHECK(s_N_torus(1, N).s == 0);
    CHECK(s_N_torus(-1, N).s == 0);
    CHECK(s_N_torus(1, N, SMethod::Recursion).s == 0);
  }
  for (int k = 1; k <= 3; ++k) CHECK(s_N_torus(2 * k + 1, 2).s == 2 * k);
  CHECK_THROWS_AS(s_N_torus(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(s_N_torus(9, 3, SMethod::Pipeline, 8), ResourceGuardError);
  CHECK(s_N_torus(9, 3, SMethod::Recursion).s == 4 * 2 * (3 - 1));
}

TEST_CASE("pipeline and recursion agree, mirrors flip the sign") {
  for (int N = 2; N <= 3; ++N)
    for (int n : {1, 3, 5}) {
      auto p = s_N_torus(n, N, SMethod::Pipeline);
      auto r = s_N_torus(n, N, SMethod::Recursion);
      CHECK(p.s == r.s);
      CHECK(s_N_torus(-n, N).s == -p.s);
      CHECK(s_N_torus(-n, N, SMethod::Recursion).s == -r.s);
      CHECK_FALSE(p.certificates.empty());
    }
}

TEST_CASE("homology away from degree 0 is torsion") {
  for (int N = 2; N <= 3; ++N)
    for (int n : {-3, 3, 5}) {
      auto h = torus_equivariant_homology(n, N);
      for (auto& [deg, m] : h)
        if (deg != 0) CHECK(m.free.empty());
      CHECK(h[0].free.size() == std::size_t(N));
    }
}

TEST_CASE("linearity steps") {
  CHECK(linearity_step_general(0, 1, 0, 0, 2) == 2);
  CHECK_FALSE(linearity_step_general(0, 2, 0, 3, 2).has_value());
  CHECK(linearity_step_general(5, -1, 0, 0, 3) == 5 + 4);
  CHECK(linearity_step_cable(4, 3, 0, 0, 2) == 6);
  for (int cp = 0; cp <= 3; ++cp)
    for (int cm = 0; cm <= 3; ++cm) CHECK(linearity_step_cable(7, -1, cp, cm, 2) == 9);
  CHECK_FALSE(linearity_step_cable(0, 2, 0, 2, 3).has_value());
  CHECK(linearity_step_cable(0, 3, 0, 2, 3) == 4);
}

TEST_CASE("cables of slice and amphicheiral knots") {
  CHECK(s2_cable_formula(CableBase::Slice, 3) == 6);
  CHECK(s2_cable_formula(CableBase::Amphicheiral, 0) == 0);
  CHECK(s2_cable_formula(CableBase::Slice, -1) == 0);
  CHECK(s2_cable_formula(CableBase::Slice, -3) == -4);
  // the formula is the step recursion from the (2, 1) cable
  for (auto base : {CableBase::Slice, CableBase::Amphicheiral}) {
    int s = 0;
    for (int k = 1; k <= 5; ++k) {
      s = *linearity_step_cable(s, k, 0, 0, 2);
      CHECK(s2_cable_formula(base, k) == s);
    }
  }
  CHECK(parse_cable_base("amphicheiral") == CableBase::Amphicheiral);
  CHECK_THROWS_AS(parse_cable_base("ribbon"), std::invalid_argument);
}

TEST_CASE("vanishing bounds") {
  CHECK(vanishing_bound(TwistRegion::Cable, 1, 0, 0, 3));
  CHECK_FALSE(vanishing_bound(TwistRegion::Cable, 2, 0, 2, 3));
  for (int k = 1; k <= 4; ++k) CHECK(vanishing_bound(TwistRegion::Cable, k, 5, 5, 2));
  CHECK(vanishing_bound(TwistRegion::General, 1, 0, 0, 3));
  CHECK_FALSE(vanishing_bound(TwistRegion::General, 1, 0, 1, 3));
  CHECK(vanishing_bound(TwistRegion::General, -1, 0, 0, 3));
}

TEST_CASE("exact triangles between consecutive twists") {
  for (int k = 1; k <= 2; ++k)
    for (Variant v : {Variant::Generic, Variant::Equivariant, Variant::Deformed}) {
      auto r = verify_les(k, 2, v);
      CHECK_MESSAGE(r.ok, "k=", k, " ", variant_name(v), ": ", r.detail);
      CHECK(r.twist.exact);
      CHECK(r.cone.exact);
      CHECK(r.twist.euler_vanishes);
      if (v == Variant::Deformed) {
        CHECK(r.gornik_certificate);
        CHECK(r.degreewise_match);
        long quot = 0;
        for (auto& [key, x] : r.twist.h_quot) quot += x;
        CHECK(quot == 0);
      }
    }
  auto r3 = verify_les(1, 3, Variant::Deformed);
  CHECK(r3.ok);
  CHECK_THROWS_AS(verify_les(0, 2, Variant::Generic), std::invalid_argument);
}
