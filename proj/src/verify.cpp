#include "kr/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kr/complex.hpp"
#include "kr/homology.hpp"
#include "kr/rasmussen.hpp"
#include "kr/twostrand.hpp"

namespace kr {

bool VerifyReport::ok() const {
  return !items.empty() && std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.ok; });
}

void VerifyReport::add(std::string n, bool ok, std::string detail) {
  items.push_back(CheckItem{std::move(n), ok, std::move(detail)});
}

namespace {

const Variant kVariants[] = {Variant::Generic, Variant::Equivariant, Variant::Deformed};

std::string dims_text(const BigradedDims& d) { return d.empty() ? "0" : poincare_string(d); }

// the oracle reports the equivariant potential at a = 0
BigradedDims oracle_dims(int n, const PotentialSpec& s) {
  return complex_homology(close_braid(braid_complex(s, n)));
}

std::string module_text(const std::map<int, GradedModuleOverA>& h) {
  std::ostringstream o;
  for (const auto& [deg, m] : h) {
    if (m.free.empty() && m.torsion.empty()) continue;
    std::vector<int> f = m.free;
    auto t = m.torsion;
    std::sort(f.begin(), f.end());
    std::sort(t.begin(), t.end());
    o << "h" << deg << ":";
    for (int q : f) o << " F{" << q << "}";
    for (auto [q, k] : t) o << " T{" << q << "," << k << "}";
    o << "; ";
  }
  return o.str();
}

}  // namespace

VerifyReport verify_saddles(int N) {
  VerifyReport r;
  r.name = "saddle identities N=" + std::to_string(N);
  for (Variant v : kVariants)
    for (const auto& c : saddle_identities(PotentialSpec(N, v))) r.add(variant_name(v) + ": " + c.name, c.ok, c.detail);
  return r;
}

VerifyReport verify_twist_simplification(int k, int N, int oracle_limit) {
  VerifyReport r;
  r.name = "twist simplification k=" + std::to_string(k) + " N=" + std::to_string(N);
  for (int sign : {1, -1})
    for (Variant v : kVariants) {
      const PotentialSpec s(N, v);
      const int n = 2 * k * sign;
      const std::string tag = variant_name(v) + " b^" + std::to_string(n);
      const StrandComplex cube = strand_cube(n, N), simple = strand_B(k * sign, N);
      const BigradedDims a = strand_homology(cube, s), b = strand_homology(simple, s);
      r.add(tag + ": closed cube = closed simplified", a == b, dims_text(a) + " | " + dims_text(b));
      if (v == Variant::Equivariant) {
        const auto ma = module_text(homology_over_A(close_strand(cube, s)));
        const auto mb = module_text(homology_over_A(close_strand(simple, s)));
        r.add(tag + ": same module over F[a]", ma == mb, ma);
      }
      if (std::abs(n) <= oracle_limit) {
        const BigradedDims o = oracle_dims(n, s);
        const BigradedDims ref = v == Variant::Equivariant ? strand_homology(cube, PotentialSpec(N, Variant::Generic)) : a;
        r.add(tag + ": factorization oracle agrees", o == ref, dims_text(o));
      }
    }
  if (k == 1)
    for (Variant v : kVariants) {
      const auto red = reduce_b_squared(build_double_edge_model(PotentialSpec(N, v)));
      r.add(variant_name(v) + ": C(b^2) eliminates to a complex isomorphic to B_1",
            red.braid_is_complex && red.replacement_ok && red.isomorphic_to_B1);
    }
  return r;
}

VerifyReport verify_triangles(int k, int N) {
  VerifyReport r;
  r.name = "exact triangles k=" + std::to_string(k) + " N=" + std::to_string(N);
  for (Variant v : kVariants) {
    const LesReport les = verify_les(k, N, v);
    const std::string tag = variant_name(v) + ": ";
    r.add(tag + "twist triangle exact", les.twist.exact, les.twist.detail);
    r.add(tag + "twist triangle Euler sum vanishes", les.twist.euler_vanishes);
    r.add(tag + "cone triangle exact", les.cone.exact, les.cone.detail);
    r.add(tag + "cone triangle Euler sum vanishes", les.cone.euler_vanishes);
    r.add(tag + "first term is D_{k-1} shifted", les.sub_is_previous);
    r.add(tag + "third term is the shifted cone", les.quotient_is_cone);
    r.add(tag + "connecting map has the rank of x1 - x3", les.connecting_is_map);
    r.add(tag + "cone = coker + ker of x1 - x3", les.cone_from_kernel);
    if (v == Variant::Deformed) {
      r.add(tag + "state certificate: x1 - x3 invertible", les.gornik_certificate);
      r.add(tag + "H(D_{k-1}) and H(D_k) agree degreewise", les.degreewise_match,
            dims_text(les.twist.h_sub) + " | " + dims_text(les.twist.h_whole));
    }
    if (!les.detail.empty()) r.add(tag + "no discrepancies", false, les.detail);
  }
  return r;
}

VerifyReport verify_wide_bases(int N, bool with_oracle) {
  VerifyReport r;
  r.name = "wide edge bases N=" + std::to_string(N);
  for (Variant v : kVariants) {
    const PotentialSpec s(N, v);
    for (int j = 1; j <= 2; ++j) {
      const std::string word(j, 'W');
      const std::string tag = variant_name(v) + " " + word + ": ";
      RingModel m = ring_model(s, word);
      std::string why;
      r.add(tag + "rewriting system certified", certify_ring_model(m, &why), why);
      const long want = j == 1 ? long(N) * (N - 1) : 2L * N * (N - 1);
      r.add(tag + "rank " + std::to_string(want), long(m.basis.size()) == want, std::to_string(m.basis.size()));
      // exponents of (first top mark, first bottom mark, extra middle mark)
      std::set<std::vector<int>> got, expected;
      for (const Mono& b : m.basis) {
        std::vector<int> e;
        for (int c : m.coords) e.push_back(b[c]);
        got.insert(e);
      }
      for (int i = 0; i < N; ++i)
        for (int jj = 0; jj + 1 < N; ++jj) {
          if (j == 1) expected.insert({i, jj});
          else
            for (int eps = 0; eps < 2; ++eps) expected.insert({i, jj, eps});
        }
      r.add(tag + "basis x^i y^j" + (j == 2 ? std::string(" z^e") : ""), got == expected);
      // the class of 1 sits in q^{3-2N} for one wide edge, q^{2-2N} for two
      r.add(tag + "lowest degree", m.lowest == 4 - 2 * N - j, std::to_string(m.lowest));
      if (v == Variant::Equivariant) {
        const auto h = closed_graph_homology(word_diagram(word), s);
        r.add(tag + "free over F[a]", h.free_over_a);
      }
      if (with_oracle) {
        auto dims = mf_homology(reduced_graph_mf(word_diagram(word), s));
        std::multiset<int> oq, mq;
        long total = 0;
        for (const auto& [key, d] : dims) {
          total += d;
          for (int t = 0; t < d; ++t) oq.insert(key.second);
        }
        for (int i = 0; i < int(m.basis.size()); ++i) mq.insert(s.graded() ? m.basis_qdeg(i) : 0);
        r.add(tag + "factorization oracle agrees", total == want && oq == mq, std::to_string(total));
      }
    }
  }
  return r;
}

}  // namespace kr
