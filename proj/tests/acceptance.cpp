// One line per acceptance criterion; the exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "kr/gornik.hpp"
#include "kr/homology.hpp"
#include "kr/rasmussen.hpp"
#include "kr/verify.hpp"

using namespace kr;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "first failure: " << what;
      ok = false;
    }
  }
};

void absorb(Outcome& o, const VerifyReport& r) {
  for (const auto& i : r.items) o.require(i.ok, r.name + ": " + i.name + " " + i.detail);
}

long total(const BigradedDims& d) {
  long t = 0;
  for (const auto& [k, v] : d) t += v;
  return t;
}

LaurentQ strip(LaurentQ l) {
  std::erase_if(l, [](const auto& kv) { return kv.second == 0; });
  return l;
}

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) o.require(false, "time budget exceeded");
  if (!o.ok) ++failures;
  std::printf("criterion %d: %s  %s (%.2f s of %.0f s)%s%s\n", id, o.ok ? "PASS" : "FAIL", title.c_str(), secs,
              budget_s, o.note.str().empty() ? "" : "; ", o.note.str().c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "saddle compositions exact, N = 2, 3, 4", 1, [](Outcome& o) {
    for (int N = 2; N <= 4; ++N) absorb(o, verify_saddles(N));
  });

  criterion(2, "homotopy package of the double wide edge, N = 2, 3", 30, [](Outcome& o) {
    for (int N = 2; N <= 3; ++N)
      for (const auto& c : homotopy_package(build_double_edge_model(PotentialSpec(N, Variant::Generic))))
        o.require(c.ok, "N=" + std::to_string(N) + " " + c.name + " " + c.detail);
  });

  criterion(3, "closed b^{+-2k} = closed B_{+-k}, k = 1..3, N = 2, 3, all potentials; b^2 reduces to B_1", 300,
            [](Outcome& o) {
              for (int N = 2; N <= 3; ++N)
                for (int k = 1; k <= 3; ++k) absorb(o, verify_twist_simplification(k, N, N == 2 ? 4 : 2));
            });

  criterion(4, "closed wide edges: ranks, bases, q^{3-2N}, freeness over F[a], N <= 4", 600, [](Outcome& o) {
    for (int N = 2; N <= 4; ++N) absorb(o, verify_wide_bases(N, N <= 3));
  });

  criterion(5, "state counts = deformed dimensions of closed b^n, |n| <= 4, N <= 3", 600, [](Outcome& o) {
    for (int N = 2; N <= 3; ++N)
      for (int n = -4; n <= 4; ++n) {
        if (n == 0) continue;
        const Diagram d = torus_diagram(n);
        const PotentialSpec s(N, Variant::Deformed);
        const long states = deformed_dimension(d, N);
        const std::string tag = "N=" + std::to_string(N) + " n=" + std::to_string(n);
        const long ring = total(strand_homology(strand_cube(n, N), s));
        o.require(states == ring, tag + " states vs closed cube");
        if (std::abs(n) <= (N == 2 ? 4 : 2))
          o.require(states == total(complex_homology(close_braid(braid_complex(s, n)))), tag + " states vs oracle");
        const long expect = d.link_components() == 1 ? N : long(N) * N;
        o.require(states == expect, tag + " knot N / link N^2");
      }
  });

  criterion(6, "100 random complexes decompose with witnesses; a = 1 dims = free ranks", 120, [](Outcome& o) {
    std::mt19937_64 rng(0x5eed);
    for (int it = 0; it < 100; ++it) {
      const int N = 2 + int(rng() % 3);
      const auto c = random_complex(rng, N, 3 + int(rng() % 2), 1 + int(rng() % 3));
      const auto w = decompose_with_witness(c);
      o.require(w.verified, "witness " + std::to_string(it));
      const auto h = homology_from_pieces(w.pieces);
      std::map<int, int> at1;
      for (const auto& [k, v] : homology_at_a1(c)) at1[k.first] += v;
      for (int deg = c.lo; deg <= c.hi(); ++deg) {
        const auto f = h.find(deg);
        const int free = f == h.end() ? 0 : int(f->second.free.size());
        o.require(at1[deg] == free, "a = 1 dimension, sample " + std::to_string(it));
      }
    }
  });

  criterion(7, "s_2(T(2,2k+1)) = 2k, k = 1..3; s_3(T(2,3)) = 4; mirrors", 600, [](Outcome& o) {
    for (int k = 1; k <= 3; ++k) {
      const int s = s_N_torus(2 * k + 1, 2, SMethod::Pipeline).s;
      o.require(s == 2 * k, "s_2 T(2," + std::to_string(2 * k + 1) + ") = " + std::to_string(s));
      o.require(s_N_torus(-(2 * k + 1), 2, SMethod::Pipeline).s == -s, "mirror k=" + std::to_string(k));
    }
    const int s3 = s_N_torus(3, 3, SMethod::Pipeline).s;
    o.require(s3 == 4, "s_3 T(2,3) = " + std::to_string(s3));
    o.require(s_N_torus(-3, 3, SMethod::Pipeline).s == -s3, "mirror s_3");
  });

  criterion(8, "exact triangles k = 1, 2, N = 2; deformed twist matches degreewise", 120, [](Outcome& o) {
    for (int k = 1; k <= 2; ++k) {
      absorb(o, verify_triangles(k, 2));
      const LesReport d = verify_les(k, 2, Variant::Deformed);
      o.require(d.gornik_certificate && d.degreewise_match, "deformed k=" + std::to_string(k) + " " + d.detail);
    }
  });

  criterion(9, "Euler characteristic fixed by every elimination step; closed cube(2k) vs closed B_k", 120,
            [](Outcome& o) {
              for (int N = 2; N <= 3; ++N)
                for (int k = 1; k <= 3; ++k)
                  for (int sign : {1, -1}) {
                    const PotentialSpec s(N, Variant::Generic);
                    const auto cube = close_strand(strand_cube(2 * k * sign, N), s);
                    const auto simple = close_strand(strand_B(k * sign, N), s);
                    const std::string tag = "N=" + std::to_string(N) + " k=" + std::to_string(k * sign);
                    bool step_ok = false;
                    const auto h = homology_at_a0(cube, &step_ok);
                    o.require(step_ok, tag + " cube elimination steps");
                    bool step_ok_b = false;
                    (void)homology_at_a0(simple, &step_ok_b);
                    o.require(step_ok_b, tag + " simplified elimination steps");
                    o.require(strip(euler_characteristic(cube)) == strip(euler_characteristic(simple)), tag + " chi");
                    o.require(strip(euler_characteristic(h)) == strip(euler_characteristic(cube)), tag + " chi of homology");
                  }
            });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
