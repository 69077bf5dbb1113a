#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kr/linalg.hpp"

using namespace kr;

namespace {

std::vector<std::vector<mpq_class>> random_matrix(std::mt19937_64& rng, int r, int c, int rank) {
  // product of an r x rank and a rank x c matrix has rank at most `rank`
  std::vector<std::vector<mpq_class>> a(r, std::vector<mpq_class>(rank)), b(rank, std::vector<mpq_class>(c));
  for (auto& row : a)
    for (auto& v : row) v = long(rng() % 5) - 2;
  for (auto& row : b)
    for (auto& v : row) v = long(rng() % 5) - 2;
  std::vector<std::vector<mpq_class>> m(r, std::vector<mpq_class>(c, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      for (int k = 0; k < rank; ++k) m[i][j] += a[i][k] * b[k][j];
  return m;
}

SparseRow to_row(const std::vector<mpq_class>& v) {
  SparseRow r;
  for (int j = 0; j < int(v.size()); ++j)
    if (v[j] != 0) r.push_back({j, v[j]});
  return r;
}

}  // namespace

TEST_CASE("sparse rank agrees with dense rank") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 40; ++it) {
    int r = 1 + int(rng() % 6), c = 1 + int(rng() % 6), k = 1 + int(rng() % 4);
    auto m = random_matrix(rng, r, c, k);
    SparseSystem sys(c);
    for (auto& row : m) sys.add(to_row(row));
    CHECK(sys.rank() == dense_rank(m));
    CHECK(sys.consistent());
  }
}

TEST_CASE("solutions and kernels verify") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 40; ++it) {
    int r = 1 + int(rng() % 5), c = 2 + int(rng() % 5);
    auto m = random_matrix(rng, r, c, 1 + int(rng() % 3));
    std::vector<mpq_class> x0(c);
    for (auto& v : x0) v = long(rng() % 7) - 3;
    SparseSystem sys(c);
    for (auto& row : m) {
      mpq_class rhs = 0;
      for (int j = 0; j < c; ++j) rhs += row[j] * x0[j];
      REQUIRE(sys.add(to_row(row), rhs));
    }
    auto sol = sys.solve();
    REQUIRE(sol);
    for (auto& row : m) {
      mpq_class lhs = 0, rhs = 0;
      for (int j = 0; j < c; ++j) {
        lhs += row[j] * (*sol)[j];
        rhs += row[j] * x0[j];
      }
      CHECK(lhs == rhs);
    }
    auto ker = sys.kernel();
    CHECK(int(ker.size()) == c - sys.rank());
    for (auto& kv : ker)
      for (auto& row : m) {
        mpq_class s = 0;
        for (int j = 0; j < c; ++j) s += row[j] * kv[j];
        CHECK(s == 0);
      }
  }
}

TEST_CASE("inconsistent systems are flagged") {
  SparseSystem sys(2);
  CHECK(sys.add({{0, 1}, {1, 1}}, 1));
  CHECK_FALSE(sys.add({{0, 2}, {1, 2}}, 3));
  CHECK_FALSE(sys.consistent());
  CHECK_FALSE(sys.solve());
}

TEST_CASE("reduce returns zero on the row space") {
  SparseSystem sys(3);
  sys.add({{0, 1}, {2, 1}});
  sys.add({{1, 1}, {2, -1}});
  CHECK(sys.reduce({{0, 1}, {1, 1}}).empty());
  CHECK_FALSE(sys.reduce({{2, 1}}).empty());
}

TEST_CASE("dense rank over a cyclotomic field") {
  int n = 5;
  Cyc z = Cyc::zeta(n);
  std::vector<std::vector<Cyc>> m = {{Cyc(n, 1), z}, {z * z, z * z * z}};
  CHECK(dense_rank(m) == 1);
  m[1][1] = z;
  CHECK(dense_rank(m) == 2);
  // Vandermonde matrix at distinct roots of unity is invertible
  std::vector<std::vector<Cyc>> v(n, std::vector<Cyc>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v[i][j] = Cyc::zeta(n, i * j);
  CHECK(dense_rank(v) == n);
}
