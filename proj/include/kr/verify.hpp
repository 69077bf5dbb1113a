#pragma once
// Self-checks behind the `verify` command; each returns named items with a
// pass flag and a short detail.

#include <string>
#include <vector>

namespace kr {

struct CheckItem {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  std::string name;
  std::vector<CheckItem> items;
  bool ok() const;
  void add(std::string name, bool ok, std::string detail = {});
};

// Saddle compositions and their null-homotopies for one N.
VerifyReport verify_saddles(int N);
// Closed b^{2k} against closed B_k (and b^{-2k} against B_{-k}) for every
// potential; the factorization oracle joins in when `oracle_limit` allows
// |2k| <= oracle_limit; for k = 1 the reduction of C(b^2) to B_1.
VerifyReport verify_twist_simplification(int k, int N, int oracle_limit = -1);
// Both exact triangles for twists k-1 -> k, all potentials.
VerifyReport verify_triangles(int k, int N);
// Bases, q-shifts and freeness of the closed single and double wide edge.
VerifyReport verify_wide_bases(int N, bool with_oracle = true);

}  // namespace kr
