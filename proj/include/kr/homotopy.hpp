#pragma once
// Homotopy solver: finds h with f = d h + h d (for even f) inside the finite
// ansatz forced by homogeneity, and computes spaces of chain maps modulo
// null-homotopic ones.

#include <optional>
#include <vector>

#include "kr/mf.hpp"

namespace kr {

// Monomials of q-degree exactly D in the given mark variables (and a when
// with_a). In filtered mode, all degrees D - 2N m, m >= 0, are included and
// a is not used.
std::vector<Mono> ansatz_monomials(const std::vector<int>& vars, int N, int D, bool with_a, bool filtered);

// One condition  f - sum_k c_k g_k = [d, h_cond]  between X and Y.
struct HomotopyCondition {
  const MF* X = nullptr;
  const MF* Y = nullptr;
  Morphism f;
  std::vector<Morphism> g;  // same size for all conditions sharing c
};

struct CombinationSolution {
  std::vector<mpq_class> c;
  std::vector<Morphism> h;  // one per condition
};

// Solves all conditions jointly for scalars c (shared) and homotopies h.
std::optional<CombinationSolution> solve_homotopy_conditions(const std::vector<HomotopyCondition>& conds,
                                                            int ncoef);

// h with f = d_Y h - (-1)^{|h|} h d_X, verified by re-expansion.
std::optional<Morphism> null_homotopy(const MF& X, const MF& Y, const Morphism& f);
bool homotopic(const MF& X, const MF& Y, const Morphism& f, const Morphism& g);
// The scalar c with f ~ c g, if any (g must not be null-homotopic).
std::optional<mpq_class> homotopy_scalar(const MF& X, const MF& Y, const Morphism& f, const Morphism& g);

// Representatives of a basis of {chain maps X -> Y of the given parity and
// q-degree} / {null-homotopic maps}.
std::vector<Morphism> chain_maps_mod_homotopy(const MF& X, const MF& Y, int parity, int qdeg);

// Re-expansion check used by the solver and the tests.
bool verifies_homotopy(const MF& X, const MF& Y, const Morphism& f, const Morphism& h);

}  // namespace kr
