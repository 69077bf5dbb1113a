#include "kr/rasmussen.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "kr/gornik.hpp"
#include "kr/twostrand.hpp"

namespace kr {

std::string method_name(SMethod m) {
  switch (m) {
    case SMethod::Pipeline: return "pipeline";
    case SMethod::Recursion: return "recursion";
    case SMethod::Formula: return "formula";
  }
  return "?";
}

SMethod parse_method(const std::string& s) {
  if (s == "pipeline") return SMethod::Pipeline;
  if (s == "recursion") return SMethod::Recursion;
  if (s == "formula") return SMethod::Formula;
  throw std::invalid_argument("unknown method '" + s + "' (pipeline, recursion)");
}

namespace {

// per generator of close_strand(c, s): the tag of the summand it came from
std::vector<std::vector<int>> generator_tags(const StrandComplex& c, const PotentialSpec& s,
                                             const GradedFreeComplex& closed) {
  const auto off = generator_offsets(c, s);
  std::vector<std::vector<int>> tags(closed.gens.size());
  for (std::size_t i = 0; i < closed.gens.size(); ++i) {
    tags[i].assign(closed.gens[i].size(), 0);
    for (std::size_t j = 0; j < off[i].size(); ++j) {
      const int end = j + 1 < off[i].size() ? off[i][j + 1] : int(closed.gens[i].size());
      for (int g = off[i][j]; g < end; ++g) tags[i][g] = c.objects[i][j].tag;
    }
  }
  return tags;
}

ShortExact split_by_tag(const StrandComplex& c, const PotentialSpec& s, int min_tag, GradedFreeComplex* closed_out) {
  GradedFreeComplex closed = specialize(close_strand(c, s), !s.graded());
  const auto tags = generator_tags(c, s, closed);
  std::vector<std::vector<bool>> mask(tags.size());
  for (std::size_t i = 0; i < tags.size(); ++i)
    for (int t : tags[i]) mask[i].push_back(t >= min_tag);
  if (closed_out) *closed_out = closed;
  return split_by_mask(closed, mask);
}

BigradedDims shifted(const BigradedDims& d, int dh, int dq, bool graded) {
  BigradedDims out;
  for (const auto& [k, v] : d) out[{k.first + dh, graded ? k.second + dq : 0}] += v;
  return out;
}

int get(const BigradedDims& m, int h, int q) {
  auto it = m.find({h, q});
  return it == m.end() ? 0 : it->second;
}

std::string dims_str(const BigradedDims& d) { return d.empty() ? "0" : poincare_string(d); }

}  // namespace

std::map<int, GradedModuleOverA> torus_equivariant_homology(int n, int N, std::size_t guard) {
  if (n % 2 == 0) throw std::invalid_argument("n must be odd for a knot");
  const StrandComplex c = strand_torus(n, N);
  if (closed_rank(c, N) > long(guard))
    throw ResourceGuardError("closed complex of b^" + std::to_string(n) + " exceeds " + std::to_string(guard) +
                             " generators; use --method recursion");
  return homology_over_A(close_strand(c, PotentialSpec(N, Variant::Equivariant)));
}

RasmussenResult s_N_torus(int n, int N, SMethod method, std::size_t guard) {
  if (n % 2 == 0) throw std::invalid_argument("n must be odd for a knot");
  if (N < 2) throw std::invalid_argument("N must be at least 2");
  RasmussenResult r;
  r.method = method;
  if (method == SMethod::Pipeline) {
    auto h = torus_equivariant_homology(n, N, guard);
    r.s = extract_s_N(h[0], N);
    r.certificates = {"twist complex B_" + std::to_string((n - (n > 0 ? 1 : -1)) / 2) + " tensor one crossing",
                      "closure over F[a] decomposed into free and torsion pieces",
                      "s read off the free part of H^0"};
    return r;
  }
  if (method == SMethod::Formula) throw std::invalid_argument("the formula method applies to cables only");
  // T(2, 2k+1) is the (2, 2k+1) cable of the unknot, whose diagram has no
  // crossings outside the twist region
  const int target = (n - 1) / 2;
  int s = 0;
  r.certificates.push_back("unknot: s = 0");
  if (target > 0) {
    for (int k = 1; k <= target; ++k) {
      auto next = linearity_step_cable(s, k, 0, 0, N);
      if (!next) throw std::logic_error("cable step not applicable");
      s = *next;
      r.certificates.push_back("cable step k=" + std::to_string(k) + ": s = " + std::to_string(s));
    }
  } else {
    // K_{2,-1} is also the unknot; walk down from there
    for (int k = -1; k > target; --k) {
      // s(K_{2,2k+1}) = s(K_{2,2k-1}) + step, solved for the lower cable
      auto next = linearity_step_cable(s, k, 0, 0, N);
      if (!next) throw std::logic_error("cable step not applicable");
      s -= *next - s;
      r.certificates.push_back("cable step k=" + std::to_string(k) + ": s = " + std::to_string(s));
    }
  }
  r.s = s;
  return r;
}

std::optional<int> linearity_step_general(int s_prev, int k, int c_plus, int c_minus, int N) {
  if (2 * k >= c_minus + 2 || 2 * k <= -c_plus - 2) return s_prev + 2 * (N - 1);
  return std::nullopt;
}

std::optional<int> linearity_step_cable(int s_prev, int k, int c_plus, int c_minus, int N) {
  if (k >= c_minus + 1 || k <= -c_plus - 1) return s_prev + 2 * (N - 1);
  if (N == 2 && k != 0) return s_prev + 2;
  return std::nullopt;
}

CableBase parse_cable_base(const std::string& s) {
  if (s == "slice") return CableBase::Slice;
  if (s == "amphicheiral") return CableBase::Amphicheiral;
  throw std::invalid_argument("unknown base '" + s + "' (slice, amphicheiral)");
}

int s2_cable_formula(CableBase, int k) { return k >= 0 ? 2 * k : 2 * k + 2; }

bool vanishing_bound(TwistRegion kind, int k, int c_plus, int c_minus, int N) {
  if (kind == TwistRegion::General) return 2 * k >= c_minus + 2 || 2 * k <= -c_plus - 2;
  // the doubled knot has the homology of the doubled unknot when N = 2
  if (N == 2) return k != 0;
  return k >= c_minus + 1 || k <= -c_plus - 1;
}

LesReport verify_les(int k, int N, Variant v) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  LesReport r;
  r.k = k;
  r.N = N;
  r.variant = v;
  PotentialSpec s(N, v);
  const bool graded = s.graded();
  const StrandComplex X = strand_crossing(1, N);
  std::ostringstream why;

  // D_k: the top 2k-1 degrees of the twist complex are B_{k-1}{q^{2(N-1)}}
  const StrandComplex dk = strand_tensor(strand_B(k, N), X);
  const ShortExact twist = split_by_tag(dk, s, -2 * k + 2, nullptr);
  r.twist = long_exact_sequence(twist);
  const BigradedDims prev = homology_dims(specialize(close_strand(strand_tensor(strand_B(k - 1, N), X), s), !graded));
  r.sub_is_previous = r.twist.h_sub == shifted(prev, 0, 2 * (N - 1), graded);
  if (!r.sub_is_previous) why << "sub " << dims_str(r.twist.h_sub) << " vs previous " << dims_str(prev) << "; ";

  // the cone of x1 - x3 on Gamma = closure of (wide edge) x (crossing)
  const StrandComplex cone = strand_tensor(strand_cone_x13(N), X);
  GradedFreeComplex cone_closed;
  const ShortExact cs = split_by_tag(cone, s, 1, &cone_closed);
  r.cone = long_exact_sequence(cs);
  const BigradedDims hcone = r.cone.h_whole;
  r.quotient_is_cone = r.twist.h_quot == shifted(hcone, -2 * k, 2 * k * (N + 1) - 1, graded);
  if (!r.quotient_is_cone) why << "quotient " << dims_str(r.twist.h_quot) << " vs cone " << dims_str(hcone) << "; ";

  // x1 - x3 as a chain map H(Gamma) -> H(Gamma){q^-2}, read off the cone
  GradedFreeComplex target = cs.sub;  // target^h = sub^{h+1}
  target.lo -= 1;
  ChainMapF f;
  for (int h = cone_closed.lo; h < cone_closed.hi(); ++h) {
    const int i = h - cone_closed.lo;
    const SparseMat& pr_here = cs.proj.at(h);
    const SparseMat& in_next = cs.incl.at(h + 1);
    // positions of whole generators in the quotient (degree h) and sub (degree h+1)
    std::map<int, int> qpos, spos;
    for (int c = 0; c < pr_here.cols(); ++c)
      for (const auto& [row, _] : pr_here.column(c)) qpos[c] = row;
    for (int c = 0; c < in_next.cols(); ++c)
      for (const auto& [row, _] : in_next.column(c)) spos[row] = c;
    SparseMat m(int(cs.sub.gens[i + 1].size()), int(cs.quotient.gens[i].size()));
    for (const auto& [g, qp] : qpos)
      for (const auto& [row, val] : cone_closed.d[i].column(g)) {
        auto it = spos.find(row);
        if (it != spos.end()) m.set(it->second, qp, val);
      }
    f[h] = std::move(m);
  }
  const BigradedDims rank_f = induced_rank(cs.quotient, target, f);
  r.connecting_is_map = r.cone.rank_connecting == rank_f;
  if (!r.connecting_is_map) why << "connecting map rank differs from x1 - x3; ";
  // H^h(cone) = coker(f^{h-1}) + ker(f^h)
  BigradedDims predicted;
  std::set<std::pair<int, int>> keys;
  for (const auto& [key, _] : r.cone.h_quot) {
    keys.insert(key);
    keys.insert({key.first + 1, key.second});
  }
  for (const auto& [key, _] : r.cone.h_sub) keys.insert(key);
  for (const auto& [h, q] : keys) {
    const int qq = q;
    const int coker = get(r.cone.h_sub, h, qq) - get(rank_f, h - 1, qq);
    const int ker = get(r.cone.h_quot, h, qq) - get(rank_f, h, qq);
    if (coker + ker) predicted[{h, qq}] = coker + ker;
  }
  r.cone_from_kernel = predicted == hcone;
  if (!r.cone_from_kernel) why << "cone " << dims_str(hcone) << " vs ker/coker " << dims_str(predicted) << "; ";

  r.ok = r.twist.exact && r.twist.euler_vanishes && r.cone.exact && r.cone.euler_vanishes && r.sub_is_previous &&
         r.quotient_is_cone && r.connecting_is_map && r.cone_from_kernel;
  if (v == Variant::Deformed) {
    r.gornik_certificate = cone_vanishing_certificate(wide_replacement(2, 1), N);
    r.degreewise_match = r.twist.h_sub == r.twist.h_whole;
    if (r.gornik_certificate && !hcone.empty()) why << "certified acyclic cone has homology; ";
    r.ok = r.ok && r.gornik_certificate && r.degreewise_match && hcone.empty();
  }
  if (!r.twist.exact) why << "twist triangle: " << r.twist.detail;
  if (!r.cone.exact) why << "cone triangle: " << r.cone.detail;
  r.detail = why.str();
  return r;
}

}  // namespace kr
