#include "kr/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "kr/cache.hpp"
#include "kr/gornik.hpp"
#include "kr/rasmussen.hpp"
#include "kr/twostrand.hpp"
#include "kr/verify.hpp"

namespace kr {

namespace {

using nlohmann::json;

struct Common {
  int N = 2;
  std::string format = "json";
  std::string cache_dir;
  bool no_cache = false;
  std::size_t guard = 4096;
};

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

int parse_torus_link(const std::string& spec) {
  const std::string prefix = "torus:2:";
  if (spec.rfind(prefix, 0) != 0) throw InvalidInput("--link must look like torus:2:<n>");
  const std::string rest = spec.substr(prefix.size());
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(rest, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (rest.empty() || used != rest.size()) throw InvalidInput("bad twist count in --link: '" + rest + "'");
  return n;
}

json poincare_json(const BigradedDims& d) {
  json out = json::array();
  for (const auto& t : poincare(d)) out.push_back({{"t", t.t}, {"q", t.q}, {"rank", t.rank}});
  return out;
}

json record(const std::string& object, int N, const std::string& potential) {
  return {{"object", object},   {"N", N},         {"potential", potential}, {"poincare", json::array()},
          {"torsion", json::array()}, {"s", nullptr}, {"certificates", json::array()}};
}

// free summands as Poincare terms plus torsion terms
void module_json(const std::map<int, GradedModuleOverA>& h, json& rec) {
  BigradedDims free;
  json torsion = json::array();
  for (const auto& [t, m] : h) {
    for (int q : m.free) ++free[{t, q}];
    auto tor = m.torsion;
    std::sort(tor.begin(), tor.end());
    for (auto [q, k] : tor) torsion.push_back({{"t", t}, {"q", q}, {"a_exponent", k}});
  }
  rec["poincare"] = poincare_json(free);
  rec["torsion"] = torsion;
}

std::optional<ResultCache> open_cache(const Common& c) {
  if (c.no_cache) return std::nullopt;
  std::string dir = c.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("KR_CACHE_DIR")) dir = env;
  if (dir.empty()) return std::nullopt;
  return ResultCache(dir);
}

void emit(const json& rec, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    out << "t,q,rank\n";
    for (const auto& p : rec["poincare"]) out << p["t"] << ',' << p["q"] << ',' << p["rank"] << '\n';
    return;
  }
  out << rec.dump(2) << '\n';
}

// Looks the record up, or computes and stores it; adds version and hash.
json cached(const Common& c, const std::string& key, const std::function<json()>& compute) {
  auto cache = open_cache(c);
  if (cache)
    if (auto hit = cache->lookup(key)) return *hit;
  json rec = compute();
  rec["version"] = kToolVersion;
  rec["input_hash"] = ResultCache(".").input_hash(key);
  if (cache) {
    try {
      cache->store(key, rec);
    } catch (const std::exception&) {
      // an unwritable cache only costs recomputation
    }
  }
  return rec;
}

json homology_record(int n, int N, Variant v, std::size_t guard) {
  const PotentialSpec s(N, v);
  const StrandComplex c = strand_torus(n, N);
  if (closed_rank(c, N) > long(guard))
    throw ResourceGuardError("closed complex exceeds " + std::to_string(guard) + " generators");
  json rec = record("T(2," + std::to_string(n) + ")", N, variant_name(v));
  rec["certificates"] = {"simplified twist complex in place of the cube of resolutions",
                         "closed words evaluated in certified quotient rings"};
  const GradedFreeComplex closed = close_strand(c, s);
  if (v == Variant::Equivariant) {
    const auto h = homology_over_A(closed);
    module_json(h, rec);
    rec["certificates"].push_back("decomposition into free and torsion pieces over F[a]");
    if (n % 2 != 0) {
      auto it = h.find(0);
      rec["s"] = extract_s_N(it == h.end() ? GradedModuleOverA{} : it->second, N);
      rec["certificates"].push_back("s read off the free part of H^0");
    }
  } else if (v == Variant::Generic) {
    rec["poincare"] = poincare_json(homology_at_a0(closed));
  } else {
    rec["poincare"] = poincare_json(homology_at_a1(closed));
    rec["certificates"].push_back("deformed dimensions reported at q = 0");
  }
  return rec;
}

json report_json(const VerifyReport& r) {
  json items = json::array();
  for (const auto& i : r.items) items.push_back({{"name", i.name}, {"ok", i.ok}, {"detail", i.detail}});
  return {{"check", r.name}, {"ok", r.ok()}, {"items", items}};
}

void add_common(CLI::App* sub, Common& c, bool with_n = true) {
  if (with_n) sub->add_option("--N", c.N, "rank N >= 2")->check(CLI::Range(2, 16));
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--cache-dir", c.cache_dir, "result cache directory (default $KR_CACHE_DIR)");
  sub->add_flag("--no-cache", c.no_cache, "ignore the cache");
  sub->add_option("--guard", c.guard, "largest closed complex, in generators");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sl(N) homology of two-strand torus links"};
  app.require_subcommand(1);
  Common common;

  auto* hom = app.add_subcommand("homology", "homology of the closure of b^n");
  std::string link, potential = "generic";
  hom->add_option("--link", link, "torus:2:<n>")->required();
  hom->add_option("--potential", potential, "generic, equivariant or deformed");
  add_common(hom, common);

  auto* ras = app.add_subcommand("rasmussen", "s_N of T(2,n)");
  std::vector<int> torus;
  std::string method = "pipeline";
  ras->add_option("--torus", torus, "2 <n>")->required()->expected(2);
  ras->add_option("--method", method, "pipeline or recursion")->check(CLI::IsMember({"pipeline", "recursion"}));
  add_common(ras, common);

  auto* cab = app.add_subcommand("cable-s2", "s_2 of the (2,2k+1) cable of a slice or amphicheiral knot");
  std::string base;
  int k = 0;
  cab->add_option("--base", base, "slice or amphicheiral")->required();
  cab->add_option("--k", k, "twist parameter")->required();
  add_common(cab, common, false);

  auto* st = app.add_subcommand("states", "root-of-unity states of a closed graph");
  std::string graph;
  st->add_option("--graph", graph, "diagram file")->required();
  add_common(st, common);

  auto* ver = app.add_subcommand("verify", "self-checks");
  std::string what;
  std::optional<int> vk, vN;
  ver->add_option("check", what, "eq2, theorem1, les or appendix-basis")
      ->required()
      ->check(CLI::IsMember({"eq2", "theorem1", "les", "appendix-basis"}));
  ver->add_option("--k", vk, "twist parameter");
  ver->add_option("--N", vN, "rank N")->check(CLI::Range(2, 16));

  std::vector<const char*> argv{"krh"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (*hom) {
      const int n = parse_torus_link(link);
      Variant v;
      try {
        v = parse_variant(potential);
      } catch (const std::invalid_argument& e) {
        throw InvalidInput(e.what());
      }
      const std::string key = "homology\ntorus:2:" + std::to_string(n) + "\nN=" + std::to_string(common.N) + "\n" +
                              variant_name(v) + "\nguard=" + std::to_string(common.guard);
      emit(cached(common, key, [&] { return homology_record(n, common.N, v, common.guard); }), common.format, out);
      return kExitOk;
    }
    if (*ras) {
      if (torus[0] != 2) throw InvalidInput("only two-strand torus knots are supported");
      const int n = torus[1];
      if (n % 2 == 0) throw InvalidInput("T(2," + std::to_string(n) + ") is a link; s_N needs a knot");
      const SMethod m = parse_method(method);
      const std::string key = "rasmussen\n" + std::to_string(n) + "\nN=" + std::to_string(common.N) + "\n" + method +
                              "\nguard=" + std::to_string(common.guard);
      json rec = cached(common, key, [&] {
        json r = record("T(2," + std::to_string(n) + ")", common.N, "equivariant");
        if (m == SMethod::Pipeline) module_json(torus_equivariant_homology(n, common.N, common.guard), r);
        const RasmussenResult res = s_N_torus(n, common.N, m, common.guard);
        r["s"] = res.s;
        r["method"] = method_name(res.method);
        r["certificates"] = res.certificates;
        return r;
      });
      emit(rec, common.format, out);
      return kExitOk;
    }
    if (*cab) {
      CableBase b;
      try {
        b = parse_cable_base(base);
      } catch (const std::invalid_argument& e) {
        throw InvalidInput(e.what());
      }
      json rec = record("(2," + std::to_string(2 * k + 1) + ") cable of a " + base + " knot", 2, "equivariant");
      const int s = s2_cable_formula(b, k);
      // the recursion from s_2(K_{2,1}) = s_2(K_{2,-1}) = 0 must land on the same value
      int walk = 0;
      for (int j = 1; j <= k; ++j) walk = *linearity_step_cable(walk, j, 0, 0, 2);
      for (int j = -1; j > k; --j) walk -= *linearity_step_cable(walk, j, 0, 0, 2) - walk;
      rec["s"] = s;
      rec["method"] = "formula";
      rec["certificates"] = {"closed formula for slice or amphicheiral companions",
                             "step-by-step recursion from the (2,1) and (2,-1) cables gives " + std::to_string(walk)};
      emit(rec, common.format, out);
      return walk == s ? kExitOk : kExitFailed;
    }
    if (*st) {
      Diagram d;
      try {
        d = read_diagram_file(graph);
      } catch (const std::exception& e) {
        throw InvalidInput(e.what());
      }
      if (!d.closed()) throw InvalidInput("graph is not closed");
      json list = json::array();
      for (const auto& s : enumerate_states(d, common.N)) {
        json o = json::object();
        for (const auto& [e, x] : s.phi) o[std::to_string(e)] = x;
        list.push_back(o);
      }
      out << list.dump(2) << '\n';
      return kExitOk;
    }
    if (*ver) {
      std::vector<VerifyReport> reports;
      const int kk = vk.value_or(1);
      if (what == "eq2") {
        for (int N : vN ? std::vector<int>{*vN} : std::vector<int>{2, 3, 4}) reports.push_back(verify_saddles(N));
      } else if (what == "theorem1") {
        if (kk < 1) throw InvalidInput("--k must be positive");
        const int N = vN.value_or(2);
        reports.push_back(verify_twist_simplification(kk, N, N == 2 ? 4 : 2));
      } else if (what == "les") {
        if (kk < 1) throw InvalidInput("--k must be positive");
        reports.push_back(verify_triangles(kk, vN.value_or(2)));
      } else {
        for (int N : vN ? std::vector<int>{*vN} : std::vector<int>{2, 3, 4})
          reports.push_back(verify_wide_bases(N, N <= 3));
      }
      json all = json::array();
      bool ok = true;
      for (const auto& r : reports) {
        all.push_back(report_json(r));
        ok = ok && r.ok();
      }
      out << json({{"verify", what}, {"ok", ok}, {"reports", all}}).dump(2) << '\n';
      return ok ? kExitOk : kExitFailed;
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ResourceGuardError& e) {
    err << "resource guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "failed: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitInvalid;
}

}  // namespace kr
