#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kr/cache.hpp"
#include "kr/cli.hpp"

using namespace kr;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path fresh_dir(const std::string& name) {
  std::random_device rd;
  fs::path p = fs::temp_directory_path() / ("krh-" + name + "-" + std::to_string(rd()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<fs::path> entries(const fs::path& dir) {
  std::vector<fs::path> r;
  for (auto& e : fs::directory_iterator(dir)) r.push_back(e.path());
  return r;
}

}  // namespace

TEST_CASE("the documented examples") {
  auto r = run({"rasmussen", "--torus", "2", "3", "--N", "2", "--no-cache"});
  REQUIRE(r.code == kExitOk);
  json j = json::parse(r.out);
  CHECK(j["s"] == 2);
  CHECK(j["object"] == "T(2,3)");
  CHECK(j["N"] == 2);
  for (const char* key : {"potential", "poincare", "torsion", "certificates", "version", "input_hash"})
    CHECK_MESSAGE(j.contains(key), key);

  auto c = run({"cable-s2", "--base", "amphicheiral", "--k", "0"});
  REQUIRE(c.code == kExitOk);
  CHECK(json::parse(c.out)["s"] == 0);

  auto v = run({"verify", "theorem1", "--k", "1", "--N", "2"});
  CHECK(v.code == kExitOk);
  CHECK(json::parse(v.out)["ok"] == true);
}

TEST_CASE("homology output") {
  auto r = run({"homology", "--link", "torus:2:2", "--N", "2", "--potential", "generic", "--no-cache"});
  REQUIRE(r.code == kExitOk);
  json j = json::parse(r.out);
  int total = 0;
  for (auto& p : j["poincare"]) total += p["rank"].get<int>();
  CHECK(total == 4);
  auto csv = run({"homology", "--link", "torus:2:2", "--N", "2", "--potential", "generic", "--format", "csv",
                  "--no-cache"});
  REQUIRE(csv.code == kExitOk);
  CHECK(csv.out.rfind("t,q,rank\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == long(j["poincare"].size()) + 1);

  auto d = run({"homology", "--link", "torus:2:3", "--N", "3", "--potential", "deformed", "--no-cache"});
  REQUIRE(d.code == kExitOk);
  total = 0;
  json dj = json::parse(d.out);
  for (auto& p : dj["poincare"]) total += p["rank"].get<int>();
  CHECK(total == 3);
}

TEST_CASE("exit codes") {
  CHECK(run({"homology", "--link", "torus:3:2", "--N", "2", "--potential", "generic"}).code == kExitInvalid);
  CHECK(run({"homology", "--link", "torus:2:3", "--N", "2", "--potential", "magic"}).code == kExitInvalid);
  CHECK(run({"rasmussen", "--torus", "2", "4", "--N", "2"}).code == kExitInvalid);
  CHECK(run({"rasmussen", "--torus", "2", "3", "--N", "1"}).code == kExitInvalid);
  CHECK(run({"frobnicate"}).code == kExitInvalid);
  CHECK(run({"states", "--graph", "/nonexistent/graph.txt", "--N", "2"}).code == kExitInvalid);
  auto g = run({"homology", "--link", "torus:2:41", "--N", "4", "--potential", "generic", "--guard", "16",
                "--no-cache"});
  CHECK(g.code == kExitGuard);
  CHECK(run({"rasmussen", "--torus", "2", "41", "--N", "4", "--guard", "16", "--no-cache"}).code == kExitGuard);
  CHECK(run({"rasmussen", "--torus", "2", "41", "--N", "4", "--method", "recursion", "--no-cache"}).code ==
        kExitOk);
}

TEST_CASE("states of a graph file") {
  fs::path dir = fresh_dir("states");
  fs::path f = dir / "w.txt";
  std::ofstream(f) << "W 1 2 2 1\n";
  auto r = run({"states", "--graph", f.string(), "--N", "3"});
  REQUIRE(r.code == kExitOk);
  json j = json::parse(r.out);
  CHECK(j.size() == 6u);
  std::ofstream(dir / "open.txt") << "W 1 2 3 4\n";
  CHECK(run({"states", "--graph", (dir / "open.txt").string(), "--N", "2"}).code == kExitInvalid);
  std::ofstream(dir / "junk.txt") << "Q 1 2\n";
  CHECK(run({"states", "--graph", (dir / "junk.txt").string(), "--N", "2"}).code == kExitInvalid);
  fs::remove_all(dir);
}

TEST_CASE("cache hits are byte-identical") {
  fs::path dir = fresh_dir("cache");
  std::vector<std::string> args = {"homology", "--link", "torus:2:5", "--N", "2", "--potential", "equivariant",
                                   "--cache-dir", dir.string()};
  auto first = run(args);
  REQUIRE(first.code == kExitOk);
  REQUIRE(entries(dir).size() == 1u);
  auto second = run(args);
  CHECK(second.out == first.out);
  auto uncached = run({"homology", "--link", "torus:2:5", "--N", "2", "--potential", "equivariant", "--no-cache"});
  CHECK(uncached.out == first.out);

  // a corrupt entry is recomputed and repaired
  fs::path e = entries(dir)[0];
  std::ofstream(e, std::ios::trunc) << "{ not json";
  auto third = run(args);
  CHECK(third.out == first.out);
  json repaired;
  CHECK_NOTHROW(repaired = json::parse(std::ifstream(e)));
  CHECK(repaired.contains("record"));
  fs::remove_all(dir);
}

TEST_CASE("a version bump invalidates entries") {
  fs::path dir = fresh_dir("version");
  ResultCache old_cache(dir, "0.9.0"), cur(dir);
  old_cache.store("key", json{{"x", 1}});
  CHECK(old_cache.lookup("key"));
  CHECK_FALSE(cur.lookup("key"));
  CHECK(old_cache.input_hash("key") != cur.input_hash("key"));
  // an entry renamed onto another key's path is rejected
  cur.store("other", json{{"x", 2}});
  fs::copy_file(cur.entry_path("other"), cur.entry_path("key"), fs::copy_options::overwrite_existing);
  CHECK_FALSE(cur.lookup("key"));
  CHECK(cur.lookup("other") == json{{"x", 2}});
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  fs::remove_all(dir);
}

TEST_CASE("concurrent writers never leave partial entries") {
  fs::path dir = fresh_dir("race");
  ResultCache cache(dir);
  json big = json::array();
  for (int i = 0; i < 20000; ++i) big.push_back(i);
  std::vector<std::thread> ts;
  for (int t = 0; t < 8; ++t)
    ts.emplace_back([&] {
      for (int i = 0; i < 20; ++i) cache.store("shared", json{{"payload", big}});
    });
  bool all_whole = true;
  std::thread reader([&] {
    for (int i = 0; i < 200; ++i) {
      auto hit = cache.lookup("shared");
      if (hit && (*hit)["payload"].size() != big.size()) all_whole = false;
    }
  });
  for (auto& t : ts) t.join();
  reader.join();
  CHECK(all_whole);
  auto hit = cache.lookup("shared");
  REQUIRE(hit);
  CHECK((*hit)["payload"] == big);
  // no temporary files are left behind
  CHECK(entries(dir).size() == 1u);
  fs::remove_all(dir);
}
