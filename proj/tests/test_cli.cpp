#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("herbnet_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

Run run(const std::string& args, const std::string& env = "") {
  fs::path o = scratch() / "stdout", e = scratch() / "stderr";
  std::string cmd = env + " '" HERBNET_CLI "' " + args + " > '" + o.string() + "' 2> '" + e.string() + "'";
  int st = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

std::string fx(const char* name) { return "'" + herbnet::testing::fixture_path(name) + "'"; }

std::size_t matches(const std::string& text, const std::string& re) {
  std::regex r(re);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), r), std::sregex_iterator()));
}

}  // namespace

TEST_CASE("check") {
  CHECK(run("check " + fx("drinker")).code == 0);
  Run bad = run("check " + fx("shared_eigen"));
  CHECK(bad.code == 1);
  CHECK(bad.out.find("duplicate eigenvariable a") != std::string::npos);

  Run j = run("check " + fx("shared_eigen") + " --format json");
  CHECK(j.code == 1);
  json rep = json::parse(j.out);
  CHECK(rep["net"] == false);
  CHECK(rep["failures"].size() >= 1);
  // strict, but neither index is a tautology
  for (const auto& f : json::parse(run("check " + fx("strict_cut") + " --format json").out)["failures"])
    CHECK(f.get<std::string>().find("not a tautology") != std::string::npos);

  CHECK(run("check '" + write("empty.net", "") + "'").code == 2);
  CHECK(run("check '" + write("junk.net", "{\"roots\": [{\"term\": \"a[\", \"type\": \"P\"}]}") + "'").code == 2);
  CHECK(run("check '" + (scratch() / "missing.net").string() + "'").code == 2);
}

TEST_CASE("normalize") {
  Run l = run("normalize " + fx("nonconfluent") + " --cut left --format json");
  REQUIRE(l.code == 0);
  json lj = json::parse(l.out);
  CHECK(lj["status"] == "normal");
  CHECK(lj["witnesses"] == json({"0", "s(0)", "s(s(0))"}));

  Run r = run("normalize " + fx("nonconfluent") + " --cut right --format json");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["witnesses"] == json({"0", "s(0)", "s(s(0))", "s(s(s(0)))"}));

  Run e = run("normalize " + fx("empire_loop") + " --strategy empire --max-steps 50");
  CHECK(e.code == 3);
  CHECK(e.out.find("growth detected") != std::string::npos);
  json ej = json::parse(run("normalize " + fx("empire_loop") + " --strategy empire --max-steps 50 --format json").out);
  CHECK(ej["status"] == "budget");
  CHECK(ej["growth_step"].get<int>() <= 50);

  CHECK(run("normalize " + fx("nonconfluent") + " --cut 3").code == 4);
  CHECK(run("normalize " + fx("nonconfluent") + " --strategy greedy").code != 0);
  CHECK(run("normalize " + fx("shared_eigen")).code == 4);
  CHECK(run("normalize " + fx("nonconfluent") + " --max-steps 2").code == 3);
}

TEST_CASE("normalize then check") {
  for (const char* n : herbnet::testing::kCorpus) {
    if (run("check " + fx(n)).code != 0) continue;
    CAPTURE(n);
    std::string out = (scratch() / (std::string(n) + ".nf.json")).string();
    REQUIRE(run("normalize " + fx(n) + " --format json -o '" + out + "'").code == 0);
    CHECK(run("check '" + out + "'").code == 0);
  }
}

TEST_CASE("extract") {
  Run d = run("extract " + fx("drinker") + " --format json");
  REQUIRE(d.code == 0);
  json dj = json::parse(d.out);
  CHECK(dj["sigma"] == json({"c", "a", "a", "b"}));
  CHECK(dj["verified"] == true);
  CHECK(dj["prenexification"].get<std::string>().rfind("exists u1. forall a. exists u2. forall b.", 0) == 0);

  std::string single = write("single.net",
                             R"j({"roots": [{"term": "(e[c].{1})", "type": "exists x. P(x)"}],
                                 "theory": {"functions": {"c": 0}, "axioms": ["P(c)"]}})j");
  json sj = json::parse(run("extract '" + single + "' --format json").out);
  CHECK(sj["sigma"] == json({"c"}));

  Run cuts = run("extract " + fx("nonconfluent"));
  CHECK(cuts.code == 4);
  CHECK(cuts.err.find("normalize") != std::string::npos);

  std::string nf = (scratch() / "nonconfluent.left.json").string();
  REQUIRE(run("normalize " + fx("nonconfluent") + " --cut left --format json -o '" + nf + "'").code == 0);
  json hj = json::parse(run("extract '" + nf + "' --format json").out);
  CHECK(hj["sigma"].size() == 3);
  CHECK(matches(hj["expansion"].get<std::string>(), "exists") == 3);
  CHECK(hj["verified"] == true);
}

TEST_CASE("export-dot") {
  Run d = run("export-dot " + fx("drinker"));
  REQUIRE(d.code == 0);
  CHECK(matches(d.out, R"(n\d+ -> n\d+ \[color=red)") == 1);
  CHECK(matches(d.out, R"(i\d+ -> n\d+ \[color=red)") == 2);
  CHECK(matches(d.out, R"(label="e\[c\]")") == 1);

  std::string leaf = write("leaf.net", R"j({"roots": [{"term": "{1}", "type": "(P | ~P)"}]})j");
  Run l = run("export-dot '" + leaf + "'");
  REQUIRE(l.code == 0);
  CHECK(matches(l.out, R"(\n  [nit]\d+ \[label=)") == 3);

  Run s = run("export-dot " + fx("nonconfluent"));
  CHECK(matches(s.out, "shape=ellipse") == 3);
  CHECK(matches(s.out, R"(label="><")") == 2);

  CHECK(run("export-dot " + fx("shared_eigen")).code != 0);
}

TEST_CASE("outputs are byte-stable") {
  for (const std::string& args : {"normalize " + fx("nonconfluent") + " --cut right --format json",
                                  "normalize " + fx("empire_loop") + " --strategy empire --max-steps 20",
                                  "extract " + fx("drinker"), "export-dot " + fx("nonconfluent"), "check " + fx("escaping_eigen")}) {
    CAPTURE(args);
    Run a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    Run c = run(args, "HERBNET_SEED=7"), e = run(args, "HERBNET_SEED=7");
    CHECK(c.out == e.out);
  }
}
