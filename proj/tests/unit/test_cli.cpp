#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dagger_cli/commands.hpp"
#include "dagger_cli/json_io.hpp"
#include "dagger_cli/random.hpp"

using namespace dagger;
using namespace dagger::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dagger");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_file(const std::string& name, const std::string& text) {
  std::string path = std::string(DAGGER_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("norm subcommand") {
  std::string f = write_file("one_plus_x.json", R"({"n": 1, "D": 1, "ring": "Q_inf", "coeffs": [[[0], "1"], [[1], "1"]]})");
  Run r = run({"norm", "--series", f, "--rho", "1"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["schema"] == "dagger-report/1");
  CHECK(j["S"]["lo"] == "2/1");
  CHECK(j["T"]["hi"] == "2/1");
}

TEST_CASE("restriction report in norm") {
  std::string f = write_file("q3_series.json", R"({"n": 1, "D": 2, "ring": "Q_3", "coeffs": [[[0], "3"], [[2], "1/3"]]})");
  Run r = run({"norm", "--series", f, "--rho", "1", "--rho-prime", "2"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["restriction"]["constant"] == "2/1");
  CHECK(j["restriction"]["holds"] == true);
}

TEST_CASE("input errors exit 1 with a pointer") {
  CHECK(run({"norm", "--series", "x.json", "--bogus"}).code == 1);
  CHECK(run({}).code == 1);
  std::string bad = write_file("bad_series.json", R"({"n": 1, "D": 1, "coeffs": [[[0], "1/0"]]})");
  Run r = run({"norm", "--series", bad});
  CHECK(r.code == 1);
  json j = json::parse(r.out);
  CHECK(j["verdict"] == "InputError");
  CHECK(j["pointer"] == "/coeffs/0/1");
  std::string broken = write_file("broken.json", "{\"n\": ");
  CHECK(run({"norm", "--series", broken}).code == 1);
  CHECK(run({"norm", "--series", DAGGER_TEST_TMP "/missing.json"}).code == 1);
}

TEST_CASE("koszul subcommand") {
  std::string a = write_file("disk_q3.json", R"({"ring": "Q_3", "n": 1, "rho": ["1"], "relations": []})");
  std::string s = write_file("laurent_x.json",
                             R"({"type": "laurent", "g": [{"n": 1, "D": 1, "coeffs": [[[1], "1"]]}], "s": ["1"]})");
  Run r = run({"koszul", "--algebra", a, "--spec", s, "--degree", "6"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["verdict"] == "DerivedConcentratedDegree0");
}

TEST_CASE("mv-check reports a gap in the cover") {
  std::string a = write_file("disk_q3_mv.json", R"({"ring": "Q_3", "n": 1, "rho": ["1"], "relations": []})");
  std::string v1 = write_file("inner.json",
                              R"({"type": "weierstrass", "f": [{"n": 1, "D": 1, "coeffs": [[[1], "1"]]}], "r": ["1/3"]})");
  std::string v2 = write_file("outer.json",
                              R"({"type": "laurent", "g": [{"n": 1, "D": 1, "coeffs": [[[1], "1"]]}], "s": ["3"]})");
  std::string gap = write_file("outer_gap.json",
                               R"({"type": "laurent", "g": [{"n": 1, "D": 1, "coeffs": [[[1], "1"]]}], "s": ["2"]})");
  Run ok = run({"mv-check", "--algebra", a, "--v1", v1, "--v2", v2, "--degree", "6", "--samples", "20"});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["verdict"] == "Exact");
  Run bad = run({"mv-check", "--algebra", a, "--v1", v1, "--v2", gap, "--degree", "6"});
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.out)["verdict"] == "NotACover");
}

TEST_CASE("spectrum and shilov subcommands") {
  std::string f = write_file("z_one_plus_x.json", R"({"n": 1, "D": 1, "coeffs": [[[0], "1"], [[1], "1"]]})");
  Run s = run({"spectrum", "--series", f, "--rho", "1", "--prime-bound", "7", "--powers", "3"});
  CHECK(s.code == 0);
  json j = json::parse(s.out);
  CHECK(j["global_sup"]["lo"] == "2/1");
  CHECK(j["attained_at"] == "inf^1/1");
  Run sh = run({"shilov", "--series", f, "--prime-bound", "7"});
  CHECK(sh.code == 0);
  CHECK(json::parse(sh.out)["verdict"] == "Confirmed");
}

TEST_CASE("pi-check is deterministic across thread counts") {
  std::string m = write_file("module_q3.json", R"({"ring": "Q_3", "weights": ["1", "3"], "flavor": "sum"})");
  Run one = run({"pi-check", "--module", m, "--samples", "40", "--threads", "1", "--seed", "3"});
  Run four = run({"pi-check", "--module", m, "--samples", "40", "--threads", "4", "--seed", "3"});
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  std::string arch = write_file("module_zinf.json", R"({"ring": "Z_inf", "weights": ["1"], "flavor": "sum"})");
  CHECK(run({"pi-check", "--module", arch}).code == 1);
}

TEST_CASE("tensor subcommand") {
  std::string l = write_file("w2.json", R"({"ring": "Z_inf", "weights": ["2"], "flavor": "sum"})");
  std::string rr = write_file("w3.json", R"({"ring": "Z_inf", "weights": ["3"], "flavor": "sum"})");
  std::string e = write_file("e_e.json", R"({"terms": [[["1"], ["1"]]]})");
  Run r = run({"tensor", "--left", l, "--right", rr, "--element", e});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["norm"]["lo"] == "6/1");
}

TEST_CASE("json-out writes the same report") {
  std::string f = write_file("c5.json", R"({"n": 1, "D": 0, "coeffs": [[[0], "5"]]})");
  std::string out = std::string(DAGGER_TEST_TMP) + "/c5_report.json";
  Run r = run({"norm", "--series", f, "--json-out", out});
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == r.out);
}

TEST_CASE("rng streams are reproducible") {
  Rng a = Rng::for_item(7, 1, 5), b = Rng::for_item(7, 1, 5), c = Rng::for_item(7, 1, 6);
  CHECK(a.next() == b.next());
  CHECK(a.next() != c.next());
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    long long v = r.range(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
  }
}
