#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("hypergroup_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args, const std::string& cache = "cache") {
  const fs::path out = scratch() / "stdout.txt";
  const std::string cmd = std::string(HYPERGROUP_CLI_PATH) + " --cache-dir " + (scratch() / cache).string() + " " + args +
                          " > " + out.string() + " 2> " + (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

nlohmann::json run_json(const std::string& args, int expect = 0) {
  const Run r = run("--format json " + args);
  REQUIRE(r.code == expect);
  return nlohmann::json::parse(r.out);
}

std::string column(const nlohmann::json& doc, std::size_t col) {
  std::string s;
  for (const auto& row : doc.at("rows")) s += (s.empty() ? "" : " ") + row.at(col).get<std::string>();
  return s;
}

}  // namespace

TEST_CASE("coeffs") {
  const auto q = run_json("coeffs qleg --q 1/2 -N 3");
  REQUIRE(q["rows"].size() == 4);
  CHECK(q["rows"][1] == nlohmann::json({"1", "18/35", "1/5", "2/7"}));
  CHECK(q["metadata"]["mode"] == "rational");

  const auto p = run_json("coeffs pollaczek --alpha 0 --lambda 1/4 --nu 0 -N 2");
  CHECK(column(p, 3) == "0 4/21 48/187");
  CHECK(column(p, 2) == "0 0 0");

  CHECK(run("coeffs pollaczek --alpha -1 --lambda 1/4 -N 2").code == 3);
  CHECK(run("coeffs pollaczek --alpha 0 -N 2").code == 3);
  CHECK(run("coeffs qleg --q 1/2 --alpha 0").code == 3);
  CHECK(run("coeffs nosuch --q 1/2").code == 3);
  CHECK(run("coeffs qleg --q 1/2 --bogus").code == 3);
}

TEST_CASE("decimal parameters select float mode") {
  const auto d = run_json("coeffs pollaczek --alpha 0 --lambda 0.25 -N 2");
  CHECK(d["metadata"]["mode"] == "float");
  CHECK(d["metadata"]["precision"] == "256");
  CHECK(std::stod(d["rows"][1][3].get<std::string>()) == Catch::Approx(4.0 / 21));
  CHECK(run("--mode rational coeffs pollaczek --alpha 0 --lambda 0.25 -N 2").code == 3);
  CHECK(run("--precision 32 coeffs qleg --q 1/2").code == 3);
  const auto f = run_json("--mode float coeffs qleg --q 1/2 -N 1");
  CHECK(f["metadata"]["mode"] == "float");
}

TEST_CASE("linearize and its cache") {
  const std::string args = "linearize qleg --q 1/2 -m 1 -n 1";
  const Run first = run("--format json " + args, "lin");
  REQUIRE(first.code == 0);
  const auto a = nlohmann::json::parse(first.out);
  CHECK(column(a, 1) == "2/7 1/5 18/35");
  CHECK(a["metadata"]["cache"] == "miss");
  const auto b = nlohmann::json::parse(run("--format json " + args, "lin").out);
  CHECK(b["metadata"]["cache"] == "hit");
  CHECK(b["rows"] == a["rows"]);
  // (n,m) shares the entry of (m,n)
  const auto c = nlohmann::json::parse(run("--format json linearize qleg --q 1/2 -m 1 -n 1", "lin").out);
  CHECK(c["metadata"]["cache"] == "hit");

  const auto u = run_json("linearize qleg --q 1/2 -m 0 -n 7");
  REQUIRE(u["rows"].size() == 1);
  CHECK(u["rows"][0] == nlohmann::json({"7", "1"}));

  CHECK(run_json("--no-cache linearize qleg --q 1/2 -m 2 -n 3")["metadata"]["cache"] == "off");
}

TEST_CASE("a corrupt cache entry is recomputed") {
  const std::string args = "--format json haar qleg --q 1/2 -N 5";
  const auto fresh = nlohmann::json::parse(run(args, "corrupt").out);
  for (const auto& f : fs::directory_iterator(scratch() / "corrupt")) std::ofstream(f.path()) << "{not json";
  const auto again = nlohmann::json::parse(run(args, "corrupt").out);
  CHECK(again["metadata"]["cache"] == "miss");
  CHECK(again["rows"] == fresh["rows"]);
  // h(1) = 1/c_1 = 7/2 and h(2) = a_1 h(1)/c_2 = 31/4 at q = 1/2
  CHECK(fresh["rows"][1][1] == "7/2");
  CHECK(fresh["rows"][2][1] == "31/4");
}

TEST_CASE("eval, character, measure, chain") {
  const auto e = run_json("eval qleg --q 1/2 -N 2 -x 1");
  CHECK(column(e, 1) == "1 1 1");
  CHECK(run("--mode rational eval qleg --q 1/2 --form orthonormal").code == 3);
  CHECK(run("eval qleg --q 1/2 --form orthonormal").code == 0);

  // alpha_x(1) = (x - b_0)/a_0 = (3/4 - 1/3)/(2/3) = 5/8
  const auto ch = run_json("character qleg --q 1/2 -K 2 -x 3/4 --bounded");
  CHECK(ch["rows"][1][1] == "5/8");
  CHECK(ch["metadata"]["bounded"] == "yes");

  const auto m = run_json("measure qleg --q 1/2 -K 2");
  CHECK(m["rows"][2] == nlohmann::json({"2", "3/4", "1/8"}));
  CHECK(m["metadata"]["tail_bound"] == "1/8");
  CHECK(run("measure pollaczek --alpha 0 --lambda 1/4").code == 3);

  const auto c = run_json("chain --value 1/4 -N 3");
  CHECK(column(c, 2) == "0 1/4 1/3 3/8");
  const auto p = run_json("chain pollaczek --alpha 0 --lambda 1/4 -N 2");
  CHECK(column(p, 2) == "0 4/21 48/187");
  CHECK(run("chain -N 3").code == 3);
  const auto bad = run_json("chain --value 9/10 -N 4");
  CHECK(bad["metadata"]["certified"] == "no");
  CHECK(bad["metadata"]["left_unit_interval_at"] == "2");
}

TEST_CASE("verify exit codes") {
  CHECK(run("verify poll-thm25 --alpha 0 --lambda 1/4 --nu 0").code == 0);
  CHECK(run("verify nosuch").code == 3);
  CHECK(run("verify qleg-lemma35 --q 2").code == 3);
  CHECK(run("verify qleg-lemma35 --q 1/2 --size nosuch=3").code == 3);
  CHECK(run("verify qleg-lemma35 --q 1/2 --size N=abc").code == 3);
  CHECK(run("verify poll-thm25 --alpha 0 --lambda 5 --nu 0").code == 1);

  const auto r = run_json("verify qleg-thm21 --q 1/2 --size N=4");
  CHECK(r["pass"] == true);
  bool has_c = false, has_ratio = false;
  for (const auto& e : r["entries"]) {
    if (e["claim"] == "C-value") has_c = e["note"].get<std::string>().find("C = 16.07") != std::string::npos;
    if (e["claim"] == "max-observed-ratio") has_ratio = true;
  }
  CHECK(has_c);
  CHECK(has_ratio);
}

TEST_CASE("verify output is reproducible and can go to a file") {
  const std::string out = (scratch() / "report.json").string();
  REQUIRE(run("--format json -o " + out + " verify qleg-lemma34").code == 0);
  std::ifstream in(out);
  std::stringstream a;
  a << in.rdbuf();
  const Run b = run("--format json verify qleg-lemma34");
  CHECK(a.str() == b.out);
  CHECK(nlohmann::json::parse(b.out)["suite"] == "qleg-lemma34");

  const Run csv = run("--format csv verify qleg-lemma34");
  CHECK(csv.out.rfind("suite,mode,precision", 0) == 0);
}

TEST_CASE("list-suites") {
  const Run r = run("--format json list-suites");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.size() == 17);
  CHECK(run("list-suites").out.find("poll-thm27-bounds") != std::string::npos);
  CHECK(run("").code == 3);
}
