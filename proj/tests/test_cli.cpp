#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "monalg/algebra.hpp"
#include "monalg/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_dir;

struct RunResult {
  int status;
  std::string out;  // stdout and stderr interleaved
};

RunResult run(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int rc = pclose(pipe);
  return RunResult{WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, std::move(out)};
}

std::string file(const std::string& name, const std::string& content) {
  const fs::path p = g_dir / name;
  std::ofstream(p) << content;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("analyze prints the structural table") {
  const std::string f = file("split4.json", R"({"n":4,"f":[1,0,0,1]})");
  const RunResult r = run("analyze " + f);
  CHECK(r.status == 0);
  CHECK(r.out ==
        "nodes: 4\n"
        "components: 1\n"
        "cycle lengths: 2\n"
        "cyclic nodes: 0,1\n"
        "attachment points: 2,3\n"
        "degree bound: 0\n"
        "degrees: 0:inf 1:inf 2:0 3:0\n"
        "star: yes\n"
        "star-star: yes\n");
}

TEST_CASE("analyze emits machine-readable JSON") {
  const std::string f = file("fan.json", R"({"n":4,"f":[0,0,0,0]})");
  const RunResult r = run("analyze " + f + " --json");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["n"] == 4);
  CHECK(j["f"] == nlohmann::json::array({0, 0, 0, 0}));
  CHECK(j["components"] == 1);
  CHECK(j["cycle_lengths"] == nlohmann::json::array({1}));
  CHECK(j["degrees"] == nlohmann::json::array({nullptr, 0, 0, 0}));
  CHECK(j["cyclic"] == nlohmann::json::array({0}));
  CHECK(j["attachment_points"] == nlohmann::json::array({1, 2, 3}));
  CHECK(j["degree_bound"] == 0);
  CHECK(j["star"] == false);
  CHECK(j["star_star"] == true);
}

TEST_CASE("analyze accepts the line format") {
  const std::string f = file("lines.txt", "n=2\n0 -> 1\n1 -> 0\n");
  const RunResult r = run("analyze " + f);
  CHECK(r.status == 0);
  CHECK(r.out.find("nodes: 2") == 0);
}

TEST_CASE("iso answers through the exit code") {
  const std::string a = file("a.json", R"({"n":3,"f":[1,2,0]})");
  const std::string b = file("b.json", R"({"n":3,"f":[2,0,1]})");
  const std::string c = file("c.json", R"({"n":3,"f":[0,0,1]})");
  const RunResult same = run("iso " + a + " " + b);
  CHECK(same.status == 0);
  CHECK(same.out == "isomorphic\n");
  const RunResult diff = run("iso " + a + " " + c);
  CHECK(diff.status == 1);
  CHECK(diff.out == "not isomorphic\n");
}

TEST_CASE("retract-check reports and certifies") {
  const std::string f = file("fan.json", R"({"n":4,"f":[0,0,0,0]})");
  CHECK(run("retract-check " + f + " --subset 0,1").out == "retract\n");
  CHECK(run("retract-check " + f + " --subset 0,1").status == 0);

  const RunResult w = run("retract-check " + f + " --subset 0,1 --witness");
  CHECK(w.status == 0);
  const auto j = nlohmann::json::parse(w.out);
  CHECK(j["map"] == nlohmann::json::array({0, 1, 0, 0}));
  CHECK(j["image"] == nlohmann::json::array({0, 1}));

  const std::string chain = file("chain.json", R"({"n":3,"f":[0,0,1]})");
  const RunResult no = run("retract-check " + chain + " --subset 0,1");
  CHECK(no.status == 1);
  CHECK(no.out == "not a retract\n");

  const RunResult bad = run("retract-check " + chain + " --subset 0,2");
  CHECK(bad.status == 2);
  CHECK(bad.out.find("error:") == 0);
}

TEST_CASE("retract-enum lists every retract") {
  const std::string f = file("leafloop.json", R"({"n":2,"f":[0,0]})");
  const RunResult r = run("retract-enum " + f);
  CHECK(r.status == 0);
  CHECK(r.out == "0\n0,1\n");

  const std::string big = file("c9.json", R"({"n":9,"f":[1,2,3,4,5,6,7,8,0]})");
  CHECK(run("retract-enum " + big).status == 2);
  CHECK(run("retract-enum " + big + " --bound 9").status == 0);
}

TEST_CASE("product multiplies and respects the budget") {
  const std::string a = file("c2.json", R"({"n":2,"f":[1,0]})");
  const std::string b = file("c3.json", R"({"n":3,"f":[1,2,0]})");
  const RunResult r = run("product " + a + " " + b);
  CHECK(r.status == 0);
  CHECK(r.out == "{\"n\":6,\"f\":[4,5,3,1,2,0]}\n");

  const RunResult over = run("product " + a + " " + b + " --max-size 5");
  CHECK(over.status == 2);
  CHECK(over.out.find("error:") == 0);

  const fs::path out = g_dir / "prod.json";
  CHECK(run("product " + a + " " + b + " -o " + out.string()).status == 0);
  CHECK(monalg::parse_algebra(slurp(out)).size() == 6);
}

TEST_CASE("reduce picks exactly one mode") {
  const std::string fan = file("fan.json", R"({"n":4,"f":[0,0,0,0]})");
  const RunResult star = run("reduce " + fan + " --star");
  CHECK(star.status == 0);
  CHECK(star.out == "{\"n\":3,\"f\":[0,0,0]}\n");

  const RunResult js = run("reduce " + fan + " --star --json");
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["kept"] == nlohmann::json::array({0, 1, 2}));
  CHECK(j["retraction"] == nlohmann::json::array({0, 1, 2, 2}));
  CHECK(j["reduced"]["n"] == 3);

  const std::string triple =
      file("triple.json", R"({"n":6,"f":[1,0,3,2,5,4]})");
  const RunResult ss = run("reduce " + triple + " --star-star");
  CHECK(ss.status == 0);
  CHECK(ss.out == "{\"n\":4,\"f\":[1,0,3,2]}\n");

  CHECK(run("reduce " + fan).status == 2);
  CHECK(run("reduce " + fan + " --star --star-star").status == 2);
}

TEST_CASE("split emits branches and a product witness") {
  const std::string f = file("split4.json", R"({"n":4,"f":[1,0,0,1]})");
  const RunResult r = run("split " + f);
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["branches"].size() == 2);
  CHECK(j["branches"][0]["f"] == nlohmann::json::array({1, 0, 0}));
  CHECK(j["branches"][1]["f"] == nlohmann::json::array({1, 0, 1}));
  CHECK(j["witness"]["map"] == nlohmann::json::array({0, 4, 7, 2}));
  CHECK(j["witness"]["image"] == nlohmann::json::array({0, 2, 4, 7}));
  REQUIRE(j["witness"]["factors"].size() == 2);

  const fs::path dir = g_dir / "split_out";
  const RunResult wr = run("split " + f + " -o " + dir.string());
  CHECK(wr.status == 0);
  CHECK(monalg::parse_algebra(slurp(dir / "branch_0.json")).size() == 3);
  CHECK(monalg::parse_algebra(slurp(dir / "branch_1.json")).size() == 3);
  const auto w = nlohmann::json::parse(slurp(dir / "witness.json"));
  CHECK(w["map"] == nlohmann::json::array({0, 4, 7, 2}));

  const std::string cyc = file("c3b.json", R"({"n":3,"f":[1,2,0]})");
  CHECK(run("split " + cyc).status == 2);
}

TEST_CASE("generators lists the pipeline output") {
  const std::string f = file("u23.json", R"({"n":5,"f":[1,0,3,4,2]})");
  const RunResult r = run("generators " + f);
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 2);
  CHECK(j["generators"][0]["n"] == 2);
  CHECK(j["generators"][1]["n"] == 3);
  CHECK(j["origins"][0]["component"] == 0);
  CHECK(j["origins"][1]["subset"] == nlohmann::json::array({2, 3, 4}));

  const fs::path dir = g_dir / "gens_out";
  CHECK(run("generators " + f + " -o " + dir.string()).status == 0);
  CHECK(monalg::parse_algebra(slurp(dir / "gen_0.json")).size() == 2);
  CHECK(monalg::parse_algebra(slurp(dir / "gen_1.json")).size() == 3);
  const auto idx = nlohmann::json::parse(slurp(dir / "index.json"));
  CHECK(idx["count"] == 2);
}

TEST_CASE("member certifies or says unknown") {
  const std::string c2 = file("c2.json", R"({"n":2,"f":[1,0]})");
  const std::string c3 = file("c3.json", R"({"n":3,"f":[1,2,0]})");
  const std::string c6 = file("c6.json", R"({"n":6,"f":[1,2,3,4,5,0]})");
  const std::string c4 = file("c4.json", R"({"n":4,"f":[1,2,3,0]})");

  const RunResult yes = run("member " + c6 + " --gens " + c2 + "," + c3);
  CHECK(yes.status == 0);
  const auto j = nlohmann::json::parse(yes.out);
  REQUIRE(j["factors"].size() == 2);
  CHECK(j["factors"][0]["n"] == 2);
  CHECK(j["factors"][1]["n"] == 3);
  CHECK(j["map"].size() == 6);
  CHECK(j["image"].size() == 6);

  const RunResult no = run("member " + c4 + " --gens " + c2 + "," + c3);
  CHECK(no.status == 1);
  CHECK(no.out.find("unknown:") == 0);
}

TEST_CASE("enum-t prints the count, then optionally the classes") {
  const RunResult one = run("enum-t 1");
  CHECK(one.status == 0);
  CHECK(one.out == "2\n");

  const RunResult listed = run("enum-t 1 --list");
  CHECK(listed.status == 0);
  CHECK(listed.out.find("2\n") == 0);
  CHECK(listed.out.find("root=0") != std::string::npos);
  CHECK(std::count(listed.out.begin(), listed.out.end(), '=') >= 4);

  CHECK(run("enum-t 2").out == "26\n");
  CHECK(run("enum-t 3").out == "7625597484986\n");

  const RunResult capped = run("enum-t 4");
  CHECK(capped.status == 2);
  CHECK(capped.out.find("error:") == 0);
  CHECK(run("enum-t 4 --list").status == 2);
}

TEST_CASE("export-dot round-trips through the edge list reader") {
  const std::string f = file("round.json", R"({"n":5,"f":[1,2,0,0,3]})");
  const RunResult r = run("export-dot " + f);
  CHECK(r.status == 0);
  CHECK(r.out.find("digraph") == 0);
  const monalg::Algebra back = monalg::parse_edge_list(r.out);
  CHECK(back.successors() == std::vector<monalg::Node>{1, 2, 0, 0, 3});

  const RunResult annotated = run("export-dot " + f + " --annotate-degree");
  CHECK(annotated.out.find("(s=inf)") != std::string::npos);
  CHECK(monalg::parse_edge_list(annotated.out) == back);

  const fs::path out = g_dir / "round.dot";
  CHECK(run("export-dot " + f + " -o " + out.string()).status == 0);
  CHECK(monalg::parse_edge_list(slurp(out)) == back);
}

TEST_CASE("failures use exit code 2 with a diagnostic") {
  CHECK(run("analyze /nonexistent/file.json").status == 2);
  CHECK(run("analyze /nonexistent/file.json").out.find("error:") == 0);
  const std::string bad = file("bad.json", "{\"n\": 2}");
  CHECK(run("analyze " + bad).status == 2);
  CHECK(run("nonsense").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("--help").status == 0);
}

int main(int argc, char** argv) {
  std::vector<char*> pass;
  for (int i = 0; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--cli=", 0) == 0) {
      g_cli = arg.substr(6);
    } else {
      pass.push_back(argv[i]);
    }
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli --cli=<path to binary>\n");
    return 1;
  }
  g_dir = fs::temp_directory_path() /
          ("monalg_cli_" + std::to_string(::getpid()));
  fs::create_directories(g_dir);
  doctest::Context ctx(static_cast<int>(pass.size()), pass.data());
  const int rc = ctx.run();
  fs::remove_all(g_dir);
  return rc;
}
