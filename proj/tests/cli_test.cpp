#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KGRAPH_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("kgraph_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, ValidateRejectsBouquetRuleThree) {
  auto r = run("validate --fixture bouq_sim3");
  EXPECT_EQ(r.code, 1);
  auto j = json_of(r);
  auto w = j["validation"]["host"]["witness"];
  EXPECT_EQ(w["path"], (nlohmann::json{"(f1,x)", "(u,e)", "(u,g)"}));
  EXPECT_EQ(w["via_first"].back(), "(f2,x)");
  EXPECT_EQ(w["via_second"].back(), "(f3,x)");
}

TEST(Cli, ValidateAcceptsBouquetRuleTwo) {
  auto r = run("validate --fixture bouq_sim2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["quasi_product"]["quasi_product"], true);
}

TEST(Cli, DecideProductOnCounterExamples) {
  auto yes = run("decide-product --fixture counter_omega2 --oracle");
  EXPECT_EQ(yes.code, 0);
  auto j = json_of(yes);
  EXPECT_EQ(j["decision"]["answer"], "yes");
  EXPECT_EQ(j["decision"]["iso"]["(u,f)"], "(u,g)");
  EXPECT_EQ(j["oracle"]["isomorphic"], true);
  auto no = run("decide-product --fixture counter_omega1 --oracle");
  EXPECT_EQ(no.code, 1);
  auto k = json_of(no);
  EXPECT_EQ(k["decision"]["answer"], "no");
  EXPECT_EQ(k["oracle"]["isomorphic"], false);
  EXPECT_EQ(k["decision"]["certificate"]["holonomies"].size(), 1u);
}

TEST(Cli, ReportCstarCrossedProduct) {
  auto r = run("report-cstar --fixture bouq_sim2");
  EXPECT_EQ(r.code, 0);
  auto j = json_of(r);
  bool crossed = false;
  for (const auto& rep : j["reports"]) {
    if (rep.value("kind", "") != "crossed-product") continue;
    crossed = true;
    EXPECT_EQ(rep["group_rank"], 2);
    for (const auto& rho : rep["rho"]) {
      EXPECT_EQ(rho["map"]["f1"], "f2");
      EXPECT_EQ(rho["map"]["f2"], "f1");
      EXPECT_EQ(rho["map"]["f3"], "f3");
    }
  }
  EXPECT_TRUE(crossed);
  EXPECT_FALSE(j["presentation"]["relations"].empty());
}

TEST(Cli, StabilizeEmitsDocument) {
  auto r = run("stabilize --fixture path_loops_trunc8 --side gamma");
  EXPECT_EQ(r.code, 0);
  auto j = json_of(r);
  EXPECT_EQ(j["stabilization"]["verified"], true);
  EXPECT_EQ(j["stabilization"]["theta_moved"]["(w4,f)"], "(w4,g)");
  auto dir = scratch("stab");
  std::ofstream(dir / "stab.json") << j["document"].dump();
  auto v = run("validate --input " + (dir / "stab.json").string());
  EXPECT_EQ(v.code, 0);
  auto a = run("analyze --input " + (dir / "stab.json").string());
  EXPECT_EQ(json_of(a)["stability"]["gamma"]["stable"], true);
  EXPECT_EQ(run("stabilize --fixture counter_omega1 --side gamma").code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("validate").code, 2);
  EXPECT_EQ(run("validate --fixture no_such_fixture").code, 2);
  EXPECT_EQ(run("validate --input /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("decide-product --fixture counter_omega2 --budget 1").code, 3);
  EXPECT_EQ(run("decide-product --fixture bouq_sim3").code, 2);
  auto dir = scratch("bad");
  std::ofstream(dir / "bad.json") << "{\"version\": 1, \"name\": \"x\", \"nope\": 0}";
  EXPECT_EQ(run("validate --input " + (dir / "bad.json").string()).code, 2);
}

TEST(Cli, DeterministicOutput) {
  for (const char* cmd : {"analyze --fixture rho_non_comp", "decide-product --fixture lattice_grid",
                          "fuzz --count 5 --seed 9"})
    EXPECT_EQ(run(cmd).out, run(cmd).out) << cmd;
}

TEST(Cli, TextFormatAndOutFile) {
  auto dir = scratch("text");
  auto r = run("validate --fixture bouq_sim1 --format text --out " + (dir / "r.txt").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(dir / "r.txt");
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_NE(s.str().find("command: validate"), std::string::npos) << s.str();
}

TEST(Cli, ExportDot) {
  auto dir = scratch("dot");
  auto r = run("export-dot --fixture counter_omega1 --dot-out " + dir.string());
  EXPECT_EQ(r.code, 0);
  for (const char* which : {"host", "lambda", "gamma"})
    EXPECT_TRUE(fs::exists(dir / (std::string("counter_omega1.") + which + ".dot"))) << which;
  auto one = scratch("dot1");
  EXPECT_EQ(run("export-dot --fixture c43 --skeleton host --dot-out " + one.string()).code, 0);
  EXPECT_TRUE(fs::exists(one / "c43.host.dot"));
  EXPECT_EQ(run("export-dot --fixture c43 --skeleton lambda --dot-out " + one.string()).code, 2);
}

TEST(Cli, FuzzAndCorpus) {
  auto r = run("fuzz --count 10 --seed 3");
  EXPECT_EQ(r.code, 0);
  auto j = json_of(r);
  EXPECT_EQ(j["rules"], 10);
  EXPECT_EQ(j["closure_violations"], 0);
  EXPECT_EQ(j["law_violations"], 0);
  auto over = run("fuzz --count 3 --fixture counter_omega1");
  EXPECT_EQ(over.code, 0);
  auto dir = scratch("corpus");
  EXPECT_EQ(run("corpus --out-dir " + dir.string()).code, 0);
  EXPECT_TRUE(fs::exists(dir / "bouq_sim2.json"));
  EXPECT_EQ(run("validate --input " + (dir / "counter_omega2.json").string()).code, 0);
}
