#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(DENSEM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(DENSEM_DATA_DIR) + "/" + name; }

TEST(Cli, Reduce) {
  const CliRun r = cli("reduce n 'n^r s n^l' n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "links: [[0,1],[3,4]]; residuals: [2]\n");

  const CliRun j = cli("--json reduce n 'n^r s'");
  ASSERT_EQ(j.code, 0);
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["links"], nlohmann::json::parse("[[0,1]]"));
  EXPECT_EQ(doc["residuals"], nlohmann::json::parse("[2]"));

  const CliRun none = cli("reduce n n");
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(none.out, "NO REDUCTION\n");

  EXPECT_EQ(cli("reduce 'n^x'").code, 2);
}

TEST(Cli, Sim) {
  const CliRun r = cli("sim " + data("drinking.json") + " lager beer");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("F(lager, beer) = 0.9334"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("R(lager, beer) = 0.8203"), std::string::npos);
  EXPECT_NE(r.out.find("R(beer, lager) = 0.0000"), std::string::npos);
  EXPECT_NE(r.out.find("HYPONYM"), std::string::npos);

  const CliRun j = cli("entail --json " + data("drinking.json") + " psychiatrist doctor");
  ASSERT_EQ(j.code, 0);
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_NEAR(doc["fidelity"].get<double>(), 0.7559289460184544, 1e-12);
  EXPECT_EQ(doc["backward"].get<double>(), 0.0);

  EXPECT_EQ(cli("sim " + data("drinking.json") + " lager stout").code, 1);
  EXPECT_EQ(cli("sim " + data("drinking.json") + " lager").code, 2);
}

TEST(Cli, ComposeThroughDiagram) {
  const CliRun r = cli("--json compose " + data("truth1d.json") + " mammals eat meat");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["matrix"][0][0].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(doc["type"], "s");

  EXPECT_EQ(cli("compose " + data("truth1d.json") + " meat meat").code, 1);
}

TEST(Cli, ComposeKronecker) {
  const std::string base = "--json compose " + data("drinking.json") +
                           " psychiatrist lager --kronecker drink --against doctor beer";
  const auto rows_subjects = nlohmann::json::parse(cli(base).out);
  EXPECT_NEAR(rows_subjects["comparison"]["fidelity"].get<double>(), 0.8517, 1e-4);
  EXPECT_EQ(rows_subjects["comparison"]["backward"].get<double>(), 0.0);
  const auto rows_objects = nlohmann::json::parse(cli(base + " --verb-rows object").out);
  EXPECT_NEAR(rows_objects["comparison"]["fidelity"].get<double>(), 0.8071, 1e-4);
  EXPECT_NEAR(rows_objects["comparison"]["forward"].get<double>(), 0.5300, 1e-4);
}

TEST(Cli, LogBase) {
  const CliRun r = cli("--log-base e --json compose " + data("animals.json") + " lions eat meat --against dogs eat meat");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(cli("--log-base 10 reduce n 'n^r s'").code, 2);
}

TEST(Cli, Repro) {
  const CliRun all = cli("repro --all");
  EXPECT_EQ(all.code, 0) << all.out;
  EXPECT_NE(all.out.find("PASS  sentences-7.2"), std::string::npos);
  EXPECT_EQ(cli("repro no-such-case").code, 2);
  const auto doc = nlohmann::json::parse(cli("--json repro mammals-again").out);
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_TRUE(doc[0]["pass"].get<bool>());
}

TEST(Cli, LexiconValidate) {
  for (const char* f : {"drinking.json", "animals.json", "truth1d.json"}) {
    EXPECT_EQ(cli("lexicon validate " + data(f)).code, 0) << f;
  }
  const auto bad = (std::filesystem::temp_directory_path() / "densem_bad.json").string();
  std::ofstream(bad) << R"({"spaces": {"n": {"dim": 2}}, "words": {"x": {"type": "n", "kind": "pure", "data": [1]}}})";
  EXPECT_EQ(cli("lexicon validate " + bad).code, 1);
  std::filesystem::remove(bad);
  EXPECT_EQ(cli("lexicon").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
}

}  // namespace
