#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("tfact_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  const fs::path err_file = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string("'") + TFACT_CLI_PATH + "' " + args + " 2>'" + err_file.string() + "'";
  RunResult result;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.err = slurp(err_file);
  return result;
}

std::string data(const std::string& name) {
  return std::string("'") + TFACT_DATA_DIR + "/" + name + ".perm'";
}

json strip_timestamp(json j) {
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST(Cli, MissingSubcommandIsInputError) { EXPECT_EQ(run("").exit_code, 2); }

TEST(Cli, UnknownOptionIsInputError) { EXPECT_EQ(run("coxeter-table --no-such-flag").exit_code, 2); }

TEST(Cli, CoxeterTableSmallTypes) {
  const auto r = run("coxeter-table --types 'A2,H3,I2(5),B3'");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_TRUE(j.contains("timestamp"));
  ASSERT_EQ(j["rows"].size(), 4u);
  EXPECT_EQ(j["rows"][0]["type"], "A2");
  EXPECT_EQ(j["rows"][0]["verdict"], true);
  EXPECT_EQ(j["rows"][1]["verdict"], false);
  EXPECT_EQ(j["rows"][2]["type"], "I2(5)");
  EXPECT_EQ(j["rows"][2]["verdict"], false);
  EXPECT_EQ(j["rows"][3]["verdict"], true);
  for (const auto& row : j["rows"]) EXPECT_EQ(row["match"], true);
  EXPECT_EQ(j["status"], "pass");
}

TEST(Cli, BadCoxeterTypeIsInputError) {
  const auto r = run("coxeter-table --types Q7");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("Q7"), std::string::npos) << r.err;
}

TEST(Cli, ResourceBoundExitCode) {
  EXPECT_EQ(run("coxeter-table --types E6 --bound 10").exit_code, 3);
}

TEST(Cli, CorruptedDataFileNamesTheFile) {
  const fs::path bad = scratch_dir() / "bad_alt5.perm";
  {
    std::ofstream out(bad);
    out << "degree 5\ngen (1,2,3,4,5)\ngen (1,2,3)\norder 61\n";
  }
  const auto r = run("square-dc '" + bad.string() + "' " + data("alt5_stab"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("bad_alt5.perm"), std::string::npos) << r.err;
  const auto missing = run("square-dc '" + (scratch_dir() / "nope.perm").string() + "' " + data("alt5_stab"));
  EXPECT_EQ(missing.exit_code, 2);
}

TEST(Cli, SubgroupNotContainedIsDataError) {
  const auto r = run("square-dc " + data("alt5") + " " + data("psl27_borel"));
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, SquareDcWitness) {
  const auto r = run("square-dc " + data("m11") + " " + data("m11_stab"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_FALSE(j["witness"].is_null());
  EXPECT_EQ(j["witness"]["exact_recheck"], true);
  EXPECT_EQ(j["space"]["index"], 11);
}

TEST(Cli, SquareDcProbabilistic) {
  const auto r = run("square-dc --probabilistic --seed 3 " + data("alt7") + " " + data("alt7_stab"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["method"]["kind"], "probabilistic");
  if (!j["witness"].is_null()) {
    EXPECT_EQ(j["witness"]["exact_recheck"], true);
  }
}

TEST(Cli, TripleCheckWithElement) {
  const auto r = run("triple-check " + data("alt5") + " " + data("alt5_stab") + " --element '(1,5)(2,3)'");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["factorizes"], true);
  EXPECT_EQ(j["labels"].size(), 2u);
  EXPECT_EQ(run("triple-check " + data("alt5") + " " + data("alt5_stab") + " --element '(1,2)'").exit_code, 2);
}

TEST(Cli, HeckeReport) {
  const auto r = run("hecke " + data("psl27") + " " + data("psl27_borel"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["space"]["rank"], 6);
  EXPECT_EQ(j["hecke_matrices"].size(), 6u);
  EXPECT_EQ(j["mass_conserved"], true);
}

TEST(Cli, DeterministicModuloTimestamp) {
  const std::string args = "coxeter-table --types A3,B3,H3 --seed 5";
  const auto r1 = run(args);
  const auto r2 = run(args);
  ASSERT_EQ(r1.exit_code, 0);
  ASSERT_EQ(r2.exit_code, 0);
  EXPECT_EQ(strip_timestamp(json::parse(r1.out)), strip_timestamp(json::parse(r2.out)));
}

TEST(Cli, SeedDoesNotChangeExactResults) {
  const auto r1 = run("coxeter-table --types A3,D4,F4 --seed 1");
  const auto r2 = run("coxeter-table --types A3,D4,F4 --seed 99");
  ASSERT_EQ(r1.exit_code, 0);
  ASSERT_EQ(r2.exit_code, 0);
  EXPECT_EQ(json::parse(r1.out)["rows"], json::parse(r2.out)["rows"]);
  const auto h1 = run("hecke --seed 1 " + data("alt6") + " " + data("alt6_stab"));
  const auto h2 = run("hecke --seed 2 " + data("alt6") + " " + data("alt6_stab"));
  EXPECT_EQ(json::parse(h1.out)["hecke_matrices"], json::parse(h2.out)["hecke_matrices"]);
}

TEST(Cli, OutFileMatchesStdout) {
  const fs::path out = scratch_dir() / "report.json";
  const auto r = run("coxeter-table --types A2 --out '" + out.string() + "'");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.empty());
  const json j = json::parse(slurp(out));
  EXPECT_EQ(j["rows"][0]["type"], "A2");
}

TEST(Cli, VerifyAllPasses) {
  const auto r = run("verify-all --seed 11");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["suites"].size(), 7u);
}
