#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "schro/circuit_io.hpp"
#include "schro/heat.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "schro_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args, const std::string& out = "out.txt") {
  const std::string cmd = "cd '" + work_dir().string() + "' && '" SCHRO_CLI_PATH "' " + args + " > " + out +
                          " 2> err.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& name) {
  std::ifstream in(work_dir() / name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run("solve --n-x 0"), 2);
  EXPECT_NE(slurp("err.txt").find("n_x"), std::string::npos);
  EXPECT_EQ(run("solve --equation wave"), 2);
  EXPECT_EQ(run("solve --no-such-flag"), 2);
  EXPECT_EQ(run("verify"), 2);
  EXPECT_EQ(run("verify --suite nothing"), 2);
  EXPECT_EQ(run("count --formula Q_V0 --n-x 2"), 2);
  EXPECT_EQ(run("solve --config missing.json"), 2);
}

TEST(Cli, VerifySuitesPass) {
  EXPECT_EQ(run("verify --suite commutators --json comm.json"), 0);
  EXPECT_NE(slurp("out.txt").find("comm_h1_h2"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp("comm.json"));
  EXPECT_EQ(j["bounds"].size(), 28u);
  EXPECT_EQ(run("verify --suite counts --nx-max 4 --csv counts.csv"), 0);
  EXPECT_NE(slurp("counts.csv").find("v0_cnot"), std::string::npos);
}

TEST(Cli, ExportRoundTrip) {
  ASSERT_EQ(run("export --circuit w --n-x 3 --j 3 --tau 0.2 --gamma 1.5"), 0);
  const schro::Circuit back = schro::circuit_from_text(slurp("out.txt"));
  EXPECT_EQ(back, schro::w_gate(3, 1.5 * 0.2, 0.0, 3));
  ASSERT_EQ(run("export --circuit v0 --n-x 3 --format json"), 0);
  EXPECT_EQ(schro::circuit_from_json(nlohmann::json::parse(slurp("out.txt"))), schro::v0(0.1, 1.0, 3));
  ASSERT_EQ(run("export --circuit b2 --n-x 2"), 0);
  EXPECT_NE(slurp("out.txt").find("P 2 -1.5707963267948966"), std::string::npos);
}

TEST(Cli, CountFormula) {
  ASSERT_EQ(run("count --formula Q_V0 --formula Q_Vheat --n-x 3 --n-p 2"), 0);
  const auto j = nlohmann::json::parse(slurp("out.txt"));
  EXPECT_EQ(j["cnot_equivalent"]["Q_V0"].get<std::int64_t>(), 16);
  ASSERT_EQ(run("count --circuit w --n-x 3 --j 3"), 0);
  const auto w = nlohmann::json::parse(slurp("out.txt"));
  EXPECT_EQ(w["native"]["cnot"].get<int>(), 4);
}

TEST(Cli, SolveWritesFiles) {
  {
    std::ofstream cfg(work_dir() / "cfg.json");
    cfg << R"({"n_x": 2, "n_p": 5, "T": 0.02, "report": "r.json", "solution": "s.csv"})";
  }
  ASSERT_EQ(run("solve --config cfg.json --evolution exact"), 0) << slurp("err.txt");
  const auto rep = nlohmann::json::parse(slurp("r.json"));
  EXPECT_EQ(rep["config"]["n_x"].get<int>(), 2);
  EXPECT_EQ(rep["config"]["evolution"].get<std::string>(), "exact");
  EXPECT_GT(rep["result"]["fidelity"].get<double>(), 0.99);
  EXPECT_EQ(slurp("s.csv").substr(0, 20), "i1,re,im,exact_re,ex");
}

TEST(Cli, SweepRunsEveryPoint) {
  ASSERT_EQ(run("solve --n-x 2 --T 0.02 --evolution exact --report sw.json --solution sw.csv --sweep n_p=4,5 "
                "--threads 2"),
            0)
      << slurp("err.txt");
  EXPECT_TRUE(fs::exists(work_dir() / "sw_n_p4.json"));
  EXPECT_TRUE(fs::exists(work_dir() / "sw_n_p5.json"));
  EXPECT_TRUE(fs::exists(work_dir() / "sw_n_p5.csv"));
  EXPECT_EQ(run("solve --n-x 2 --sweep n_q=1"), 2);
}
