#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
CliRun pnf(const std::string& args) {
  const std::string cmd = std::string(PNF_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string golden_path(const std::string& name) { return std::string(PNF_GOLDEN_DIR) + "/" + name; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pnf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

  fs::path dir_;
};

std::string map_psf(const std::string& grading, int order, const std::string& x, const std::string& y) {
  return "psf 1\ngrading " + grading + "\norder " + std::to_string(order) + "\ncomponent x\n" + x +
         "component y\n" + y + "end\n";
}

}  // namespace

TEST_F(Cli, NormalizeShear) {
  const CliRun r = pnf("normalize --order 12 " + golden_path("shear.psf"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(golden_path("shear.result")));
  EXPECT_NE(r.out.find("unique=false"), std::string::npos);
}

TEST_F(Cli, GoldenOutputs) {
  const std::string flow = golden_path("cubic_flow.psf");
  EXPECT_EQ(pnf("normalize --order 12 " + flow).out, slurp(golden_path("cubic_flow.result")));
  EXPECT_EQ(pnf("invariants --order 12 " + flow).out, slurp(golden_path("cubic_flow.invariants")));
  EXPECT_EQ(pnf("classify " + flow).out, slurp(golden_path("cubic_flow.classify")));
  EXPECT_EQ(pnf("interpolate --order 12 " + flow).out, slurp(golden_path("cubic_flow.interp")));
  EXPECT_EQ(pnf("normalize " + golden_path("reversing.psf")).out, slurp(golden_path("reversing.result")));
  EXPECT_EQ(pnf("flow " + golden_path("cubic_hamiltonian.psf")).out, slurp(flow));
}

TEST_F(Cli, CubicFlowInvariants) {
  const CliRun r = pnf("normalize --order 12 " + golden_path("cubic_flow.psf"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("n=3\nb=-1/3\n"), std::string::npos) << r.out;
}

TEST_F(Cli, Verify) {
  const CliRun r = pnf("verify --order 16 --trials 5 --seed 7 " + golden_path("cubic_flow.psf"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("5/5 invariance trials passed"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("roundtrip: pass"), std::string::npos) << r.out;
}

TEST_F(Cli, StdinAndOutputFile) {
  const std::string out = (dir_ / "out.result").string();
  const CliRun r = pnf("normalize --order 12 -o " + out + " - < " + golden_path("shear.psf"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(out), slurp(golden_path("shear.result")));
}

TEST_F(Cli, ParseErrorsExitTwo) {
  const std::string bad = write("bad.psf", "psf 1\ngrading 2 3 6\norder 4\ncomponent x\n0 0 0 1/0\nend\n");
  EXPECT_EQ(pnf("normalize " + bad).code, 2);
  EXPECT_EQ(pnf("normalize --bogus " + golden_path("shear.psf")).code, 2);
  EXPECT_EQ(pnf("normalize --case sideways " + golden_path("shear.psf")).code, 2);
  EXPECT_EQ(pnf("normalize " + (dir_ / "missing.psf").string()).code, 2);
  EXPECT_EQ(pnf("").code, 2);
}

TEST_F(Cli, NotAreaPreservingExitsThree) {
  const std::string f = write("f.psf", map_psf("2 3 6", 12, "0 1 0 1\n1 0 0 1\n2 0 0 1\n", "0 1 0 1\n"));
  EXPECT_EQ(pnf("normalize " + f).code, 3);
}

TEST_F(Cli, UnsupportedLinearPartExitsFour) {
  const std::string f = write("rot.psf", map_psf("1 1 3", 6, "0 1 0 -1\n", "1 0 0 1\n"));
  EXPECT_EQ(pnf("normalize " + f).code, 4);
  EXPECT_EQ(pnf("normalize --case diag+ " + golden_path("shear.psf")).code, 4);
}

TEST_F(Cli, DegeneracyExitsFive) {
  const std::string f = write("flip.psf", map_psf("1 1 3", 8, "1 0 0 -1\n", "0 1 0 1\n"));
  EXPECT_EQ(pnf("normalize " + f).code, 5);
}

TEST_F(Cli, InconsistencyExitsSix) {
  // x^2 is below the lowest admissible generator weight under (2, 3, 6).
  const std::string h = write("h.psf", "psf 1\ngrading 2 3 6\norder 12\ncomponent h\n2 0 0 1\nend\n");
  EXPECT_EQ(pnf("flow " + h).code, 6);
}

TEST_F(Cli, ClassifyPrintsCase) {
  const std::string f = write("minus.psf", map_psf("2 3 6", 12, "0 1 0 -1\n1 0 0 -1\n", "0 1 0 -1\n2 0 0 3\n"));
  const CliRun r = pnf("classify " + f);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "case=jordan-\nlinear=-1 -1 0 -1\n");
}
