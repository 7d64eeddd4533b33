#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

struct CommandResult {
  int code = -1;
  std::string output;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qcc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CommandResult run(const std::string& args) const {
    const std::string cmd = "cd '" + dir_.string() + "' && '" + QCC_BINARY + "' " + args + " 2>&1";
    CommandResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  fs::path dir_;
};

TEST_F(Cli, CharacterOfSimple) {
  const auto r = run("char --quiver a2.q --module 'S 2' --prime 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.output, "X^(1,-1) + X^(0,-1)\n");
}

TEST_F(Cli, ShiftedInjectiveIsMonomial) {
  const auto r = run("char --quiver a2 --module 'I 1' --shift -1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.output.find('+'), std::string::npos);
  EXPECT_EQ(r.output.rfind("X^(", 0), 0u);
}

TEST_F(Cli, MalformedModuleFile) {
  const auto path = write("bad.mod", "dim 1 1\nmap 1 1 1\nx\n");
  const auto r = run("char --quiver a2 --module '" + path.string() + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("line 3"), std::string::npos) << r.output;
}

TEST_F(Cli, CyclicQuiverFile) {
  const auto path = write("cyc.q", "vertices 2\narrow 1 2\narrow 2 1\n");
  const auto r = run("char --quiver '" + path.string() + "' --module 'S 1'");
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, GrassmannianCounts) {
  EXPECT_EQ(run("gr-count --quiver a2.q --module 'P 1' --e 0,1 --prime 5").output, "1\n");
  EXPECT_EQ(run("gr-count --quiver a2.q --module 'P 1' --e 0,0 --prime 5").output, "1\n");
  EXPECT_EQ(run("gr-count --quiver kronecker --module 'P 1' --e 0,1 --prime 5").output, "6\n");
}

TEST_F(Cli, CalibrateCachesNextToQuiverFile) {
  const auto q = write("line.q", "vertices 2\narrow 1 2\n");
  const auto r = run("calibrate --quiver '" + q.string() + "' --primes 2,3,5");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.output.find("chosen: sigma=+1 prefactor=q^[M,I]-1"), std::string::npos) << r.output;
  EXPECT_TRUE(fs::exists(dir_ / ".qcc-convention.json"));
}

TEST_F(Cli, VerifyCdzPasses) {
  const auto r = run("verify cdz --quiver a2.q --M 'S 1' --N 'S 2' --primes 2,3,5");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("3/3 reports pass"), std::string::npos);
}

TEST_F(Cli, VanishingExtExitsTwo) {
  const auto r = run("verify cdz --quiver a2.q --M 'S 2' --N 'S 1' --primes 2");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("precondition"), std::string::npos);
}

TEST_F(Cli, WrongSignExitsOne) {
  const auto r = run("verify cdz --quiver a2 --M 'S 1' --N 'S 2' --primes 3 --sigma -1");
  EXPECT_EQ(r.code, 1) << r.output;
  EXPECT_NE(r.output.find("first failure"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("verify nonsense --quiver a2").code, 2);
  EXPECT_EQ(run("verify cdz --quiver a2 --M 'S 1' --N 'S 2' --primes 4").code, 2);
  EXPECT_EQ(run("verify cdz --quiver a2 --M 'S 1' --N 'S 2' --primes 3,3").code, 2);
  EXPECT_EQ(run("verify cdz --quiver a2 --M 'Q 1' --N 'S 2'").code, 2);
  EXPECT_EQ(run("verify cdz --quiver nowhere --M 'S 1' --N 'S 2'").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST_F(Cli, VerifyAllA4) {
  const auto r = run("verify all --quiver a4.q --primes 2,3");
  EXPECT_EQ(r.code, 0) << r.output.substr(r.output.size() > 2000 ? r.output.size() - 2000 : 0);
}

TEST_F(Cli, JsonOutputIsByteStable) {
  const std::string args = "verify split --quiver a2 --M 'P 1' --N 'S 2' --primes 2,3 --out ";
  ASSERT_EQ(run(args + "a.json").code, 0);
  ASSERT_EQ(run(args + "b.json").code, 0);
  const auto a = slurp(dir_ / "a.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir_ / "b.json"));
  EXPECT_EQ(a.find("\"identity\""), a.find('"'));
}

TEST_F(Cli, InterpolatesGaussianBinomial) {
  const auto q = write("point.q", "vertices 1\n");
  const auto m = write("plane.mod", "dim 2\n");
  const auto r = run("interp gr --quiver '" + q.string() + "' --module '" + m.string() + "' --e 1 --primes 2,3,5");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(r.output, "q + 1\n");
}

TEST_F(Cli, InterpolatesCdz) {
  const auto r = run("interp cdz --quiver kronecker --M 'S 1' --N 'S 2' --primes 2,3,5,7");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("PASS motivic cdz"), std::string::npos);
}

}  // namespace
