#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gltkit/io.hpp"
#include "runner.hpp"

using namespace gltkit;
using namespace gltkit::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "gltkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gltkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string out_dir() const { return (dir_ / "out").string(); }

  fs::path dir_;
};

const char* kTridiag =
    R"({"levels":1,"s":1,"t":1,"coeffs":[{"k":[-1],"re":-1},{"k":[0],"re":2},{"k":[1],"re":-1}]})";

}  // namespace

TEST(ParseSizeList, AcceptsAndRejects) {
  EXPECT_EQ(parse_size_list("12,24,48"), (std::vector<std::size_t>{12, 24, 48}));
  EXPECT_EQ(parse_size_list("7"), (std::vector<std::size_t>{7}));
  for (const char* bad : {"", "1,,2", "1,", "0", "-3", "a", "1.5", "2 3"})
    EXPECT_THROW(parse_size_list(bad), ConfigError) << bad;
}

TEST(Perm, Examples) {
  auto r = run({"perm", "p-shuffle", "2", "3"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_EQ(r.out, "1,4,2,5,3,6\n");
  r = run({"perm", "gamma", "2,2", "2,1"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_EQ(r.out, "1,3,2,4\n");
  r = run({"perm", "pi", "4,5", "1,1"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_EQ(r.out.substr(0, 8), "1,2,3,4,");
}

TEST(Perm, Errors) {
  EXPECT_EQ(run({"perm", "p-shuffle", "2000", "2000"}).code, kExitConfig);
  EXPECT_EQ(run({"perm", "gamma", "2,2", "1,1"}).code, kExitConfig);
  EXPECT_EQ(run({"perm", "rotate", "2", "3"}).code, kExitConfig);
  EXPECT_EQ(run({"perm", "p-shuffle", "2"}).code, kExitConfig);
}

TEST(Usage, UnknownSubcommandAndHelp) {
  EXPECT_EQ(run({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(run({}).code, kExitConfig);
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, kExitPass);
  EXPECT_NE(help.out.find("verify"), std::string::npos);
}

TEST_F(Cli, MatrixToeplitzExample) {
  const auto coeffs = write("tridiag.json", kTridiag);
  const auto r = run({"matrix", "toeplitz", "--n", "3", "--coeffs", coeffs});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const ComplexMatrix expected{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  EXPECT_EQ(matrix_from_text(r.out), expected);

  const auto w = run({"matrix", "toeplitz", "--n", "3", "--coeffs", coeffs, "--out", out_dir()});
  ASSERT_EQ(w.code, kExitPass);
  EXPECT_EQ(matrix_from_text(read_file(fs::path(out_dir()) / "toeplitz.txt")), expected);
}

TEST_F(Cli, MatrixOtherKindsAndLimits) {
  auto r = run({"matrix", "sampling", "--n", "2,2", "--a", "x1*x2"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const double d[] = {0.25, 0.5, 0.5, 1};
  EXPECT_EQ(matrix_from_text(r.out), ComplexMatrix::diagonal(std::span<const double>(d)));
  r = run({"matrix", "poisson", "--m", "2,2", "--p", "1,1"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_NEAR(matrix_from_text(r.out)(0, 0).real(), 8.0 / 3, 1e-14);
  const auto sym = write("sym.json", std::string(R"({"levels":1,"s":1,"t":1,"terms":[{"a":"x1","f":)") + kTridiag + "}]}");
  r = run({"matrix", "glt", "--n", "4", "--symbol", sym});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_EQ(matrix_from_text(r.out).rows(), 4u);

  const auto coeffs = write("tridiag.json", kTridiag);
  EXPECT_EQ(run({"matrix", "toeplitz", "--n", "6000", "--coeffs", coeffs}).code, kExitConfig);
  EXPECT_EQ(run({"matrix", "sampling", "--n", "3", "--a", "x1+"}).code, kExitConfig);
  EXPECT_EQ(run({"matrix", "toeplitz", "--n", "3", "--coeffs", (dir_ / "nope.json").string()}).code, kExitIo);
}

TEST_F(Cli, ToeplitzTensorConfig) {
  const auto cfg = write("t.json", R"({"kind":"toeplitz-tensor","seed":7})");
  const auto r = run({"verify", "--config", cfg, "--out", out_dir()});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const auto summary = json::parse(read_file(fs::path(out_dir()) / "toeplitz-tensor.json"));
  EXPECT_EQ(summary["verdict"], "PASS");
  EXPECT_LE(summary["max_deviation"].get<double>(), 1e-12);
  EXPECT_EQ(summary["inputs"]["seed"], 7);
  EXPECT_TRUE(summary.contains("wall_time_seconds"));
}

TEST_F(Cli, PermutationAuditConfig) {
  const auto cfg = write("a.json", R"({"kind":"permutation-audit","max_total":8})");
  const auto r = run({"verify", "--config", cfg, "--out", out_dir()});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const auto csv = read_file(fs::path(out_dir()) / "permutation-audit.csv");
  EXPECT_EQ(csv.find(",false,"), std::string::npos);
  EXPECT_NE(csv.find("2;2,2;1,24,1,true,1;3;2;4"), std::string::npos);
  EXPECT_EQ(json::parse(read_file(fs::path(out_dir()) / "permutation-audit.json"))["unique"], true);
}

TEST_F(Cli, MalformedConfigLeavesNoOutput) {
  const auto cfg = write("bad.json", R"({"kind":"toeplitz-tensor",)");
  const auto r = run({"verify", "--config", cfg, "--out", out_dir()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_FALSE(fs::exists(out_dir()));
}

TEST_F(Cli, ConfigValidation) {
  const std::pair<const char*, const char*> cases[] = {
      {"unknown-field", R"({"kind":"toeplitz-tensor","bogus":1})"},
      {"unknown-kind", R"({"kind":"spectral-dance"})"},
      {"no-kind", R"({"seed":1})"},
      {"negative-seed", R"({"kind":"sampling-tensor","seed":-1})"},
      {"bad-tolerance", R"({"kind":"sampling-tensor","tolerance":"tiny"})"},
      {"audit-too-big", R"({"kind":"permutation-audit","max_total":9})"},
      {"missing-symbol", R"({"kind":"distribution","schedule":[8]})"},
      {"descending", R"({"kind":"fem-poisson","schedule":[24,12]})"},
      {"oversize", R"({"kind":"fem-poisson","schedule":[100]})"},
      {"bad-pair", R"({"kind":"acs-tensor","pair":"mystery"})"},
      {"bad-mode", std::string(R"({"kind":"distribution","schedule":[8],"mode":"xx","symbol":{"levels":1,"s":1,"t":1,"terms":[]}})").c_str()},
  };
  for (const auto& [name, text] : cases) {
    const auto cfg = write(std::string(name) + ".json", text);
    const auto r = run({"verify", "--config", cfg, "--out", out_dir()});
    EXPECT_EQ(r.code, kExitConfig) << name << ": " << r.out;
    EXPECT_FALSE(r.err.empty()) << name;
  }
  EXPECT_FALSE(fs::exists(out_dir()));
  EXPECT_EQ(run({"verify", "--config", (dir_ / "missing.json").string()}).code, kExitIo);
}

TEST_F(Cli, OverridesReplaceConfigFields) {
  const json raw = {{"kind", "sampling-tensor"}, {"seed", 3}};
  Overrides ov;
  ov.seed = 9;
  ov.tol = 0.5;
  const auto c = normalize_config(raw, ov);
  EXPECT_EQ(c["seed"], 9);
  EXPECT_EQ(c["tolerance"], 0.5);
  EXPECT_EQ(c["count"], 20);
  Overrides sched;
  sched.schedule = std::vector<std::size_t>{8, 16};
  EXPECT_THROW(normalize_config(raw, sched), ConfigError);
  EXPECT_EQ(normalize_config({{"kind", "fem-poisson"}}, sched)["schedule"], json({8, 16}));
}

TEST_F(Cli, CsvIsDeterministic) {
  const json cfg = {{"kind", "glt-tensor"}, {"seed", 5}};
  const auto a = run_experiment(cfg), b = run_experiment(cfg);
  EXPECT_EQ(a.csv, b.csv);
  EXPECT_EQ(a.csv.find("wall"), std::string::npos);
  const json other = {{"kind", "glt-tensor"}, {"seed", 6}};
  EXPECT_NE(run_experiment(other).csv, a.csv);
}

TEST_F(Cli, VerdictsMatchLibraryCalls) {
  const json acs = {{"kind", "acs-tensor"}, {"pair", "identity-zero"}, {"tensor", false},
                    {"schedule", {8, 16}}, {"ms", {1, 2}}, {"tolerance", 0.1}};
  const auto r = run_experiment(acs);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.summary["rho_hat"], json({1.0, 1.0}));
  const json stair = {{"kind", "acs-tensor"}, {"tensor", false}, {"schedule", {16, 32}},
                      {"ms", {1, 2, 4}}, {"tolerance", 1.0}};
  EXPECT_TRUE(run_experiment(stair).pass);
}

TEST_F(Cli, SpectrumFromSymbolAndFemDefaults) {
  const auto sym = write("lap.json", std::string(R"({"levels":1,"s":1,"t":1,"terms":[{"a":"1","f":)") + kTridiag + "}]}");
  auto r = run({"spectrum", "--symbol", sym, "--mode", "eig", "--schedule", "64,128,256", "--tol", "0.05",
                "--out", out_dir(), "--gnuplot-hints"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_NE(r.out.find("abs_diff"), std::string::npos);
  const auto csv = read_file(fs::path(out_dir()) / "distribution.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "mode,n,size,f_index,test_function,empirical,reference,abs_diff");

  r = run({"fem", "--degrees", "1", "--schedule", "32,64,128", "--out", out_dir()});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const auto summary = json::parse(read_file(fs::path(out_dir()) / "fem-poisson.json"));
  EXPECT_EQ(summary["inputs"]["degrees"], json({1}));
  EXPECT_EQ(summary["hermitian"], true);

  const auto audit = write("a.json", R"({"kind":"permutation-audit"})");
  EXPECT_EQ(run({"fem", "--config", audit}).code, kExitConfig);
  EXPECT_EQ(run({"spectrum", "--config", audit}).code, kExitConfig);
}

TEST_F(Cli, FailingVerdictExitsOne) {
  const auto cfg = write("neg.json", R"({"kind":"acs-tensor","pair":"identity-zero","tensor":false,"schedule":[8,16],"ms":[1,2]})");
  const auto r = run({"verify", "--config", cfg, "--out", out_dir()});
  EXPECT_EQ(r.code, kExitFail);
  EXPECT_TRUE(fs::exists(fs::path(out_dir()) / "acs-tensor.csv"));
}
