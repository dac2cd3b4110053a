#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gauss_renyi/cli.hpp"

using namespace gauss_renyi;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(GAUSS_RENYI_DATA_DIR) + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(CliEntropy, EqualStatesGiveZero) {
  const Result r = run({"entropy", "--alpha", "0.5", data("thermal_ln2.json"), data("thermal_ln2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["divergence"].get<double>(), 0.0, 1e-10);
  for (const char* key : {"alpha", "divergence", "T_alpha", "trace_Z", "s", "t_Z", "p_s", "p_tZ", "p_alpha_tZ"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(CliEntropy, ThermalPairAndNamedOptions) {
  const Result r =
      run({"entropy", "--alpha", "0.5", "--rho", data("thermal_ln2.json"), "--sigma", data("thermal_ln4.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["divergence"].get<double>(), 0.10829991653546, 1e-11);
}

TEST(CliEntropy, PureSigmaIsDomainError) {
  const Result r = run({"entropy", "--alpha", "0.5", data("thermal_ln2.json"), data("vacuum.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("faithful"), std::string::npos);
}

TEST(CliEntropy, AlphaOutOfRange) {
  const Result r = run({"entropy", "--alpha", "1.0", data("thermal_ln2.json"), data("thermal_ln4.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("0<alpha<1"), std::string::npos);
}

TEST(CliEntropy, InputErrors) {
  EXPECT_EQ(run({"entropy", "--alpha", "0.5", data("malformed.json"), data("thermal_ln2.json")}).code, 1);
  EXPECT_EQ(run({"entropy", "--alpha", "0.5", data("missing.json"), data("thermal_ln2.json")}).code, 1);
  EXPECT_EQ(run({"entropy", "--alpha", "abc", data("thermal_ln2.json"), data("thermal_ln2.json")}).code, 1);
  EXPECT_EQ(run({"entropy", data("thermal_ln2.json"), data("thermal_ln2.json")}).code, 1);
  EXPECT_EQ(run({"entropy", "--alpha", "0.5", data("thermal_ln2.json")}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  const std::string bad_shape = temp_file("bad_shape.json", R"({"n": 1, "mean": [0], "cov": [[1, 0], [0, 1]]})");
  EXPECT_EQ(run({"entropy", "--alpha", "0.5", bad_shape, data("thermal_ln2.json")}).code, 1);
}

TEST(CliEntropy, UnphysicalStateIsDomainError) {
  const std::string path = temp_file("unphysical.json", R"({"n": 1, "mean": [0, 0], "cov": [[0.25, 0], [0, 0.25]]})");
  const Result r = run({"entropy", "--alpha", "0.5", path, data("thermal_ln2.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not a physical Gaussian state"), std::string::npos);
}

TEST(CliEntropy, ReportRoundTrip) {
  // Recomputing divergence from the printed T_alpha gives the printed value.
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"thermal_ln2.json", "thermal_ln4.json"},
      {"coherent_1.json", "thermal_ln2.json"},
      {"squeezed_vacuum.json", "thermal_ln4.json"},
      {"thermal_ln4.json", "thermal_ln2.json"},
  };
  for (const auto& [rho, sigma] : pairs) {
    for (const char* alpha : {"0.2", "0.5", "0.77"}) {
      const Result r = run({"entropy", "--alpha", alpha, data(rho), data(sigma)});
      ASSERT_EQ(r.code, 0) << r.err;
      const json j = json::parse(r.out);
      const double recomputed = std::log(j["T_alpha"].get<double>()) / (j["alpha"].get<double>() - 1.0);
      EXPECT_EQ(io::format12(recomputed), io::format12(j["divergence"].get<double>())) << rho << " " << alpha;
      EXPECT_EQ(json(io::round12(recomputed)).dump(), j["divergence"].dump());
    }
  }
}

TEST(CliEntropy, TableFormat) {
  const Result r =
      run({"entropy", "--alpha", "0.5", "--format", "table", data("coherent_1.json"), data("thermal_ln2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("divergence"), std::string::npos);
  EXPECT_NE(r.out.find("inf"), std::string::npos);
  EXPECT_EQ(run({"entropy", "--alpha", "0.5", "--format", "xml", data("coherent_1.json"), data("thermal_ln2.json")})
                .code,
            1);
}

TEST(CliSweep, Monotone) {
  const Result r = run({"sweep", "--alphas", "0.2,0.5,0.8", data("squeezed_thermal_2mode.json"),
                        data("thermal_ln2.json")});
  EXPECT_EQ(r.code, 2);  // 2-mode vs 1-mode
  const Result ok = run({"sweep", "--alphas", "0.2,0.5,0.8", data("coherent_1.json"), data("thermal_ln4.json")});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const json j = json::parse(ok.out);
  ASSERT_EQ(j.size(), 3u);
  EXPECT_LE(j[0]["divergence"].get<double>(), j[1]["divergence"].get<double>());
  EXPECT_LE(j[1]["divergence"].get<double>(), j[2]["divergence"].get<double>());
  EXPECT_EQ(run({"sweep", "--alphas", "0.2,1.5", data("coherent_1.json"), data("thermal_ln4.json")}).code, 2);
  EXPECT_EQ(run({"sweep", "--alphas", "0.2,x", data("coherent_1.json"), data("thermal_ln4.json")}).code, 1);
}

TEST(CliWilliamson, Examples) {
  const Result vac = run({"williamson", data("vacuum.json")});
  ASSERT_EQ(vac.code, 0) << vac.err;
  const json jv = json::parse(vac.out);
  EXPECT_NEAR(jv["d"][0].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(jv["t"][0], "inf");

  const Result th = run({"williamson", "--rho", data("thermal_ln2.json")});
  ASSERT_EQ(th.code, 0) << th.err;
  const json jt = json::parse(th.out);
  EXPECT_NEAR(jt["d"][0].get<double>(), 1.5, 1e-11);
  EXPECT_NEAR(jt["t"][0].get<double>(), std::log(2.0), 1e-11);

  const Result two = run({"williamson", "--format", "table", data("squeezed_thermal_2mode.json")});
  EXPECT_EQ(two.code, 0) << two.err;

  EXPECT_EQ(run({"williamson", data("malformed.json")}).code, 1);
}

TEST(CliConvert, RoundTrip) {
  const Result fwd = run({"convert", data("squeezed_thermal_2mode.json")});
  ASSERT_EQ(fwd.code, 0) << fwd.err;
  const json quad = json::parse(fwd.out);
  EXPECT_TRUE(quad.contains("Lambda"));
  const std::string path = temp_file("quad.json", fwd.out);
  const Result back = run({"convert", path});
  ASSERT_EQ(back.code, 0) << back.err;
  const json state = json::parse(back.out);
  const json orig = io::read_json_file(data("squeezed_thermal_2mode.json"));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(state["mean"][i].get<double>(), orig["mean"][i].get<double>(), 1e-9);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(state["cov"][i][k].get<double>(), orig["cov"][i][k].get<double>(), 1e-9);
  }
}

TEST(CliVerify, SingleModeSelectionPasses) {
  const Result r = run({"verify", "--only", "1mode/coherent", "--alphas", "0.5,0.9"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(CliVerify, SmallCutoffReportsNotConverged) {
  const Result r = run({"verify", "--only", "1mode", "--verify-cutoff", "8"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("cutoff not converged"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(CliVerify, EmptySelection) {
  const Result r = run({"verify", "--only", "no-such-instance"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("empty"), std::string::npos);
}

TEST(CliVerify, ToleranceFromEnvironment) {
  // An impossibly tight tolerance turns passes into failures or non-convergence.
  setenv("GAUSS_RENYI_TOL", "1e-15", 1);
  const Result tight = run({"verify", "--only", "1mode/squeezed-displaced-vs-thermal", "--format", "json"});
  setenv("GAUSS_RENYI_TOL", "nope", 1);
  const Result bad = run({"verify", "--only", "1mode/coherent"});
  unsetenv("GAUSS_RENYI_TOL");
  EXPECT_NE(tight.code, 0);
  const json j = json::parse(tight.out);
  EXPECT_EQ(j[0]["tol"].get<double>(), 1e-15);
  EXPECT_EQ(bad.code, 1);
}
