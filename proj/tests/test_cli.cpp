#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <sys/wait.h>

#include "thetatqft/io.hpp"
#include "thetatqft/sampling.hpp"

using namespace thetatqft;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string sample(const std::string& name) { return std::string(SAMPLES_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

std::complex<double> as_complex(const json& j) {
  if (j.is_array()) return {j[0].get<double>(), j[1].get<double>()};
  return {j["float"][0].get<double>(), j["float"][1].get<double>()};
}

}  // namespace

TEST(Cli, InvariantS3) {
  auto r = run("invariant --input " + sample("s3.json") + " --format float");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_NEAR(as_complex(j["value"]).real(), 0.5, 1e-12);
  EXPECT_NEAR(as_complex(j["value"]).imag(), 0.0, 1e-12);
  // exact form round-trips to N^{-1/2}
  auto e = run("invariant --input " + sample("s3.json"));
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(scalar_from_json(json::parse(e.out)["value"]), Scalar::sqrt_n(4, -1));
}

TEST(Cli, FlagOverridesInputLevel) {
  auto r = run("invariant --input " + sample("s3.json") + " --N 16 --format float");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["N"], 16);
  EXPECT_NEAR(as_complex(j["value"]).real(), 0.25, 1e-12);
}

TEST(Cli, ClosedExamples) {
  auto s = json::parse(run("invariant --input " + sample("s2xs1.json")).out);
  EXPECT_EQ(scalar_from_json(s["value"]), Scalar::one(4));
  auto l = json::parse(run("invariant --input " + sample("lens_4_1.json")).out);
  EXPECT_EQ(scalar_from_json(l["value"]), Scalar::anomaly(2, 1));
}

TEST(Cli, PhiOnVacuum) {
  auto r = run("mcg-rep --input " + sample("phi.json"));
  ASSERT_EQ(r.code, 0);
  auto v = json::parse(r.out)["vector"];
  ASSERT_EQ(v.size(), 2u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(v[i]["index"], json::array({i}));
    EXPECT_EQ(scalar_from_json(v[i]["coeff"]), Scalar::sqrt_n(2, -1));
  }
}

TEST(Cli, CobordismSamples) {
  auto c = json::parse(run("cobordism --input " + sample("cylinder_g1.json")).out);
  ASSERT_EQ(c["rows"], 4);
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k)
      EXPECT_EQ(scalar_from_json(c["matrix"][r][k]), r == k ? Scalar::anomaly(4, 1) : Scalar::zero(4));
  auto h = json::parse(run("cobordism --input " + sample("handlebody_a.json")).out);
  ASSERT_EQ(h["cols"], 1);
  for (int r = 0; r < 4; ++r) EXPECT_EQ(scalar_from_json(h["matrix"][r][0]), r == 1 ? Scalar::one(4) : Scalar::zero(4));
}

TEST(Cli, Heisenberg) {
  auto r = run("heisenberg --input " + sample("heisenberg_g1.json"));
  ASSERT_EQ(r.code, 0);
  auto ops = json::parse(r.out)["operators"];
  ASSERT_EQ(ops.size(), 3u);
  EXPECT_EQ(ops[2]["name"], "center");
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(ops[2]["phase_t"][i], 1);
    EXPECT_EQ(scalar_from_json(ops[2]["matrix"][i][i]), Scalar::t_power(4, 1));
  }
  EXPECT_EQ(run("heisenberg --N 2 --genus 2").code, 0);
}

TEST(Cli, ExactAndFloatAgree) {
  for (const char* f : {"s3.json", "lens_4_1.json", "cylinder_g1.json", "phi.json"}) {
    std::string cmd = std::string(f) == "phi.json" ? "mcg-rep" : (std::string(f) == "cylinder_g1.json" ? "cobordism" : "invariant");
    auto e = json::parse(run(cmd + " --input " + sample(f)).out);
    auto fl = json::parse(run(cmd + " --input " + sample(f) + " --format float").out);
    if (cmd == "invariant") {
      EXPECT_LT(std::abs(scalar_from_json(e["value"]).to_complex() - as_complex(fl["value"])), 1e-9);
    } else {
      for (size_t r = 0; r < e["matrix"].size(); ++r)
        for (size_t k = 0; k < e["matrix"][r].size(); ++k) {
          auto x = scalar_from_json(e["matrix"][r][k]);
          auto z = x.is_zero() ? std::complex<double>(0, 0) : x.to_complex();
          EXPECT_LT(std::abs(z - as_complex(fl["matrix"][r][k])), 1e-9);
        }
    }
  }
}

TEST(Cli, Deterministic) {
  for (const char* args : {"cobordism --input ", "cobordism --format float --input "}) {
    auto a = run(std::string(args) + sample("cylinder_g1.json"));
    auto b = run(std::string(args) + sample("cylinder_g1.json"));
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("invariant --input " + write_temp("bad.json", "{not json")).code, 1);
  EXPECT_EQ(run("invariant").code, 1);
  EXPECT_EQ(run("invariant --input /nonexistent/file.json").code, 1);
  EXPECT_EQ(run("nosuchcommand").code, 1);
  EXPECT_EQ(run("invariant --input " + write_temp("role.json", R"({"N":2,"components":[{"role":"x"}],"B":[[0]]})")).code, 1);
  EXPECT_EQ(run("invariant --input " + write_temp("asym.json", R"({"N":2,"components":[{"role":"surgery"},{"role":"surgery"}],"B":[[0,1],[2,0]]})")).code, 1);
  EXPECT_EQ(run("invariant --input " + sample("s3.json") + " --N 3").code, 2);
  EXPECT_EQ(run("invariant --input " + write_temp("nolevel.json", R"({"components":[],"B":[]})")).code, 1);
  // size guard: genus 6 at N = 10 is 10^12 entries
  std::string big = R"({"N":10,"bottom":{"genera":[6]},"top":{"genera":[6]},"components":[)";
  std::string rows;
  for (int i = 0; i < 6; ++i) big += R"({"role":"core-bottom","graph":0,"handle":)" + std::to_string(i) + "},";
  for (int i = 0; i < 6; ++i) big += R"({"role":"core-top","graph":0,"handle":)" + std::to_string(i) + (i < 5 ? "}," : "}");
  big += R"(],"B":[)";
  for (int i = 0; i < 12; ++i) {
    big += "[";
    for (int k = 0; k < 12; ++k) big += std::string("0") + (k < 11 ? "," : "");
    big += i < 11 ? "]," : "]";
  }
  big += "]}";
  EXPECT_EQ(run("cobordism --input " + write_temp("big.json", big)).code, 2);
  EXPECT_EQ(run("mcg-rep --input " + write_temp("word.json", R"({"N":2,"genus":1,"word":[["Tz1",1]]})")).code, 1);
}

TEST(Cli, ThetaCheck) {
  auto r = run("theta-check --N 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out)["pass"].get<bool>());
}

TEST(Cli, Selftest) {
  auto r = run("selftest --seed 20261018");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("12/12 criteria passed"), std::string::npos);
}

TEST(Io, CobordismRoundTrip) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 20; ++k) {
    FramedCobordism M = random_cobordism({1 + k % 2}, {1, k % 2}, k % 3, 1, rng, true);
    FramedCobordism back = cobordism_from_json(json::parse(cobordism_to_json(M).dump()));
    EXPECT_EQ(back.link, M.link);
    EXPECT_EQ(back.weight, M.weight);
    EXPECT_EQ(z_matrix(back, 2), z_matrix(M, 2));
  }
}

TEST(Io, ScalarRoundTrip) {
  for (int N : {2, 4, 6}) {
    Scalar s = Scalar::t_power(N, 3) + Scalar::sqrt_n(N, -1).times_zeta(5) + Scalar::rational(N, mpq_class(2, 7));
    EXPECT_EQ(scalar_from_json(scalar_to_json(s, N)), s);
    EXPECT_TRUE(scalar_from_json(scalar_to_json(Scalar::zero(N), N)).is_zero());
  }
}
