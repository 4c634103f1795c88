#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace mlk::cli {
namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int const code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Data(std::string const& name) { return std::string(MLK_CLI_DATA) + "/" + name; }

double Total(std::string const& file) {
  Invocation const r = Invoke({"bound", Data(file)});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  return nlohmann::json::parse(r.out)["thm11_total"].get<double>();
}

TEST(CliBound, GoldenTotals) {
  EXPECT_NEAR(Total("tau_2i.json"), -1.3137383138, 1e-9);
  EXPECT_NEAR(Total("tau_2i_twice.json"), -1.3137383138, 1e-9);
  EXPECT_NEAR(Total("identity_g2.json"), -2.9826069523, 1e-9);
}

TEST(CliBound, HeaderAndHash) {
  Invocation const r = Invoke({"bound", Data("tau_2i.json")});
  auto const doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["tool"], "mlk");
  EXPECT_EQ(doc["command"], "bound");
  EXPECT_EQ(doc["input_sha256"].get<std::string>().size(), 64u);
  EXPECT_EQ(Invoke({"bound", Data("tau_2i.json")}).out, r.out);
}

TEST(CliBound, ExitCodes) {
  EXPECT_EQ(Invoke({"bound", Data("incomplete.json")}).code, kExitInvalidInput);
  EXPECT_EQ(Invoke({"bound", Data("not_positive.json")}).code, kExitInvalidInput);
  EXPECT_EQ(Invoke({"bound", Data("empty.json")}).code, kExitParseError);
  EXPECT_EQ(Invoke({"bound", Data("unknown_field.json")}).code, kExitParseError);
  EXPECT_EQ(Invoke({"bound", Data("no_such_file.json")}).code, kExitParseError);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitParseError);
}

TEST(CliBound, IncompleteMessage) {
  EXPECT_NE(Invoke({"bound", Data("incomplete.json")}).err.find("incomplete embedding data"),
            std::string::npos);
}

TEST(CliRho, ShiftedTau) {
  Invocation const r = Invoke({"rho", Data("tau_shifted.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto const doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["embeddings"][0]["rho"].get<double>(), 0.7071067812, 1e-9);
}

TEST(CliVerify, Suites) {
  EXPECT_EQ(Invoke({"verify", "--suite", "lattice", "--random", "20", "--dim", "3"}).code, kExitOk);
  EXPECT_EQ(Invoke({"verify", "--suite", "oracle"}).code, kExitOk);
  Invocation const chain = Invoke({"verify", "--suite", "chain", Data("tau_i.json")});
  EXPECT_EQ(chain.code, kExitOk) << chain.err;
  EXPECT_TRUE(nlohmann::json::parse(chain.out)["pass"].get<bool>());
}

}  // namespace
}  // namespace mlk::cli
