#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "mres/families.hpp"
#include "mres/qdimacs.hpp"

using mres::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args, const std::string& input = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("mres_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::filesystem::path dir_;
};

}  // namespace

TEST(Cli, ProveThenCheck) {
  const auto proof = cli({"prove", "kbkf-lq-weak", "5"});
  ASSERT_EQ(proof.code, 0) << proof.err;
  const auto check = cli({"check", "--mode", "plain", "--regular"}, proof.out);
  EXPECT_EQ(check.code, 0) << check.err;
  EXPECT_NE(check.out.find("status=ok"), std::string::npos) << check.out;
  EXPECT_NE(check.out.find("steps=41"), std::string::npos);
  EXPECT_NE(check.out.find("refutation=1"), std::string::npos);
}

TEST(Cli, LowerBoundRefusal) {
  const auto r = cli({"prove", "kbkf-lq", "5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("lower bound"), std::string::npos) << r.err;
  EXPECT_EQ(cli({"prove", "kbkf-lq", "5", "--mode", "we"}).code, 0);
  EXPECT_EQ(cli({"prove", "heq2", "3"}).code, 2);
  EXPECT_EQ(cli({"prove", "heq2", "3", "--mode", "wf"}).code, 0);
}

TEST(Cli, CheckRejectsWeakeningInPlainMode) {
  const auto proof = cli({"prove", "kbkf-lq", "2", "--mode", "we"});
  const auto plain = cli({"check", "--mode", "plain"}, proof.out);
  EXPECT_EQ(plain.code, 1);
  EXPECT_NE(plain.out.find("failed_step=11"), std::string::npos) << plain.out;
  EXPECT_EQ(cli({"check", "--mode", "we"}, proof.out).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"gen", "nosuch", "3"}).code, 2);
  EXPECT_EQ(cli({"gen", "heq2", "1"}).code, 2);
  EXPECT_EQ(cli({"check"}, "garbage").code, 2);
  EXPECT_EQ(cli({"check", "--mode", "odd"}, cli({"prove", "example", "1"}).out).code, 2);
}

TEST(Cli, GenWritesHeader) {
  const auto r = cli({"gen", "kbkf-lq", "1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("c family kbkf-lq n 1\n", 0), 0U);
  EXPECT_NE(r.out.find("c var 3 x1\n"), std::string::npos);
  EXPECT_EQ(mres::formula_hash(mres::parse_qdimacs(r.out)),
            mres::formula_hash(mres::generate(mres::FamilyId::kKbkfLq, 1)));
}

TEST_F(CliFiles, RestrictMatchesGen) {
  write("split.q", cli({"gen", "kbkf-lq-split", "3"}).out);
  const auto restricted = cli({"restrict", path("split.q"), "1=0", "--normalize"});
  ASSERT_EQ(restricted.code, 0) << restricted.err;
  EXPECT_EQ(restricted.out, cli({"gen", "kbkf-lq", "3", "--normalize"}).out);
}

TEST_F(CliFiles, FormulaProofPairAndMismatch) {
  write("eq.q", cli({"gen", "eq2", "2"}).out);
  write("eq.p", cli({"prove", "eq2", "2"}).out);
  write("k.q", cli({"gen", "kbkf-lq", "2"}).out);
  EXPECT_EQ(cli({"check", path("eq.q"), path("eq.p"), "--regular"}).code, 0);
  EXPECT_EQ(cli({"check", path("eq.p")}).code, 0);
  const auto bad = cli({"check", path("k.q"), path("eq.p")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("hash"), std::string::npos) << bad.err;
}

TEST_F(CliFiles, OracleAndInvariant) {
  write("ex.q", cli({"gen", "example", "1"}).out);
  const auto o = cli({"oracle", path("ex.q")});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out.rfind("false\n", 0), 0U);
  const auto proof = cli({"prove", "mparity", "2"}).out;
  const auto inv = cli({"invariant"}, proof);
  EXPECT_EQ(inv.code, 0) << inv.err;
  EXPECT_NE(inv.out.find("line invariant holds"), std::string::npos);
  const auto check = cli({"check", "--invariant"}, proof);
  EXPECT_NE(check.out.find("invariant=1"), std::string::npos) << check.out;
}

TEST_F(CliFiles, StrategyDumpRoundTrip) {
  write("ex.p", cli({"prove", "example", "1"}).out);
  write("ex.q", cli({"gen", "example", "1"}).out);
  const auto v = cli({"verify-strategy", path("ex.p"), "--maps-out", path("maps.txt")});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_NE(v.out.find("strategy wins"), std::string::npos);
  const auto again = cli({"verify-strategy", path("ex.q"), "--maps", path("maps.txt")});
  EXPECT_EQ(again.code, 0) << again.err;
  write("bad.txt", "map 2\nnode 2 1 1 0\nroot 2\n");
  std::ifstream dumped(path("maps.txt"));
  std::string text((std::istreambuf_iterator<char>(dumped)), std::istreambuf_iterator<char>());
  std::string flipped = text;
  for (auto& c : flipped) {
    if (c == '0') c = '1';
    else if (c == '1') c = '0';
  }
  write("neg.txt", flipped);
  const auto neg = cli({"verify-strategy", path("ex.q"), "--maps", path("neg.txt")});
  EXPECT_NE(neg.code, 0) << text;
}

TEST(Cli, StatsAndCircuit) {
  const auto proof = cli({"prove", "mparity", "3"}).out;
  const auto stats = cli({"stats", "--format", "stats-kv"}, proof);
  EXPECT_EQ(stats.code, 0);
  EXPECT_NE(stats.out.find("steps=91"), std::string::npos) << stats.out;
  EXPECT_NE(stats.out.find("final_clause_size=0"), std::string::npos);
  const auto circ = cli({"export-circuit"}, cli({"prove", "example", "1"}).out);
  EXPECT_EQ(circ.code, 0);
  EXPECT_NE(circ.out.find("gate s_2_2 = mux(x1, s_2_0, s_2_1)"), std::string::npos);
}
