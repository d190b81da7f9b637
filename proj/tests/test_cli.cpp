#include <gtest/gtest.h>

#include <cstdio>
#include <sys/wait.h>

#include "support.hpp"
#include "trivconj/cli.hpp"

using trivconj::cli::run;
using nlohmann::json;

namespace {

std::string sample(const std::string& name) { return std::string(TRIVCONJ_SAMPLES) + "/" + name; }

json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  auto r = run(args);
  EXPECT_EQ(r.exit_code, 0) << r.err;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, ShiftsAreNotConjugate) {
  auto j = run_json({"conj", "--group", "triv", sample("shift.tc"), sample("shift_inverse.tc")});
  EXPECT_EQ(j["verdict"], "NonConjugate");
  EXPECT_EQ(j["reason"], "h: 1 ≠ -1");
  EXPECT_EQ(j["reasonCode"], "h");
  auto text = run({"conj", "--group", "triv", sample("shift.tc"), sample("shift_inverse.tc")});
  EXPECT_EQ(text.exit_code, 0);
  EXPECT_EQ(text.out, "NonConjugate\nreason: h: 1 ≠ -1\n");
}

TEST(Cli, IndexAndCensus) {
  EXPECT_EQ(run_json({"h", sample("shift.tc")})["h"], 1);
  EXPECT_EQ(run_json({"h", sample("shift_inverse.tc")})["h"], -1);
  auto c = run_json({"census", sample("spliced.tc")});
  EXPECT_EQ(c["zOrbits"], 1);
  EXPECT_EQ(c["endCount"], 2);
  auto t = run_json({"cycletype", sample("block_seq.tc#tau_f")});
  EXPECT_EQ(t["kappa"][0]["count"], "aleph0");
}

TEST(Cli, TwoFiveAgainstThreeFour) {
  auto j = run_json({"compare-sets", sample("x_two_five.tc"), sample("y_three_four.tc")});
  EXPECT_EQ(j["verdict"], "FiniteSymDiff");
  EXPECT_EQ(j["diff"], json({2, 3, 4, 5}));
  auto g = run_json({"compare-sets", sample("powers.tc#two"), sample("powers.tc#four")});
  EXPECT_EQ(g["verdict"], "InfiniteSymDiff");
  EXPECT_EQ(g["witness"], 2);
}

TEST(Cli, BlockPermutationVerdicts) {
  auto met = run_json({"conj", "blockperm sizes from set { finite {2,5}; periodic from 10 mod 1 {0} }",
                       "blockperm sizes from set { finite {3,4}; periodic from 10 mod 1 {0} }"});
  EXPECT_EQ(met["verdict"], "CriterionMet");
  auto not_met = run_json({"conj", "blockperm sizes from set { geometric 1 * 2^k }",
                           "blockperm sizes from set { geometric 1 * 3^k }"});
  EXPECT_EQ(not_met["verdict"], "NonConjugate");
  EXPECT_EQ(not_met["reasonCode"], "infiniteDisagreement");
}

TEST(Cli, CertificateForConjugateMaps) {
  auto j = run_json({"conj", sample("pairing.tc"), sample("pairing_offset.tc")});
  EXPECT_EQ(j["verdict"], "CriterionMet");
  ASSERT_TRUE(j["certificate"].is_string());
  auto tau = testing_support::nb(j["certificate"].get<std::string>());
  EXPECT_TRUE(trivconj::verify_conjugation(testing_support::pairing, testing_support::nb("nearbij { except { 0 -> 0; } tail from 1 mod 2 { 0: -1; 1: +1 } }"), tau).equal);
}

TEST(Cli, Family) {
  auto j = run_json({"family", "--count", "6"});
  EXPECT_EQ(j["nonConjugatePairs"], 15);
  EXPECT_EQ(j["pairs"], 15);
}

TEST(Cli, ShiftCheck) {
  auto j = run_json({"shift-check", sample("left_half.tc")});
  EXPECT_EQ(j["verdict"], "Invariant");
  EXPECT_EQ(j["overflow"], json({0}));
  auto e = run_json({"shift-check", sample("evens.tc")});
  EXPECT_EQ(e["verdict"], "NotInvariant");
}

TEST(Cli, SmallSweep) {
  auto j = run_json({"minimality-sweep", "--max-period", "4", "--max-threshold", "5"});
  EXPECT_EQ(j["counterexampleCount"], 0);
  EXPECT_EQ(j["halves"].size(), 2u);
}

TEST(Cli, Split) {
  auto j = run_json({"split", sample("spliced.tc")});
  EXPECT_EQ(j["components"], 2);
  auto z = run_json({"split", "--integer-shift"});
  EXPECT_EQ(z["orbits"][0]["backward"], "set int { periodic to -1 mod 1 {0} }");
}

TEST(Cli, Oracle) {
  auto w = run_json({"oracle", "window", sample("pairing.tc"), "--window", "10"});
  EXPECT_EQ(w["cycles"]["2"], 5);
  auto s = run_json({"oracle", "search", "1,2,0", "2,0,1"});
  EXPECT_EQ(s["verdict"], "Conjugate");
  auto m1 = run({"--seed", "5", "--format", "json", "oracle", "modify", sample("shift.tc"), "--budget", "3"});
  auto m2 = run({"--seed", "5", "--format", "json", "oracle", "modify", sample("shift.tc"), "--budget", "3"});
  EXPECT_EQ(m1.out, m2.out);
  EXPECT_EQ(json::parse(m1.out)["h"], json({1, 1}));
}

TEST(Cli, ErrorsAndExitCodes) {
  EXPECT_EQ(run({"frob"}).exit_code, 1);
  EXPECT_EQ(run({"census", "nearbij { tail"}).exit_code, 1);
  EXPECT_EQ(run({"census", "nearbij { tail from 10 mod 2 { 0: +2; 1: -1 } }"}).exit_code, 1);
  EXPECT_EQ(run({"compare-sets", "set { finite {5000000} }", "set {}"}).exit_code, 2);
  EXPECT_EQ(run({"oracle", "conjugator", sample("shift.tc"), sample("shift_inverse.tc")}).exit_code, 3);
  auto j = run({"--format", "json", "census", sample("x_two_five.tc")});
  EXPECT_EQ(j.exit_code, 1);
  EXPECT_EQ(json::parse(j.out)["error"], "InvalidArgument");
}

TEST(Cli, BinaryExitStatus) {
  auto status = [](const std::string& args) {
    std::string cmd = std::string(TRIVCONJ_BINARY) + " " + args + " >/dev/null 2>&1";
    int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("conj --group triv " + sample("shift.tc") + " " + sample("shift_inverse.tc")), 0);
  EXPECT_EQ(status("compare-sets " + sample("x_two_five.tc") + " " + sample("missing.tc")), 1);
  EXPECT_EQ(status("oracle conjugator " + sample("shift.tc") + " " + sample("shift_inverse.tc")), 3);
}
