// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#include <doctest.h>

#include "brute_force.hpp"
#include "gnoc/error.hpp"
#include "gnoc/synthesize.hpp"

using namespace gnoc;

namespace {

const Analyzer& defaultAnalyzer()
{
  static const TableSet ts = buildTables(defaultTechConfig());
  static const Analyzer an(defaultTechConfig(), ts);
  return an;
}

int countKind(const LinkSentence& l, BlockKind k)
{
  int n = 0;
  for (const Token& t : l.tokens()) {
    n += t.kind == k;
  }
  return n;
}

std::vector<Token> stripClock(const LinkSentence& l)
{
  std::vector<Token> t = l.tokens();
  for (Token& x : t) {
    x.sub.clock_buffered = false;
  }
  return t;
}

}  // namespace

TEST_CASE("insert evenly")
{
  CHECK(insertEvenly(5, 1) == std::vector<int>{3});
  CHECK(insertEvenly(9, 2) == std::vector<int>{3, 7});
  CHECK(insertEvenly(4, 0).empty());
  CHECK(insertEvenly(11, 1) == std::vector<int>{6});
  CHECK_THROWS_AS(insertEvenly(3, 4), InvalidValue);
  for (int m = 0; m <= 60; ++m) {
    for (int n = 0; n <= m; ++n) {
      const auto p = insertEvenly(m, n);
      REQUIRE(p == oracle::evenSlots(m, n));
      for (std::size_t i = 1; i < p.size(); ++i) {
        REQUIRE(p[i] > p[i - 1]);
      }
      if (!p.empty()) {
        REQUIRE(p.front() >= 1);
        REQUIRE(p.back() <= m);
      }
    }
  }
}

TEST_CASE("link cost")
{
  const TechConfig& cfg = defaultTechConfig();
  CHECK(linkCost(parseLink("S W W S"), cfg) == 42);
  CHECK(linkCost(parseLink("S B S"), cfg) == 42);
  CHECK(linkCost(parseLink("S W.cb R S"), cfg) == 46);
}

TEST_CASE("validity")
{
  const Analyzer& an = defaultAnalyzer();
  CHECK(isValid(parseLink("S W W S"), {"a", 2, 1e6, 0}, an).valid);

  const LinkSentence fifteen = parseLink("S W W W W W W W W W W W W W W W S");
  const Validity v = isValid(fifteen, {"a", 15, 1e6, 0}, an);
  CHECK_FALSE(v.valid);
  REQUIRE(v.reasons.size() == 1);
  CHECK(v.reasons[0].find("SegmentTooLong") != std::string::npos);

  const Validity clk
      = isValid(parseLink("S W W W W W W W B S"), {"a", 8, 85, 0}, an);
  CHECK_FALSE(clk.valid);
  REQUIRE(clk.reasons.size() == 1);
  CHECK(clk.reasons[0].rfind("CLOCK_UNBUFFERED_GT_HALF_PERIOD", 0) == 0);

  CHECK_THROWS_AS(isValid(parseLink("S W S"), {"a", 2, 100, 0}, an), InvalidValue);
}

TEST_CASE("clock sub-type assignment")
{
  const TechConfig& cfg = defaultTechConfig();
  // T/2 just above the 5-slot stage delay: runs of five plain W.
  const double T = 2 * oracle::clockStage(cfg, 5, Corner::MAX) + 1e-6;
  CHECK(maxUnbufferedRun(T, cfg) == 5);
  const LinkSentence out = assignClockSubtypes(
      parseLink("S W W W W W W W W W W W S"), {"a", 11, T, 0}, cfg);
  CHECK(serializeLink(out) == "S W W W W W W.cb W W W W W S");
  CHECK(clockCheck(out, cfg, makeClockSpec(cfg, T)).empty());

  const double T4 = 2 * oracle::clockStage(cfg, 4, Corner::MAX) + 1e-6;
  CHECK(serializeLink(assignClockSubtypes(parseLink("S W W W W W W W W W W W S"),
                                          {"a", 11, T4, 0}, cfg))
        == "S W W W W W.cb W W W W W.cb W S");

  CHECK(assignClockSubtypes(parseLink("S B S"), {"a", 1, 20, 0}, cfg)
        == parseLink("S B S"));

  const double floor = 2 * oracle::clockStage(cfg, 0, Corner::MAX);
  CHECK(maxUnbufferedRun(floor, cfg) == -1);
  CHECK_THROWS_AS(assignClockSubtypes(parseLink("S W S"), {"a", 1, floor, 0}, cfg),
                  ClockUnsatisfiable);
  CHECK(maxUnbufferedRun(floor + 1e-6, cfg) == 0);
}

TEST_CASE("synthesis examples")
{
  const Analyzer& an = defaultAnalyzer();
  SynthesisResult r = synthesizeLink({"short", 2, 1000, 0}, an);
  REQUIRE(r.valid);
  CHECK(serializeLink(*r.link) == "S W W S");
  CHECK(r.iterations == 1);
  CHECK(r.n_w == 2);
  CHECK(r.cost == 42);

  r = synthesizeLink({"mid", 11, 1000, 0}, an);
  REQUIRE(r.valid);
  CHECK(serializeLink(*r.link) == "S W W W W W B W W W W W S");
  CHECK(r.n_w == 10);
  CHECK(r.n_b == 1);
  CHECK(r.n_r == 0);

  // No buffering fixes a 40-slot run at T=30; registers engage.
  r = synthesizeLink({"long", 40, 30, 0}, an);
  REQUIRE(r.valid);
  CHECK(r.n_r >= 1);
  const TimingReport rep = an.analyze(*r.link, makeClockSpec(an.config(), 30));
  CHECK(rep.clean());
  const brute::Best b = brute::minimalCandidateFactored(40, 30, an);
  CHECK(b.registers == r.n_r);
  CHECK(b.buffers == r.n_b);

  r = synthesizeLink({"tight", 12, 9, 0}, an);
  CHECK_FALSE(r.valid);
  CHECK_FALSE(r.link.has_value());
  const std::string log = formatSynthesisLog(r);
  CHECK(log.find("result Unsynthesizable") != std::string::npos);
  CHECK(log.find("ClockUnsatisfiable") != std::string::npos);
}

TEST_CASE("synthesis is minimal against brute force")
{
  const Analyzer& an = defaultAnalyzer();
  for (int M = 1; M <= 12; ++M) {
    for (double T : brute::sweepPeriods()) {
      CAPTURE(M);
      CAPTURE(T);
      const SynthesisResult r = synthesizeLink({"s", M, T, 0}, an);
      const brute::Best b = brute::minimalCandidate(M, T, an);
      REQUIRE(r.valid == (b.registers >= 0));
      if (!r.valid) {
        continue;
      }
      CHECK(r.n_r == b.registers);
      CHECK(r.n_b == b.buffers);
      CHECK(r.link->size() == static_cast<std::size_t>(M) + 2);
      CHECK(clockCheck(*r.link, an.config(), makeClockSpec(an.config(), T)).empty());
      CHECK(isValid(*r.link, {"s", M, T, 0}, an).valid);

      // Greedy promotion count equals the exhaustive minimum.
      const auto data = stripClock(*r.link);
      int promoted = 0;
      for (const Token& t : r.link->tokens()) {
        promoted += t.kind == BlockKind::W && t.sub.clock_buffered;
      }
      CHECK(promoted == brute::minPromotions(data, an.config(), T));
      CHECK(countKind(*r.link, BlockKind::S) == 2);

      const brute::Best f = brute::minimalCandidateFactored(M, T, an);
      CHECK(f.registers == b.registers);
      CHECK(f.buffers == b.buffers);
    }
  }
}

TEST_CASE("synthesis log")
{
  const SynthesisResult r = synthesizeLink({"mid", 11, 1000, 0}, defaultAnalyzer());
  const std::string log = formatSynthesisLog(r);
  CHECK(log.rfind("registers,subrun,buffers,valid,tokens,reasons\n", 0) == 0);
  CHECK(log.find("0,-1,0,invalid,S W W W W W W W W W W W S,") != std::string::npos);
  CHECK(log.find("result valid cost=52 W=10 B=1 R=0 iterations=2 link=S W W W W W B W W W W W S\n")
        != std::string::npos);
}
