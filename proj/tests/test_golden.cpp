// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gnoc/corpus.hpp"
#include "gnoc/golden.hpp"
#include "gnoc/util.hpp"
#include "oracle.hpp"

using namespace gnoc;

namespace {

const Corner kCorners[] = {Corner::MIN, Corner::NOMINAL, Corner::MAX};

TechConfig randomConfig(std::mt19937_64& rng)
{
  TechConfig cfg = defaultTechConfig();
  cfg.pitch_r = uniformReal(rng, 0.1, 3);
  cfg.pitch_c = uniformReal(rng, 0.1, 3);
  cfg.beta = uniformReal(rng, 0, 2);
  cfg.derate_min = uniformReal(rng, 0.7, 1);
  cfg.derate_max = uniformReal(rng, 1, 1.4);
  for (BlockKind k : kActiveKinds) {
    BlockParams& p = cfg.blocks[kindIndex(k)];
    p.d0 = uniformReal(rng, 0, 20);
    p.k_sl = uniformReal(rng, 0, 1);
    p.r_drv = uniformReal(rng, 0, 2);
    p.c_in = uniformReal(rng, 0, 3);
    p.s0 = uniformReal(rng, 0, 5);
    p.k_sin = uniformReal(rng, 0, 0.5);
    p.k_sload = uniformReal(rng, 0, 0.5);
    p.d_cq = uniformReal(rng, 0, 20);
  }
  return cfg;
}

BlockKind randomActive(std::mt19937_64& rng)
{
  return kActiveKinds[uniformInt(rng, 0, 2)];
}

}  // namespace

TEST_CASE("elmore examples")
{
  CHECK(elmoreWireDelay(0, 1, 1, 0.5, 1) == doctest::Approx(0.5));
  CHECK(elmoreWireDelay(2, 1, 1, 0.5, 1) == doctest::Approx(6.5));
  CHECK(elmoreWireDelay(9, 1, 1, 0.7, 1) == doctest::Approx(61.0));
}

TEST_CASE("segment examples")
{
  const TechConfig& cfg = defaultTechConfig();
  StageResult r = goldenSegment(BlockKind::B, BlockKind::B, 0, 4, Corner::MAX, cfg);
  CHECK(r.delay == doctest::Approx(7.37).epsilon(1e-12));
  CHECK(r.slew_out == doctest::Approx(2.6).epsilon(1e-12));

  r = goldenSegment(BlockKind::B, BlockKind::B, 2, 4, Corner::NOMINAL, cfg);
  CHECK(r.delay == doctest::Approx(12.7).epsilon(1e-12));
  CHECK(r.slew_out == doctest::Approx(std::sqrt(34.0)).epsilon(1e-12));

  r = goldenSegment(BlockKind::S, BlockKind::R, 9, 40, Corner::NOMINAL, cfg);
  CHECK(r.delay == doctest::Approx(85.0).epsilon(1e-12));
  CHECK(r.slew_out == doctest::Approx(std::hypot(9.0, 54.0)).epsilon(1e-12));
  CHECK(r.slew_out > cfg.slew_legal_max);

  // R launches through clock-to-output.
  r = goldenSegment(BlockKind::R, BlockKind::B, 0, 4, Corner::NOMINAL, cfg);
  CHECK(r.delay == doctest::Approx(8 + 1.2 + 0.5));
}

TEST_CASE("segment agrees with the reference formulas on random configs")
{
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const TechConfig cfg = randomConfig(rng);
    const BlockKind a = randomActive(rng);
    const BlockKind b = randomActive(rng);
    const int n = static_cast<int>(uniformInt(rng, 0, 20));
    const double s = uniformReal(rng, 0.1, 60);
    for (Corner c : kCorners) {
      const StageResult got = goldenSegment(a, b, n, s, c, cfg);
      const oracle::Seg want = oracle::segment(cfg, a, b, n, s, c);
      REQUIRE(got.delay == doctest::Approx(want.delay).epsilon(1e-12));
      REQUIRE(got.slew_out == doctest::Approx(want.slew).epsilon(1e-12));
    }
  }
}

TEST_CASE("segment properties")
{
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const TechConfig cfg = randomConfig(rng);
    const BlockKind a = randomActive(rng);
    const BlockKind b = randomActive(rng);
    const int n = static_cast<int>(uniformInt(rng, 0, 15));
    const double s = uniformReal(rng, 0.1, 50);
    const double ds = uniformReal(rng, 0, 10);

    const auto lo = goldenSegment(a, b, n, s, Corner::MIN, cfg);
    const auto nom = goldenSegment(a, b, n, s, Corner::NOMINAL, cfg);
    const auto hi = goldenSegment(a, b, n, s, Corner::MAX, cfg);
    CHECK(lo.delay <= nom.delay);
    CHECK(nom.delay <= hi.delay);
    CHECK(lo.slew_out == nom.slew_out);
    CHECK(hi.slew_out == nom.slew_out);

    CHECK(goldenSegment(a, b, n + 1, s, Corner::MAX, cfg).delay >= hi.delay);
    CHECK(goldenSegment(a, b, n, s + ds, Corner::MAX, cfg).delay >= hi.delay);

    const BlockParams& p = cfg.params(a);
    const double s_drv
        = p.s0 + p.k_sin * s + p.k_sload * (n * cfg.pitch_c + cfg.params(b).c_in);
    CHECK(nom.slew_out >= s_drv - 1e-12);
    if (n == 0) {
      CHECK(nom.slew_out == doctest::Approx(s_drv));
    }
  }
}

TEST_CASE("path arrival is the prefix sum of segment delays")
{
  const TechConfig& cfg = defaultTechConfig();
  CorpusOptions opts;
  opts.max_segments = 30;
  for (const CorpusLink& cl : randomLinks(17, 200, cfg, opts)) {
    for (Corner c : kCorners) {
      const GoldenPath gp = goldenPathAnalyze(cl.link, cl.launch_slew, c, cfg);
      REQUIRE(gp.arrival.size() == gp.segments.size() + 1);
      double sum = 0;
      for (std::size_t i = 0; i < gp.stages.size(); ++i) {
        sum += gp.stages[i].delay;
        CHECK(gp.arrival[i + 1] == sum);
      }
      CHECK(gp.total()
            == doctest::Approx(
                   oracle::pathDelay(cl.link.span(), cl.launch_slew, cfg, c))
                   .epsilon(1e-12));
    }
  }
}

TEST_CASE("slew chaining and flop relaunch")
{
  const TechConfig& cfg = defaultTechConfig();
  const GoldenPath gp
      = goldenPathAnalyze(parseLink("S W W B W R W S"), 8.0, Corner::MAX, cfg);
  REQUIRE(gp.segments.size() == 3);
  CHECK(gp.slew_in[0] == 8.0);
  CHECK(gp.slew_in[1] == gp.stages[0].slew_out);
  CHECK(gp.slew_in[2] == cfg.clockPinSlew());
  CHECK(gp.actives == std::vector<std::size_t>{0, 3, 5, 7});

  const GoldenPath one
      = goldenPathAnalyze(parseLink("S W W S"), 4.0, Corner::MIN, cfg);
  CHECK(one.total()
        == goldenSegment(BlockKind::S, BlockKind::S, 2, 4.0, Corner::MIN, cfg)
               .delay);
}

TEST_CASE("clock stages")
{
  const TechConfig& cfg = defaultTechConfig();
  const ClockAnalysis ca = goldenClockAnalyze(parseLink("S B S"), cfg, Corner::MAX);
  REQUIRE(ca.stages.size() == 2);
  for (const ClockStage& st : ca.stages) {
    CHECK(st.n_unbuffered == 0);
    CHECK(st.delay == doctest::Approx(1.1 * 4.32));
  }
  CHECK(ca.latency[2] == doctest::Approx(2 * 1.1 * 4.32));

  const ClockAnalysis ww = goldenClockAnalyze(parseLink("S W W S"), cfg, Corner::NOMINAL);
  REQUIRE(ww.stages.size() == 1);
  CHECK(ww.stages[0].n_unbuffered == 2);
  CHECK(ww.stages[0].delay == doctest::Approx(oracle::clockStage(cfg, 2, Corner::NOMINAL)));
  CHECK(ww.governing[1] == 0);
  CHECK(ww.governing[3] == 3);

  const ClockAnalysis back
      = goldenClockAnalyze(parseLink("S W.cb W S"), cfg, Corner::NOMINAL, ClockEntry::Last);
  REQUIRE(back.stages.size() == 2);
  CHECK(back.stages[0].from == 3);
  CHECK(back.stages[0].n_unbuffered == 1);
  CHECK(back.latency[3] == 0);
  CHECK(back.latency[0] > back.latency[1]);
}

TEST_CASE("clock latency is monotone along propagation")
{
  const TechConfig& cfg = defaultTechConfig();
  for (const CorpusLink& cl : randomLinks(23, 100, cfg)) {
    const ClockAnalysis ca = goldenClockAnalyze(cl.link, cfg, Corner::MAX);
    for (std::size_t i = 1; i < ca.latency.size(); ++i) {
      CHECK(ca.latency[i] >= ca.latency[i - 1]);
    }
    CHECK(ca.latency.back() - ca.latency.front() >= 0);
  }
}

TEST_CASE("frozen golden regression corpus")
{
  const TechConfig& cfg = defaultTechConfig();
  std::istringstream in(
      readFile(GNOC_SOURCE_DIR "/tests/data/golden_regression.csv"));
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "link_hash,launch_slew,corner,arrival,link");
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::size_t p = 0;
    for (int k = 0; k < 4; ++k) {
      const auto c = line.find(',', p);
      f.push_back(line.substr(p, c - p));
      p = c + 1;
    }
    f.push_back(line.substr(p));
    const LinkSentence link = parseLink(f[4]);
    REQUIRE(hex64(linkDigest(link)) == f[0]);
    double launch = 0;
    double arrival = 0;
    REQUIRE(parseDouble(f[1], launch));
    REQUIRE(parseDouble(f[3], arrival));
    const Corner c = f[2] == "MIN" ? Corner::MIN
                                   : (f[2] == "MAX" ? Corner::MAX : Corner::NOMINAL);
    CHECK(goldenPathAnalyze(link, launch, c, cfg).total()
          == doctest::Approx(arrival).epsilon(1e-11));
    ++rows;
  }
  CHECK(rows == 3000);
}
