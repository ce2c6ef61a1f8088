// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#include "gnoc/hasta.hpp"

#include <fmt/format.h>

#include "gnoc/error.hpp"
#include "gnoc/util.hpp"

namespace gnoc {

std::string_view violationName(ViolationKind k)
{
  switch (k) {
    case ViolationKind::SETUP:
      return "SETUP";
    case ViolationKind::HOLD:
      return "HOLD";
    case ViolationKind::SLEW_RANGE:
      return "SLEW_RANGE";
    case ViolationKind::COMB_GT_PERIOD:
      return "COMB_GT_PERIOD";
    case ViolationKind::CLOCK_UNBUFFERED_GT_HALF_PERIOD:
      return "CLOCK_UNBUFFERED_GT_HALF_PERIOD";
  }
  return "?";
}

std::size_t TimingReport::count(ViolationKind k) const
{
  std::size_t n = 0;
  for (const auto& v : violations) {
    n += v.kind == k;
  }
  return n;
}

double TimingReport::totalDelayMax() const
{
  double d = 0;
  for (const auto& s : segments) {
    d += s.delay_max;
  }
  return d;
}

double TimingReport::totalDelayMin() const
{
  double d = 0;
  for (const auto& s : segments) {
    d += s.delay_min;
  }
  return d;
}

double setupSlack(double period, double jitter, double skew, double path_max,
                  double t_su)
{
  return (period - jitter) + skew - (path_max + t_su);
}

double holdSlack(double path_min, double skew, double t_h)
{
  return path_min - skew - t_h;
}

std::vector<ClockStage> clockCheck(std::span<const Token> tokens,
                                   const TechConfig& cfg, const ClockSpec& clk,
                                   ClockEntry entry)
{
  std::vector<ClockStage> bad;
  const ClockAnalysis ca = goldenClockAnalyze(tokens, cfg, Corner::MAX, entry);
  for (const ClockStage& st : ca.stages) {
    if (st.delay >= clk.period / 2) {
      bad.push_back(st);
    }
  }
  return bad;
}

Analyzer::Analyzer(const TechConfig& cfg, const TableSet& ts)
    : cfg_(&cfg), ts_(&ts)
{
  const auto digest = techDigest(cfg);
  if (digest != ts.cfg_digest) {
    throw TableMismatch(
        fmt::format("tables carry config digest {} but the technology digest "
                    "is {}",
                    hex64(ts.cfg_digest), hex64(digest)));
  }
}

TimingReport Analyzer::analyze(const LinkSentence& link, const ClockSpec& clk,
                               const AnalysisOptions& opts) const
{
  return analyzeTokens(link.span(), clk, opts);
}

namespace {

LookupResult lookupAt(const TableSet& ts, const Segment& s, double slew,
                      LookupMode mode, Purpose purpose, std::size_t index)
{
  try {
    return tableLookup(ts, s.src_kind, s.dst_kind, s.n_wires, slew, mode,
                       purpose);
  } catch (const LookupError& e) {
    // Re-tag with the segment index; strip the original code prefix.
    std::string what = e.what();
    const auto colon = what.find(": ");
    throw LookupError(e.code(),
                      colon == std::string::npos ? what : what.substr(colon + 2),
                      static_cast<long>(index));
  }
}

}  // namespace

TimingReport Analyzer::analyzeTokens(std::span<const Token> tokens,
                                     const ClockSpec& clk,
                                     const AnalysisOptions& opts) const
{
  const TechConfig& cfg = *cfg_;
  validateClockSpec(clk, cfg);
  if (tokens.size() < 2 || !isFlop(tokens.front().kind)
      || !isFlop(tokens.back().kind)) {
    throw InvalidValue("analyzed token run must start and end on a flop");
  }

  TimingReport rep;
  rep.link_digest = fnv1a64(serializeTokens(tokens));
  rep.mode = opts.mode;
  rep.clock = clk;

  const std::vector<Segment> segs = segmentDecompose(tokens);
  rep.segments.reserve(segs.size());

  // Data passes. Flops relaunch at their clock-pin slew; B chains.
  const double launch = opts.launch_slew.value_or(clk.source_slew);
  double slew_setup = launch;
  double slew_hold = launch;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    if (i > 0 && isFlop(s.src_kind)) {
      slew_setup = slew_hold = cfg.clockPinSlew();
    }
    const LookupResult up
        = lookupAt(*ts_, s, slew_setup, opts.mode, Purpose::SETUP_MAX, i);
    ++rep.lookup_count_setup;
    const LookupResult dn
        = lookupAt(*ts_, s, slew_hold, opts.mode, Purpose::HOLD_MIN, i);
    ++rep.lookup_count_hold;

    rep.segments.push_back(SegmentTiming{s, slew_setup, up.value.delay,
                                         up.value.slew_out, slew_hold,
                                         dn.value.delay, dn.value.slew_out,
                                         up.clamped || dn.clamped});
    if (up.value.slew_out > cfg.slew_legal_max) {
      rep.violations.push_back(Violation{
          ViolationKind::SLEW_RANGE,
          fmt::format("token {}", s.dst_index),
          fmt::format("slew {} > legal max {} after segment {}",
                      fmtNum(up.value.slew_out), fmtNum(cfg.slew_legal_max),
                      i)});
    }
    slew_setup = up.value.slew_out;
    slew_hold = dn.value.slew_out;
  }

  // Clock latency at NOMINAL; stage check at MAX (= derate_max * nominal).
  const ClockAnalysis ca
      = goldenClockAnalyze(tokens, cfg, Corner::NOMINAL, opts.clock_entry);
  rep.clock_arrivals.reserve(tokens.size());
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    rep.clock_arrivals.push_back(
        ClockArrival{t, ca.latency[t], ca.governing[t], ca.stage_delay[t]});
  }

  // Flop-to-flop paths between consecutive R/S tokens.
  const double jitter_hold = opts.hold_includes_jitter ? clk.jitter : 0.0;
  std::size_t launch_tok = 0;
  double acc_max = 0;
  double acc_min = 0;
  for (const SegmentTiming& st : rep.segments) {
    acc_max += st.delay_max;
    acc_min += st.delay_min;
    if (!isFlop(st.seg.dst_kind)) {
      continue;
    }
    const std::size_t cap = st.seg.dst_index;
    const BlockParams& cp = cfg.params(st.seg.dst_kind);
    PathCheck pc;
    pc.launch_index = launch_tok;
    pc.capture_index = cap;
    pc.path_delay_max = acc_max;
    pc.path_delay_min = acc_min;
    pc.skew = ca.latency[cap] - ca.latency[launch_tok];
    pc.setup_slack
        = setupSlack(clk.period, clk.jitter, pc.skew, acc_max, cp.t_su);
    pc.hold_slack = holdSlack(acc_min, pc.skew, cp.t_h) - jitter_hold;
    pc.direction = ca.latency[cap] >= ca.latency[launch_tok]
                       ? Direction::FORWARD
                       : Direction::BACKWARD;
    const std::string loc = fmt::format("path {}->{}", launch_tok, cap);
    if (pc.setup_slack < 0) {
      rep.violations.push_back(Violation{
          ViolationKind::SETUP, loc,
          fmt::format("setup slack {}", fmtNum(pc.setup_slack))});
    }
    if (pc.hold_slack < 0) {
      rep.violations.push_back(
          Violation{ViolationKind::HOLD, loc,
                    fmt::format("hold slack {}", fmtNum(pc.hold_slack))});
    }
    if (acc_max > clk.period) {
      rep.violations.push_back(Violation{
          ViolationKind::COMB_GT_PERIOD, loc,
          fmt::format("combinational delay {} > period {}", fmtNum(acc_max),
                      fmtNum(clk.period))});
    }
    rep.paths.push_back(pc);
    launch_tok = cap;
    acc_max = acc_min = 0;
  }

  const double dmax = cfg.derate(Corner::MAX);
  for (const ClockStage& st : ca.stages) {
    const double d = dmax * st.delay;
    if (d >= clk.period / 2) {
      rep.violations.push_back(Violation{
          ViolationKind::CLOCK_UNBUFFERED_GT_HALF_PERIOD,
          fmt::format("stage {}->{}", st.from, st.to),
          fmt::format("{} unbuffered slots, stage delay {} >= T/2 = {}",
                      st.n_unbuffered, fmtNum(d), fmtNum(clk.period / 2))});
    }
  }
  return rep;
}

TimingReport analyzeLink(const LinkSentence& link, const TableSet& ts,
                         const TechConfig& cfg, const ClockSpec& clk,
                         const AnalysisOptions& opts)
{
  return Analyzer(cfg, ts).analyze(link, clk, opts);
}

namespace {

BatchResult analyzeOne(const Analyzer& an, const LinkSentence& link,
                       const ClockSpec& clk, const AnalysisOptions& opts)
{
  BatchResult br;
  try {
    br.report = an.analyze(link, clk, opts);
  } catch (const Error& e) {
    br.error = e.what();
  }
  return br;
}

}  // namespace

std::vector<BatchResult> analyzeLinksSerial(const Analyzer& an,
                                            std::span<const LinkSentence> links,
                                            const ClockSpec& clk,
                                            const AnalysisOptions& opts)
{
  std::vector<BatchResult> out(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    out[i] = analyzeOne(an, links[i], clk, opts);
  }
  return out;
}

std::vector<BatchResult> analyzeLinks(const Analyzer& an,
                                      std::span<const LinkSentence> links,
                                      const ClockSpec& clk,
                                      const AnalysisOptions& opts)
{
  std::vector<BatchResult> out(links.size());
  const long n = static_cast<long>(links.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) {
    out[i] = analyzeOne(an, links[i], clk, opts);
  }
  return out;
}

std::string formatTimingReport(const TimingReport& r)
{
  std::string out = fmt::format(
      "HASTA-REPORT link={} mode={} T={} jitter={}\n", hex64(r.link_digest),
      modeName(r.mode), fmtNum(r.clock.period), fmtNum(r.clock.jitter));
  out += fmt::format("lookups setup={} hold={}\n", r.lookup_count_setup,
                     r.lookup_count_hold);
  out += "[segments]\n";
  out += "seg_index,src,dst,n_wires,slew_in,delay_max,delay_min,slew_out\n";
  for (std::size_t i = 0; i < r.segments.size(); ++i) {
    const auto& s = r.segments[i];
    out += fmt::format("{},{},{},{},{},{},{},{}\n", i, kindChar(s.seg.src_kind),
                       kindChar(s.seg.dst_kind), s.seg.n_wires,
                       fmtNum(s.slew_in), fmtNum(s.delay_max),
                       fmtNum(s.delay_min), fmtNum(s.slew_out));
  }
  out += "[paths]\n";
  out += "launch,capture,skew,setup_slack,hold_slack,direction\n";
  for (const auto& p : r.paths) {
    out += fmt::format("{},{},{},{},{},{}\n", p.launch_index, p.capture_index,
                       fmtNum(p.skew), fmtNum(p.setup_slack),
                       fmtNum(p.hold_slack),
                       p.direction == Direction::FORWARD ? "FORWARD"
                                                         : "BACKWARD");
  }
  out += "[violations]\n";
  out += "kind,location,detail\n";
  for (const auto& v : r.violations) {
    out += fmt::format("{},{},{}\n", violationName(v.kind), v.location,
                       v.detail);
  }
  std::string flags;
  for (std::size_t i = 0; i < r.segments.size(); ++i) {
    if (r.segments[i].clamped) {
      flags += fmt::format("SlewBelowGrid,segment {}\n", i);
    }
  }
  if (!flags.empty()) {
    out += "[warnings]\n" + flags;
  }
  out += fmt::format("status={} violations={}\n",
                     r.clean() ? "CLEAN" : "VIOLATED", r.violations.size());
  return out;
}

}  // namespace gnoc
