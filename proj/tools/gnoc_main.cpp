// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

// gnoc: characterize, analyze, synthesize, validate, dse.
// Exit status: 0 clean, 1 violations or unsynthesizable, 2 usage/input
// error, 3 internal invariant failure.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "gnoc/dse.hpp"
#include "gnoc/error.hpp"
#include "gnoc/hasta.hpp"
#include "gnoc/synthesize.hpp"
#include "gnoc/util.hpp"

namespace {

using namespace gnoc;

enum Exit
{
  kOk = 0,
  kViolations = 1,
  kUsage = 2,
  kInternal = 3
};

struct Common
{
  std::string tech;
  std::string tables;
};

struct Context
{
  TechConfig cfg;
  TableSet ts;
};

Context loadContext(const Common& c)
{
  Context ctx;
  ctx.cfg = c.tech.empty() ? defaultTechConfig() : loadTechConfigFile(c.tech);
  if (c.tables.empty()) {
    ctx.ts = buildTables(ctx.cfg);
  } else {
    ctx.ts = loadTablesFile(c.tables, techDigest(ctx.cfg));
  }
  return ctx;
}

void addCommon(CLI::App* sub, Common& c)
{
  sub->add_option("--tech", c.tech, "technology config (default: built in)")
      ->check(CLI::ExistingFile);
  sub->add_option("--tables", c.tables,
                  "characterization tables (default: built in memory)");
}

int runCharacterize(const Common& c, const std::string& out)
{
  const TechConfig cfg
      = c.tech.empty() ? defaultTechConfig() : loadTechConfigFile(c.tech);
  const TableSet ts = buildTables(cfg);
  saveTablesFile(ts, out);
  std::cout << fmt::format("cells={} corners=2\n", ts.cellCount());
  std::cout << fmt::format("cfg={} K={} L={}\n", hex64(ts.cfg_digest), ts.K,
                           ts.L);
  return kOk;
}

struct AnalyzeArgs
{
  std::string link;
  double period = 0;
  double jitter = 0;
  std::string mode = "pessimistic";
  std::optional<double> launch_slew;
  std::string clock_entry = "first";
  bool hold_jitter = false;
};

AnalysisOptions analysisOptions(const AnalyzeArgs& a)
{
  AnalysisOptions o;
  o.mode = *modeFromName(a.mode);
  o.launch_slew = a.launch_slew;
  o.clock_entry = a.clock_entry == "last" ? ClockEntry::Last : ClockEntry::First;
  o.hold_includes_jitter = a.hold_jitter;
  return o;
}

int runAnalyze(const Common& c, const AnalyzeArgs& a)
{
  const Context ctx = loadContext(c);
  const LinkSentence link = parseLinkFile(a.link);
  const TimingReport r
      = analyzeLink(link, ctx.ts, ctx.cfg,
                    makeClockSpec(ctx.cfg, a.period, a.jitter), analysisOptions(a));
  std::cout << formatTimingReport(r);
  return r.clean() ? kOk : kViolations;
}

int runSynthesize(const Common& c, const LinkSpec& spec, const std::string& out)
{
  const Context ctx = loadContext(c);
  const Analyzer an(ctx.cfg, ctx.ts);
  const SynthesisResult r = synthesizeLink(spec, an);
  std::cout << formatSynthesisLog(r);
  if (!r.valid) {
    std::cerr << fmt::format("gnoc: link '{}' is unsynthesizable\n", spec.name);
    return kViolations;
  }
  if (!out.empty()) {
    writeFile(out, serializeLink(*r.link) + "\n");
  }
  return kOk;
}

int runValidate(const Common& c, const AnalyzeArgs& a, double tol)
{
  const Context ctx = loadContext(c);
  const LinkSentence link = parseLinkFile(a.link);
  const ClockSpec clk = makeClockSpec(ctx.cfg, a.period, a.jitter);
  const AnalysisOptions opts = analysisOptions(a);
  const TimingReport r = analyzeLink(link, ctx.ts, ctx.cfg, clk, opts);

  const double launch = opts.launch_slew.value_or(clk.source_slew);
  const GoldenPath gmax = goldenPathAnalyze(link, launch, Corner::MAX, ctx.cfg);
  const GoldenPath gmin = goldenPathAnalyze(link, launch, Corner::MIN, ctx.cfg);
  // Arrival at a token index.
  auto arrival = [](const GoldenPath& g, std::size_t tok) {
    for (std::size_t i = 0; i < g.actives.size(); ++i) {
      if (g.actives[i] == tok) {
        return g.arrival[i];
      }
    }
    throw std::logic_error("token is not active");
  };

  std::cout << fmt::format("VALIDATE link={} mode={} T={} launch_slew={}\n",
                           hex64(r.link_digest), modeName(r.mode),
                           fmtNum(clk.period), fmtNum(launch));
  std::cout << "launch,capture,hasta_max,golden_max,err_max,hasta_min,"
               "golden_min,err_min\n";
  double worst = 0;
  bool setup_conservative = true;
  bool hold_conservative = true;
  for (const PathCheck& p : r.paths) {
    const double gm = arrival(gmax, p.capture_index) - arrival(gmax, p.launch_index);
    const double gn = arrival(gmin, p.capture_index) - arrival(gmin, p.launch_index);
    const double em = (p.path_delay_max - gm) / gm;
    const double en = (p.path_delay_min - gn) / gn;
    worst = std::max({worst, std::abs(em), std::abs(en)});
    setup_conservative = setup_conservative && em >= 0;
    hold_conservative = hold_conservative && en <= 0;
    std::cout << fmt::format("{},{},{},{},{},{},{},{}\n", p.launch_index,
                             p.capture_index, fmtNum(p.path_delay_max),
                             fmtNum(gm), fmtNum(em), fmtNum(p.path_delay_min),
                             fmtNum(gn), fmtNum(en));
  }
  const bool pass = worst <= tol;
  std::cout << fmt::format(
      "max_rel_err={} tol={} setup_conservative={} hold_conservative={} "
      "status={}\n",
      fmtNum(worst), fmtNum(tol), setup_conservative ? "yes" : "no",
      hold_conservative ? "yes" : "no", pass ? "PASS" : "FAIL");
  return pass ? kOk : kViolations;
}

int runDse(const Common& c, const std::string& path,
           std::optional<std::uint64_t> seed, int count)
{
  const Context ctx = loadContext(c);
  const Analyzer an(ctx.cfg, ctx.ts);
  const std::vector<Candidate> cands
      = seed ? generateCandidates(*seed, count) : parseCandidatesFile(path);
  try {
    const DseResult r = dseLoop(cands, an);
    std::cout << formatDseLedger(r, cands);
  } catch (const NoValidCandidate& e) {
    std::cerr << "gnoc: " << e.what() << "\n";
    return kViolations;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"GNoC link timing analysis and synthesis"};
  app.require_subcommand(1);

  Common common;
  AnalyzeArgs aa;
  std::string out;
  LinkSpec spec{"link", 1, 0, 0};
  double tol = 0.02;
  std::string candidates;
  std::optional<std::uint64_t> seed;
  int count = 100;

  const auto modes = CLI::IsMember({"exact", "pessimistic", "interpolate"});
  auto addAnalysisFlags = [&](CLI::App* sub) {
    sub->add_option("--link", aa.link, "link file")->required()->check(CLI::ExistingFile);
    sub->add_option("--period", aa.period, "clock period (tu)")->required();
    sub->add_option("--jitter", aa.jitter, "clock jitter (tu)");
    sub->add_option("--mode", aa.mode, "table lookup mode")->check(modes);
    sub->add_option("--launch-slew", aa.launch_slew, "launch slew (su)");
    sub->add_option("--clock-entry", aa.clock_entry, "clock entry end")
        ->check(CLI::IsMember({"first", "last"}));
    sub->add_flag("--hold-jitter", aa.hold_jitter, "subtract jitter in hold checks");
  };

  auto* ch = app.add_subcommand("characterize", "build characterization tables");
  addCommon(ch, common);
  ch->add_option("--out", out, "table file to write")->required();

  auto* an = app.add_subcommand("analyze", "HASTA timing report for one link");
  addCommon(an, common);
  addAnalysisFlags(an);

  auto* sy = app.add_subcommand("synthesize", "synthesize a link");
  addCommon(sy, common);
  sy->add_option("--length", spec.length_slots, "length in pitch slots")->required();
  sy->add_option("--period", spec.period, "clock period (tu)")->required();
  sy->add_option("--jitter", spec.jitter, "clock jitter (tu)");
  sy->add_option("--name", spec.name, "link name");
  sy->add_option("--out", out, "link file to write");

  auto* va = app.add_subcommand("validate", "compare HASTA with the golden model");
  addCommon(va, common);
  addAnalysisFlags(va);
  va->add_flag("--against-golden", "compare against the golden model (default)");
  va->add_option("--tol", tol, "max relative error");

  auto* ds = app.add_subcommand("dse", "pick the cheapest valid candidate");
  addCommon(ds, common);
  auto* cand_opt = ds->add_option("--candidates", candidates, "candidate file")
                       ->check(CLI::ExistingFile);
  auto* seed_opt = ds->add_option("--seed", seed, "generate random candidates");
  ds->add_option("--count", count, "generated candidate count")
      ->check(CLI::PositiveNumber);
  cand_opt->excludes(seed_opt);

  try {
    app.parse(argc, argv);
    if (*ds && !*cand_opt && !*seed_opt) {
      throw CLI::RequiredError("--candidates or --seed");
    }
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*ch) {
      return runCharacterize(common, out);
    }
    if (*an) {
      return runAnalyze(common, aa);
    }
    if (*sy) {
      return runSynthesize(common, spec, out);
    }
    if (*va) {
      return runValidate(common, aa, tol);
    }
    return runDse(common, candidates, seed, count);
  } catch (const MonotonicityError& e) {
    std::cerr << "gnoc: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "gnoc: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    // File I/O failures.
    std::cerr << "gnoc: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "gnoc: internal error: " << e.what() << "\n";
    return kInternal;
  }
}
