// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gnoc/characterize.hpp"
#include "gnoc/golden.hpp"
#include "gnoc/grammar.hpp"
#include "gnoc/techlib.hpp"

// Higher-abstraction static timing analysis of GNoC links: one table lookup
// per segment and pass, clock latency from the buffer-stage model, flop to
// flop setup/hold with skew and jitter.

namespace gnoc {

enum class ViolationKind
{
  SETUP,
  HOLD,
  SLEW_RANGE,
  COMB_GT_PERIOD,
  CLOCK_UNBUFFERED_GT_HALF_PERIOD
};

inline constexpr ViolationKind kAllViolationKinds[]
    = {ViolationKind::SETUP, ViolationKind::HOLD, ViolationKind::SLEW_RANGE,
       ViolationKind::COMB_GT_PERIOD,
       ViolationKind::CLOCK_UNBUFFERED_GT_HALF_PERIOD};

std::string_view violationName(ViolationKind k);

struct Violation
{
  ViolationKind kind;
  std::string location;
  std::string detail;
};

struct ClockArrival
{
  std::size_t token_index;
  double latency;
  std::size_t governing_buffer_index;
  double stage_delay_to_here;
};

enum class Direction
{
  FORWARD,
  BACKWARD
};

struct PathCheck
{
  std::size_t launch_index;
  std::size_t capture_index;
  double path_delay_max;
  double path_delay_min;
  double skew;  // latency(capture) - latency(launch)
  double setup_slack;
  double hold_slack;
  Direction direction;
};

struct SegmentTiming
{
  Segment seg;
  double slew_in;        // setup pass
  double delay_max;
  double slew_out;       // setup pass arrival slew at dst
  double slew_in_hold;
  double delay_min;
  double slew_out_hold;
  bool clamped;          // slew below the grid in either pass
};

struct AnalysisOptions
{
  LookupMode mode = LookupMode::PESSIMISTIC;
  /// Slew launched by the first flop; defaults to the clock source slew.
  std::optional<double> launch_slew;
  ClockEntry clock_entry = ClockEntry::First;
  /// Hold checks ignore jitter unless set (common clock source).
  bool hold_includes_jitter = false;
};

struct TimingReport
{
  std::uint64_t link_digest = 0;
  LookupMode mode = LookupMode::PESSIMISTIC;
  ClockSpec clock;
  std::vector<SegmentTiming> segments;
  std::vector<ClockArrival> clock_arrivals;
  std::vector<PathCheck> paths;
  std::vector<Violation> violations;
  std::size_t lookup_count_setup = 0;
  std::size_t lookup_count_hold = 0;

  bool clean() const { return violations.empty(); }
  std::size_t count(ViolationKind k) const;
  /// Total delay from the first to the last token, per pass.
  double totalDelayMax() const;
  double totalDelayMin() const;
};

double setupSlack(double period, double jitter, double skew, double path_max,
                  double t_su);
double holdSlack(double path_min, double skew, double t_h);

/// Clock stages whose MAX-corner delay reaches half the period.
std::vector<ClockStage> clockCheck(std::span<const Token> tokens,
                                   const TechConfig& cfg, const ClockSpec& clk,
                                   ClockEntry entry = ClockEntry::First);
inline std::vector<ClockStage> clockCheck(const LinkSentence& link,
                                          const TechConfig& cfg,
                                          const ClockSpec& clk)
{
  return clockCheck(link.span(), cfg, clk);
}

/// Binds a technology to its characterization tables. Construction checks
/// the digest (TableMismatch); afterwards analysis is const and may run from
/// several threads at once.
class Analyzer
{
 public:
  Analyzer(const TechConfig& cfg, const TableSet& ts);

  TimingReport analyze(const LinkSentence& link, const ClockSpec& clk,
                       const AnalysisOptions& opts = {}) const;

  /// Any token run that starts and ends on a flop (R or S), e.g. one
  /// register-bounded sub-run of a link. Lookup errors propagate as
  /// LookupError carrying the segment index.
  TimingReport analyzeTokens(std::span<const Token> tokens,
                             const ClockSpec& clk,
                             const AnalysisOptions& opts = {}) const;

  const TechConfig& config() const { return *cfg_; }
  const TableSet& tables() const { return *ts_; }

 private:
  const TechConfig* cfg_;
  const TableSet* ts_;
};

TimingReport analyzeLink(const LinkSentence& link, const TableSet& ts,
                         const TechConfig& cfg, const ClockSpec& clk,
                         const AnalysisOptions& opts = {});

/// Batch analysis over a shared table set; links spread across OpenMP
/// threads, results in input order. A link whose analysis throws has no
/// report and the error text in `error`.
struct BatchResult
{
  std::optional<TimingReport> report;
  std::string error;
};
std::vector<BatchResult> analyzeLinks(const Analyzer& an,
                                      std::span<const LinkSentence> links,
                                      const ClockSpec& clk,
                                      const AnalysisOptions& opts = {});
std::vector<BatchResult> analyzeLinksSerial(const Analyzer& an,
                                            std::span<const LinkSentence> links,
                                            const ClockSpec& clk,
                                            const AnalysisOptions& opts = {});

std::string formatTimingReport(const TimingReport& r);

}  // namespace gnoc
