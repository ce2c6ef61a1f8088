// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

#include <span>
#include <vector>

#include "gnoc/grammar.hpp"
#include "gnoc/techlib.hpp"

// Analytical detailed-delay model used as ground truth: Elmore RC ladder for
// wires, linear input-slew sensitivity for drivers, quadrature slew
// degradation along the wire. Everything here is pure and deterministic.

namespace gnoc {

struct StageResult
{
  double delay = 0;     // tu
  double slew_out = 0;  // su, at the destination input pin

  bool operator==(const StageResult&) const = default;
};

/// Elmore delay of a uniform n-slot RC ladder: driver r_drv, per-slot
/// (r_w, c_w), far-end load c_load.
double elmoreWireDelay(int n, double r_w, double c_w, double r_drv,
                       double c_load);

/// Detailed delay and output slew of one segment. For an R source the
/// intrinsic delay is the register's clock-to-output. Output slew does not
/// depend on the corner.
StageResult goldenSegment(BlockKind src, BlockKind dst, int n_wires,
                          double slew_in, Corner corner, const TechConfig& cfg);

struct GoldenPath
{
  std::vector<Segment> segments;
  std::vector<double> slew_in;        // per segment
  std::vector<StageResult> stages;    // per segment
  std::vector<std::size_t> actives;   // token index of every active block
  std::vector<double> arrival;        // cumulative delay at each active block

  double total() const { return arrival.empty() ? 0.0 : arrival.back(); }
};

/// Chains goldenSegment along the link. Segment 0 starts at launch_slew; a
/// later segment launched by a flop (R or S) starts at the flop's clock-pin
/// slew; segments launched by B take the previous segment's output slew.
GoldenPath goldenPathAnalyze(std::span<const Token> tokens, double launch_slew,
                             Corner corner, const TechConfig& cfg);

inline GoldenPath goldenPathAnalyze(const LinkSentence& link,
                                    double launch_slew, Corner corner,
                                    const TechConfig& cfg)
{
  return goldenPathAnalyze(link.span(), launch_slew, corner, cfg);
}

/// Where the global clock enters a link.
enum class ClockEntry
{
  First,
  Last
};

struct ClockStage
{
  std::size_t from;  // upstream clock buffer
  std::size_t to;    // downstream clock buffer
  int n_unbuffered;  // plain W slots in between
  double delay;
};

struct ClockAnalysis
{
  std::vector<double> latency;           // per token
  std::vector<std::size_t> governing;    // per token: buffer driving it
  std::vector<double> stage_delay;       // per token: incoming stage delay
  std::vector<ClockStage> stages;        // in propagation order
};

/// One clock stage: a buffer driving n unbuffered slots into the next buffer.
double clockStageDelay(int n_unbuffered, Corner corner, const TechConfig& cfg);

ClockAnalysis goldenClockAnalyze(std::span<const Token> tokens,
                                 const TechConfig& cfg, Corner corner,
                                 ClockEntry entry = ClockEntry::First);

inline ClockAnalysis goldenClockAnalyze(const LinkSentence& link,
                                        const TechConfig& cfg, Corner corner,
                                        ClockEntry entry = ClockEntry::First)
{
  return goldenClockAnalyze(link.span(), cfg, corner, entry);
}

}  // namespace gnoc
