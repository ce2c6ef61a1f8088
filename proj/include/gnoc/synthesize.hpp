// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnoc/grammar.hpp"
#include "gnoc/hasta.hpp"
#include "gnoc/techlib.hpp"

namespace gnoc {

/// A link to synthesize between two switches placed length_slots apart.
struct LinkSpec
{
  std::string name;
  int length_slots = 1;
  double period = 0;
  double jitter = 0;
};

void validateLinkSpec(const LinkSpec& spec);
ClockSpec clockFor(const LinkSpec& spec, const TechConfig& cfg);

/// 1-based slot positions p_i = floor(i*(M+1)/(n+1) + 1/2), i = 1..n.
std::vector<int> insertEvenly(int run_length, int count);

struct Validity
{
  bool valid = false;
  std::vector<std::string> reasons;
};

/// Full timing check of a candidate (PESSIMISTIC tables, clock rule).
/// Lookup failures such as SegmentTooLong become reasons, not exceptions.
Validity isValid(const LinkSentence& link, const LinkSpec& spec,
                 const Analyzer& an);
Validity isValidTokens(std::span<const Token> tokens, const ClockSpec& clk,
                       const Analyzer& an);

/// Greedy left-to-right GCT pass: a plain W becomes W.cb whenever leaving
/// it unbuffered would let the running clock stage reach T/2 (MAX corner).
/// Throws ClockUnsatisfiable when even two abutting buffers violate T/2.
std::vector<Token> assignClockSubtypes(std::span<const Token> tokens,
                                       double period, const TechConfig& cfg);
LinkSentence assignClockSubtypes(const LinkSentence& link,
                                 const LinkSpec& spec, const TechConfig& cfg);

/// Longest plain-W run a clock stage tolerates at this period, or -1 when
/// no stage can meet T/2.
int maxUnbufferedRun(double period, const TechConfig& cfg);

double linkCost(std::span<const Token> tokens, const TechConfig& cfg);
inline double linkCost(const LinkSentence& link, const TechConfig& cfg)
{
  return linkCost(link.span(), cfg);
}

struct SynthesisLogEntry
{
  int registers;
  int subrun;   // -1 for the register-free phase
  int buffers;
  std::string tokens;
  bool valid;
  std::vector<std::string> reasons;
};

struct SynthesisResult
{
  std::optional<LinkSentence> link;
  bool valid = false;
  double cost = 0;
  int n_w = 0;
  int n_b = 0;
  int n_r = 0;
  int iterations = 0;
  std::vector<std::string> reasons;
  std::vector<SynthesisLogEntry> log;
};

/// Lowest-cost valid block sequence under the buffers-then-registers
/// schedule. Never throws for an unsynthesizable spec; valid=false instead.
SynthesisResult synthesizeLink(const LinkSpec& spec, const Analyzer& an);

std::string formatSynthesisLog(const SynthesisResult& r);

}  // namespace gnoc
