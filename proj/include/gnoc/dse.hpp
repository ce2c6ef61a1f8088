// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gnoc/hasta.hpp"
#include "gnoc/synthesize.hpp"

namespace gnoc {

struct Island
{
  std::string name;
  double cost = 0;
};

/// One chip-level solution: pre-costed synchronous islands plus the GNoC
/// links they need.
struct Candidate
{
  std::string name;
  std::vector<Island> islands;
  std::vector<LinkSpec> links;
};

/// Throws ParseError (with line) or InvalidValue (negative island cost,
/// duplicate link name, bad link spec).
std::vector<Candidate> parseCandidates(std::string_view text);
std::vector<Candidate> parseCandidatesFile(const std::string& path);
std::string serializeCandidates(std::span<const Candidate> cands);

struct CandidateEval
{
  bool valid = false;
  double cost = std::numeric_limits<double>::infinity();
  double island_cost = 0;
  std::vector<double> link_costs;
  std::string detail;  // offending link and reasons when invalid
};

CandidateEval evaluateCandidate(const Candidate& c, const Analyzer& an);

struct DseResult
{
  std::size_t best_index = 0;
  std::string best_name;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<CandidateEval> ledger;  // by input position
  std::size_t evaluated = 0;
};

/// Evaluates candidates across OpenMP threads, then keeps the best under the
/// strict-improvement rule in stream order. Throws NoValidCandidate.
DseResult dseLoop(std::span<const Candidate> cands, const Analyzer& an);
DseResult dseLoopSerial(std::span<const Candidate> cands, const Analyzer& an);

struct GeneratorRanges
{
  int islands_min = 1, islands_max = 4;
  double island_cost_min = 50, island_cost_max = 500;
  int links_min = 1, links_max = 4;
  int length_min = 1, length_max = 30;
  double period_min = 30, period_max = 400;
};

/// Seeded stand-in for the application-mapping step that proposes solutions.
std::vector<Candidate> generateCandidates(std::uint64_t seed, int count,
                                          const GeneratorRanges& ranges = {});

std::string formatDseLedger(const DseResult& r,
                            std::span<const Candidate> cands);

}  // namespace gnoc
