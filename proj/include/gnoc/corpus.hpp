// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

#include <cstdint>
#include <vector>

#include "gnoc/grammar.hpp"
#include "gnoc/techlib.hpp"

// Seeded generators of random, in-range links for accuracy sweeps and
// benchmarks.

namespace gnoc {

struct CorpusOptions
{
  int min_segments = 1;
  int max_segments = 50;
  int max_wires = 6;           // clipped to K-1
  bool allow_buffers = true;   // B as an interior block
  double cb_probability = 0.2; // per W, chance of W.cb
  bool grid_launch = false;    // launch slew on a grid row, else uniform
  /// Chained slews feeding a B stay within [grid_min, headroom*grid_max].
  double headroom = 0.9;
};

struct CorpusLink
{
  LinkSentence link;
  double launch_slew;
};

/// Every segment's golden input slew lies on or inside the slew grid, so
/// table lookups on these links never clamp or throw.
std::vector<CorpusLink> randomLinks(std::uint64_t seed, int count,
                                    const TechConfig& cfg,
                                    const CorpusOptions& opts = {});

/// S (W^n B)^k ... S with exactly `segments` segments and R every
/// `reg_every` segments (0 for none).
LinkSentence repeatedLink(int segments, int n_wires, int reg_every);

}  // namespace gnoc
