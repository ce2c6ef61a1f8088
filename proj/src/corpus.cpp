// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#include "gnoc/corpus.hpp"

#include <algorithm>
#include <random>

#include "gnoc/error.hpp"
#include "gnoc/golden.hpp"
#include "gnoc/util.hpp"

namespace gnoc {

std::vector<CorpusLink> randomLinks(std::uint64_t seed, int count,
                                    const TechConfig& cfg,
                                    const CorpusOptions& opts)
{
  if (opts.min_segments < 1 || opts.max_segments < opts.min_segments) {
    throw InvalidValue("bad segment range");
  }
  std::mt19937_64 rng(seed);
  const int max_n = std::clamp(opts.max_wires, 0, cfg.K - 1);
  const double lo = cfg.slew_grid_min;
  const double hi = cfg.slew_grid_max * opts.headroom;
  const std::vector<double> grid = cfg.slewGrid();

  std::vector<CorpusLink> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    double launch;
    if (opts.grid_launch) {
      launch = grid[uniformInt(rng, 0, grid.size() - 1)];
    } else {
      launch = uniformReal(rng, lo, hi);
    }
    const int nseg = static_cast<int>(
        uniformInt(rng, static_cast<std::uint64_t>(opts.min_segments),
                   static_cast<std::uint64_t>(opts.max_segments)));

    std::vector<Token> toks{token(BlockKind::S)};
    BlockKind src = BlockKind::S;
    double slew = launch;
    for (int s = 0; s < nseg; ++s) {
      const bool last = s + 1 == nseg;
      BlockKind dst = BlockKind::S;
      int n = 0;
      // Redraw until the output slew stays legal and, when it feeds a
      // buffer, stays on the grid; fall back to an abutting flop.
      bool placed = false;
      for (int attempt = 0; attempt < 32 && !placed; ++attempt) {
        if (!last) {
          const auto pick = opts.allow_buffers ? uniformInt(rng, 0, 2)
                                               : uniformInt(rng, 1, 2);
          dst = pick == 0 ? BlockKind::B
                          : (pick == 1 ? BlockKind::R : BlockKind::S);
        }
        n = static_cast<int>(uniformInt(rng, 0, static_cast<std::uint64_t>(max_n)));
        if (n == 0 && src == BlockKind::S && dst == BlockKind::S) {
          continue;  // S S does not parse
        }
        const double so
            = goldenSegment(src, dst, n, slew, Corner::MAX, cfg).slew_out;
        if (so > cfg.slew_legal_max) {
          continue;
        }
        if (dst == BlockKind::B && (so < lo || so > hi)) {
          continue;
        }
        placed = true;
      }
      if (!placed) {
        dst = last ? BlockKind::S : BlockKind::R;
        n = src == BlockKind::S && dst == BlockKind::S ? 1 : 0;
      }
      for (int i = 0; i < n; ++i) {
        const bool cb = uniformReal(rng, 0.0, 1.0) < opts.cb_probability;
        toks.push_back(cb ? cbW() : plainW());
      }
      toks.push_back(token(dst));
      const double so
          = goldenSegment(src, dst, n, slew, Corner::MAX, cfg).slew_out;
      slew = dst == BlockKind::B ? so : cfg.clockPinSlew();
      src = dst;
    }
    out.push_back(CorpusLink{LinkSentence::fromTokens(std::move(toks)), launch});
  }
  return out;
}

LinkSentence repeatedLink(int segments, int n_wires, int reg_every)
{
  if (segments < 1 || n_wires < 0) {
    throw InvalidValue("bad repeated link shape");
  }
  std::vector<Token> toks{token(BlockKind::S)};
  toks.reserve(static_cast<std::size_t>(segments) * (n_wires + 1) + 1);
  for (int s = 1; s <= segments; ++s) {
    toks.insert(toks.end(), static_cast<std::size_t>(n_wires), plainW());
    if (s == segments) {
      toks.push_back(token(BlockKind::S));
    } else if (reg_every > 0 && s % reg_every == 0) {
      toks.push_back(token(BlockKind::R));
    } else {
      toks.push_back(token(BlockKind::B));
    }
  }
  return LinkSentence::fromTokens(std::move(toks));
}

}  // namespace gnoc
