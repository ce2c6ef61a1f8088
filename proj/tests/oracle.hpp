// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

// Test-only reference formulas, written straight from the model definitions
// and sharing no code with the library beyond the data types.

#include <cmath>
#include <span>
#include <vector>

#include "gnoc/grammar.hpp"
#include "gnoc/techlib.hpp"

namespace oracle {

using gnoc::BlockKind;
using gnoc::Corner;
using gnoc::TechConfig;
using gnoc::Token;

inline double elmore(int n, double rw, double cw, double rd, double cl)
{
  double d = rd * (n * cw + cl);
  for (int k = 1; k <= n; ++k) {
    // slot k sees its own and all downstream capacitance
    d += rw * ((n - k + 1) * cw + cl);
  }
  return d;
}

inline double derate(const TechConfig& cfg, Corner c)
{
  return c == Corner::MIN ? cfg.derate_min
                          : (c == Corner::MAX ? cfg.derate_max : 1.0);
}

struct Seg
{
  double delay;
  double slew;
};

inline Seg segment(const TechConfig& cfg, BlockKind src, BlockKind dst, int n,
                   double slew, Corner c)
{
  const auto& p = cfg.blocks[static_cast<int>(src)];
  const auto& q = cfg.blocks[static_cast<int>(dst)];
  const double ctot = n * cfg.pitch_c + q.c_in;
  double dwire = 0;
  for (int k = 1; k <= n; ++k) {
    dwire += cfg.pitch_r * ((n - k + 1) * cfg.pitch_c + q.c_in);
  }
  const double intrinsic = src == BlockKind::R ? p.d_cq : p.d0;
  const double delay
      = derate(cfg, c) * (intrinsic + p.k_sl * slew + p.r_drv * ctot + dwire);
  const double sd = p.s0 + p.k_sin * slew + p.k_sload * ctot;
  return {delay, std::hypot(sd, cfg.beta * dwire)};
}

/// Sum of segment delays over the whole token run.
inline double pathDelay(std::span<const Token> t, double launch,
                        const TechConfig& cfg, Corner c)
{
  double total = 0;
  double slew = launch;
  std::size_t i = 0;
  bool first = true;
  while (i + 1 < t.size()) {
    std::size_t j = i + 1;
    while (t[j].kind == BlockKind::W) {
      ++j;
    }
    if (!first && t[i].kind != BlockKind::B) {
      slew = cfg.clock_buffer.s0;
    }
    const Seg s = segment(cfg, t[i].kind, t[j].kind,
                          static_cast<int>(j - i - 1), slew, c);
    total += s.delay;
    slew = s.slew;
    first = false;
    i = j;
  }
  return total;
}

inline double clockStage(const TechConfig& cfg, int n, Corner c)
{
  const auto& cb = cfg.clock_buffer;
  return derate(cfg, c)
         * (cb.d0 + elmore(n, cfg.pitch_r, cfg.pitch_c, cb.r_drv, cb.c_in));
}

inline bool buffered(const Token& t)
{
  return t.kind != BlockKind::W || t.sub.clock_buffered;
}

/// True when no clock stage of the run reaches T/2 at the MAX corner.
inline bool clockClean(std::span<const Token> t, const TechConfig& cfg,
                       double period)
{
  int run = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (buffered(t[i])) {
      if (clockStage(cfg, run, Corner::MAX) >= period / 2) {
        return false;
      }
      run = 0;
    } else {
      ++run;
    }
  }
  return true;
}

inline std::vector<int> evenSlots(int m, int n)
{
  std::vector<int> p;
  for (int i = 1; i <= n; ++i) {
    p.push_back(static_cast<int>(std::floor(i * double(m + 1) / (n + 1) + 0.5)));
  }
  return p;
}

}  // namespace oracle
