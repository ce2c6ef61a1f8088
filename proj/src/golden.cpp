// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#include "gnoc/golden.hpp"

#include <cmath>

namespace gnoc {

double elmoreWireDelay(int n, double r_w, double c_w, double r_drv,
                       double c_load)
{
  const double nn = n;
  return r_drv * (nn * c_w + c_load) + r_w * c_w * nn * (nn + 1) / 2
         + r_w * nn * c_load;
}

StageResult goldenSegment(BlockKind src, BlockKind dst, int n_wires,
                          double slew_in, Corner corner, const TechConfig& cfg)
{
  const BlockParams& p = cfg.params(src);
  const BlockParams& q = cfg.params(dst);
  const double n = n_wires;
  const double c_tot = n * cfg.pitch_c + q.c_in;
  const double d_wire = cfg.pitch_r * cfg.pitch_c * n * (n + 1) / 2
                        + cfg.pitch_r * n * q.c_in;
  const double intrinsic = src == BlockKind::R ? p.d_cq : p.d0;

  StageResult r;
  r.delay = cfg.derate(corner)
            * (intrinsic + p.k_sl * slew_in + p.r_drv * c_tot + d_wire);
  const double s_drv = p.s0 + p.k_sin * slew_in + p.k_sload * c_tot;
  const double s_wire = cfg.beta * d_wire;
  r.slew_out = std::sqrt(s_drv * s_drv + s_wire * s_wire);
  return r;
}

GoldenPath goldenPathAnalyze(std::span<const Token> tokens, double launch_slew,
                             Corner corner, const TechConfig& cfg)
{
  GoldenPath out;
  out.segments = segmentDecompose(tokens);
  const std::size_t n = out.segments.size();
  out.slew_in.reserve(n);
  out.stages.reserve(n);
  out.actives.reserve(n + 1);
  out.arrival.reserve(n + 1);

  if (!tokens.empty()) {
    out.actives.push_back(0);
    out.arrival.push_back(0.0);
  }
  double slew = launch_slew;
  double arrival = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& s = out.segments[i];
    if (i > 0 && isFlop(s.src_kind)) {
      slew = cfg.clockPinSlew();
    }
    const StageResult r
        = goldenSegment(s.src_kind, s.dst_kind, s.n_wires, slew, corner, cfg);
    out.slew_in.push_back(slew);
    out.stages.push_back(r);
    arrival += r.delay;
    out.actives.push_back(s.dst_index);
    out.arrival.push_back(arrival);
    slew = r.slew_out;
  }
  return out;
}

double clockStageDelay(int n_unbuffered, Corner corner, const TechConfig& cfg)
{
  const ClockBufferParams& cb = cfg.clock_buffer;
  return cfg.derate(corner)
         * (cb.d0
            + elmoreWireDelay(n_unbuffered, cfg.pitch_r, cfg.pitch_c, cb.r_drv,
                              cb.c_in));
}

ClockAnalysis goldenClockAnalyze(std::span<const Token> tokens,
                                 const TechConfig& cfg, Corner corner,
                                 ClockEntry entry)
{
  ClockAnalysis ca;
  const std::size_t n = tokens.size();
  ca.latency.assign(n, 0.0);
  ca.governing.assign(n, 0);
  ca.stage_delay.assign(n, 0.0);
  if (n == 0) {
    return ca;
  }
  // Walk in propagation order; idx(k) maps step k to a token index.
  const bool fwd = entry == ClockEntry::First;
  auto idx = [&](std::size_t k) { return fwd ? k : n - 1 - k; };

  std::size_t last_buf = idx(0);
  double last_latency = 0;
  double last_stage = 0;
  int run = 0;
  ca.governing[last_buf] = last_buf;
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t t = idx(k);
    if (tokens[t].clockBuffered()) {
      const double d = clockStageDelay(run, corner, cfg);
      ca.stages.push_back(ClockStage{last_buf, t, run, d});
      last_latency += d;
      last_stage = d;
      last_buf = t;
      run = 0;
    } else {
      ++run;
    }
    ca.latency[t] = last_latency;
    ca.governing[t] = last_buf;
    ca.stage_delay[t] = last_stage;
  }
  return ca;
}

}  // namespace gnoc
