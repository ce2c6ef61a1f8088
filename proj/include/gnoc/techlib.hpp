// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gnoc {

// Units are abstract: tu (time), ru (resistance), cu (capacitance),
// su (slew). One pitch slot is the virtual-grid unit of length.

/// GNoC block kinds. W is passive; B, R and S are active.
enum class BlockKind : std::uint8_t
{
  W,
  B,
  R,
  S
};

inline constexpr std::array<BlockKind, 4> kAllKinds = {BlockKind::W,
                                                       BlockKind::B,
                                                       BlockKind::R,
                                                       BlockKind::S};
inline constexpr std::array<BlockKind, 3> kActiveKinds = {BlockKind::B,
                                                          BlockKind::R,
                                                          BlockKind::S};

constexpr bool isActive(BlockKind k)
{
  return k != BlockKind::W;
}

/// Flops are the timing endpoints of a link: registers and switches.
constexpr bool isFlop(BlockKind k)
{
  return k == BlockKind::R || k == BlockKind::S;
}

constexpr std::size_t kindIndex(BlockKind k)
{
  return static_cast<std::size_t>(k);
}

char kindChar(BlockKind k);
std::optional<BlockKind> kindFromChar(char c);

enum class Corner : std::uint8_t
{
  MIN,
  NOMINAL,
  MAX
};

std::string_view cornerName(Corner c);

struct SubtypeTag
{
  /// Only meaningful for W: the GCT fragment carries a clock buffer.
  bool clock_buffered = false;
  /// Wire-family width variant; all tokens of a link share one class.
  int width_class = 1;

  bool operator==(const SubtypeTag&) const = default;
};

struct ClockBufferParams
{
  double d0 = 0;
  double r_drv = 0;
  double c_in = 0;
  double s0 = 0;

  bool operator==(const ClockBufferParams&) const = default;
};

struct BlockParams
{
  double d0 = 0;       // intrinsic delay (tu)
  double k_sl = 0;     // delay per unit input slew
  double r_drv = 0;    // driver resistance (ru)
  double c_in = 0;     // input pin capacitance (cu)
  double s0 = 0;       // intrinsic output slew (su)
  double k_sin = 0;    // output slew per unit input slew
  double k_sload = 0;  // output slew per unit load (su/cu)
  // Flop timing. d_cq is only read for R; S launches through d0.
  double d_cq = 0;
  double t_su = 0;
  double t_h = 0;
  std::optional<ClockBufferParams> clock_buffer;

  bool operator==(const BlockParams&) const = default;
};

struct TechConfig
{
  double pitch_r = 0;
  double pitch_c = 0;
  int K = 0;  // table columns: 0..K-1 intervening W
  int L = 0;  // slew grid points
  double slew_grid_min = 0;
  double slew_grid_max = 0;
  double slew_legal_min = 0;
  double slew_legal_max = 0;
  double beta = 1.0;
  double derate_min = 1.0;
  double derate_max = 1.0;
  ClockBufferParams clock_buffer;
  double cb_area_surcharge = 1.0;
  std::array<BlockParams, 4> blocks{};  // by kindIndex; W entry unused
  std::array<double, 4> area_cost{};

  bool operator==(const TechConfig&) const = default;

  const BlockParams& params(BlockKind k) const { return blocks[kindIndex(k)]; }
  double area(BlockKind k) const { return area_cost[kindIndex(k)]; }
  double derate(Corner c) const;

  /// Linear slew grid of L points spanning [slew_grid_min, slew_grid_max].
  std::vector<double> slewGrid() const;

  /// Slew at a flop clock pin; clock buffers restore the edge to cb_s0.
  double clockPinSlew() const { return clock_buffer.s0; }
};

struct ClockSpec
{
  double period = 0;
  double jitter = 0;
  double source_slew = 0;
};

/// Throws InvalidValue unless period > jitter >= 0 and the source slew lies
/// in the technology legality range.
void validateClockSpec(const ClockSpec& clk, const TechConfig& cfg);

/// ClockSpec with source slew taken from the technology.
ClockSpec makeClockSpec(const TechConfig& cfg, double period, double jitter = 0);

TechConfig loadTechConfig(std::string_view text);
TechConfig loadTechConfigFile(const std::string& path);
std::string serializeTechConfig(const TechConfig& cfg);

/// Text of the shipped default technology (identical to data/default_tech.cfg).
std::string_view defaultTechText();
const TechConfig& defaultTechConfig();

/// 64-bit FNV-1a over the canonical serialization.
std::uint64_t techDigest(const TechConfig& cfg);
std::string techDigestHex(const TechConfig& cfg);

/// Parameter record for one block sub-type. Throws UnknownSubtype for a
/// clock-buffered tag on anything but W.
BlockParams blockParams(const TechConfig& cfg, BlockKind kind, SubtypeTag sub);

/// Enforces every TechConfig invariant; throws InvalidValue.
void validateTechConfig(const TechConfig& cfg);

}  // namespace gnoc
