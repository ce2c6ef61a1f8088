// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace gnoc {

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// %.12g, the precision used in every text report and table file.
std::string fmtNum(double v);

std::string_view trim(std::string_view s);
std::vector<std::string_view> splitWs(std::string_view s);
/// Everything before the first '#'.
std::string_view stripComment(std::string_view s);

/// Strict full-string parses; std::nullopt-style failure via bool.
bool parseDouble(std::string_view s, double& out);
bool parseInt(std::string_view s, long& out);

std::string readFile(const std::string& path);
/// Throws std::runtime_error when the file cannot be written.
void writeFile(const std::string& path, std::string_view contents);

// Distribution helpers with a fixed mapping from mt19937_64 output, so seeded
// streams are identical across standard libraries.
inline std::uint64_t uniformInt(std::mt19937_64& rng, std::uint64_t lo,
                                std::uint64_t hi)
{
  return lo + rng() % (hi - lo + 1);
}

inline double uniformReal(std::mt19937_64& rng, double lo, double hi)
{
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace gnoc
