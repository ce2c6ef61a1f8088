// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gnoc/golden.hpp"
#include "gnoc/techlib.hpp"

namespace gnoc {

enum class LookupMode
{
  EXACT,
  PESSIMISTIC,
  INTERPOLATE
};

enum class Purpose
{
  SETUP_MAX,  // worst-case (MAX corner) table
  HOLD_MIN    // best-case (MIN corner) table
};

std::string_view modeName(LookupMode m);
std::optional<LookupMode> modeFromName(std::string_view s);

/// Characterization table for one (source, destination) active-block pair:
/// L input-slew rows by K load columns, one StageResult per corner.
class SegmentTable
{
 public:
  SegmentTable() = default;
  SegmentTable(BlockKind src, BlockKind dst, int rows, int cols);

  BlockKind src() const { return src_; }
  BlockKind dst() const { return dst_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  StageResult& cell(Corner c, int row, int col)
  {
    return (c == Corner::MIN ? min_ : max_)[row * cols_ + col];
  }
  const StageResult& cell(Corner c, int row, int col) const
  {
    return (c == Corner::MIN ? min_ : max_)[row * cols_ + col];
  }

  bool operator==(const SegmentTable&) const = default;

 private:
  BlockKind src_ = BlockKind::B;
  BlockKind dst_ = BlockKind::B;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<StageResult> min_;
  std::vector<StageResult> max_;
};

/// Index of an active kind within {B, R, S}.
constexpr std::size_t activeIndex(BlockKind k)
{
  return static_cast<std::size_t>(k) - 1;
}

struct TableSet
{
  static constexpr int kFormatVersion = 1;

  int K = 0;
  int L = 0;
  std::uint64_t cfg_digest = 0;
  std::vector<double> slew_rows;  // ascending, shared by all 9 tables
  std::array<SegmentTable, 9> tables;

  const SegmentTable& table(BlockKind src, BlockKind dst) const
  {
    return tables[activeIndex(src) * 3 + activeIndex(dst)];
  }
  SegmentTable& table(BlockKind src, BlockKind dst)
  {
    return tables[activeIndex(src) * 3 + activeIndex(dst)];
  }
  std::size_t cellCount() const { return 9u * K * L; }

  bool operator==(const TableSet&) const = default;
};

/// Fills all 9*L*K cells at MIN and MAX from the golden model, cells spread
/// across OpenMP threads. Bit-identical to buildTablesSerial.
TableSet buildTables(const TechConfig& cfg);
TableSet buildTablesSerial(const TechConfig& cfg);

/// Relative comparison of two table sets (file round trips print 12
/// significant digits).
bool approxEqual(const TableSet& a, const TableSet& b, double rel_tol);

std::string saveTables(const TableSet& ts);
void saveTablesFile(const TableSet& ts, const std::string& path);

/// Parses and verifies a table file. When expected_digest is given the
/// recorded config digest must match it (DigestMismatch otherwise).
TableSet loadTables(std::string_view text,
                    std::optional<std::uint64_t> expected_digest = {});
TableSet loadTablesFile(const std::string& path,
                        std::optional<std::uint64_t> expected_digest = {});

/// Throws FormatError / CornerOrderError / MonotonicityError.
void verifyTables(const TableSet& ts);

struct LookupResult
{
  StageResult value;
  bool clamped = false;  // input slew below the grid, evaluated at row 0
  int row = 0;           // chosen row, or lower bracketing row
};

/// One characterization lookup. Column = n_wires exactly; row selection per
/// mode. Throws LookupError with codes SegmentTooLong, SlewOutOfRange,
/// NotOnGrid.
LookupResult tableLookup(const TableSet& ts, BlockKind src, BlockKind dst,
                         int n_wires, double slew_in, LookupMode mode,
                         Purpose purpose);

}  // namespace gnoc
