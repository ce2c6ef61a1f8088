// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#include "gnoc/characterize.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "gnoc/error.hpp"
#include "gnoc/util.hpp"

namespace gnoc {

std::string_view modeName(LookupMode m)
{
  switch (m) {
    case LookupMode::EXACT:
      return "exact";
    case LookupMode::PESSIMISTIC:
      return "pessimistic";
    case LookupMode::INTERPOLATE:
      return "interpolate";
  }
  return "?";
}

std::optional<LookupMode> modeFromName(std::string_view s)
{
  if (s == "exact") return LookupMode::EXACT;
  if (s == "pessimistic") return LookupMode::PESSIMISTIC;
  if (s == "interpolate") return LookupMode::INTERPOLATE;
  return std::nullopt;
}

SegmentTable::SegmentTable(BlockKind src, BlockKind dst, int rows, int cols)
    : src_(src),
      dst_(dst),
      rows_(rows),
      cols_(cols),
      min_(static_cast<std::size_t>(rows) * cols),
      max_(static_cast<std::size_t>(rows) * cols)
{
}

namespace {

TableSet emptyTables(const TechConfig& cfg)
{
  validateTechConfig(cfg);
  TableSet ts;
  ts.K = cfg.K;
  ts.L = cfg.L;
  ts.cfg_digest = techDigest(cfg);
  ts.slew_rows = cfg.slewGrid();
  for (BlockKind s : kActiveKinds) {
    for (BlockKind d : kActiveKinds) {
      ts.table(s, d) = SegmentTable(s, d, cfg.L, cfg.K);
    }
  }
  return ts;
}

// Evaluates flat cell index c = ((pair * L) + row) * K + col.
void fillCell(TableSet& ts, const TechConfig& cfg, long c)
{
  const long K = ts.K;
  const long L = ts.L;
  const int col = static_cast<int>(c % K);
  const int row = static_cast<int>((c / K) % L);
  const auto pair = static_cast<std::size_t>(c / (K * L));
  const BlockKind src = kActiveKinds[pair / 3];
  const BlockKind dst = kActiveKinds[pair % 3];
  SegmentTable& t = ts.tables[pair];
  const double slew = ts.slew_rows[row];
  t.cell(Corner::MIN, row, col)
      = goldenSegment(src, dst, col, slew, Corner::MIN, cfg);
  t.cell(Corner::MAX, row, col)
      = goldenSegment(src, dst, col, slew, Corner::MAX, cfg);
}

}  // namespace

TableSet buildTablesSerial(const TechConfig& cfg)
{
  TableSet ts = emptyTables(cfg);
  const long cells = static_cast<long>(ts.cellCount());
  for (long c = 0; c < cells; ++c) {
    fillCell(ts, cfg, c);
  }
  return ts;
}

TableSet buildTables(const TechConfig& cfg)
{
  TableSet ts = emptyTables(cfg);
  const long cells = static_cast<long>(ts.cellCount());
  // Each iteration writes its own cell; no merge step needed.
#pragma omp parallel for schedule(static) if (cells > 4096)
  for (long c = 0; c < cells; ++c) {
    fillCell(ts, cfg, c);
  }
  return ts;
}

bool approxEqual(const TableSet& a, const TableSet& b, double rel_tol)
{
  auto close = [rel_tol](double x, double y) {
    return std::abs(x - y) <= rel_tol * std::max({1.0, std::abs(x), std::abs(y)});
  };
  if (a.K != b.K || a.L != b.L || a.cfg_digest != b.cfg_digest
      || a.slew_rows.size() != b.slew_rows.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.slew_rows.size(); ++i) {
    if (!close(a.slew_rows[i], b.slew_rows[i])) {
      return false;
    }
  }
  for (std::size_t p = 0; p < 9; ++p) {
    for (Corner c : {Corner::MIN, Corner::MAX}) {
      for (int r = 0; r < a.L; ++r) {
        for (int k = 0; k < a.K; ++k) {
          const auto& x = a.tables[p].cell(c, r, k);
          const auto& y = b.tables[p].cell(c, r, k);
          if (!close(x.delay, y.delay) || !close(x.slew_out, y.slew_out)) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

namespace {

constexpr std::string_view kColumns
    = "src,dst,corner,row_index,col_index,slew_in,delay,slew_out";

}  // namespace

std::string saveTables(const TableSet& ts)
{
  std::string out = fmt::format("HASTA-TABLES v{} cfg={} K={} L={}\n",
                                TableSet::kFormatVersion, hex64(ts.cfg_digest),
                                ts.K, ts.L);
  out += kColumns;
  out += '\n';
  // Sorted by (src, dst, corner, row, col); kinds B<R<S, corners MAX<MIN.
  for (BlockKind s : kActiveKinds) {
    for (BlockKind d : kActiveKinds) {
      const SegmentTable& t = ts.table(s, d);
      for (Corner c : {Corner::MAX, Corner::MIN}) {
        for (int r = 0; r < ts.L; ++r) {
          for (int k = 0; k < ts.K; ++k) {
            const StageResult& v = t.cell(c, r, k);
            out += fmt::format("{},{},{},{},{},{},{},{}\n", kindChar(s),
                               kindChar(d), cornerName(c), r, k,
                               fmtNum(ts.slew_rows[r]), fmtNum(v.delay),
                               fmtNum(v.slew_out));
          }
        }
      }
    }
  }
  return out;
}

void saveTablesFile(const TableSet& ts, const std::string& path)
{
  writeFile(path, saveTables(ts));
}

void verifyTables(const TableSet& ts)
{
  if (ts.K < 1 || ts.L < 2
      || ts.slew_rows.size() != static_cast<std::size_t>(ts.L)) {
    throw FormatError("table dimensions inconsistent");
  }
  for (int r = 1; r < ts.L; ++r) {
    if (!(ts.slew_rows[r] > ts.slew_rows[r - 1])) {
      throw FormatError(
          fmt::format("slew rows not strictly ascending at row {}", r));
    }
  }
  for (BlockKind s : kActiveKinds) {
    for (BlockKind d : kActiveKinds) {
      const SegmentTable& t = ts.table(s, d);
      const std::string name = fmt::format("{}->{}", kindChar(s), kindChar(d));
      if (t.src() != s || t.dst() != d || t.rows() != ts.L
          || t.cols() != ts.K) {
        throw FormatError("table " + name + " missing or malformed");
      }
      for (int r = 0; r < ts.L; ++r) {
        for (int k = 0; k < ts.K; ++k) {
          const double lo = t.cell(Corner::MIN, r, k).delay;
          const double hi = t.cell(Corner::MAX, r, k).delay;
          if (lo > hi) {
            throw CornerOrderError(fmt::format(
                "table {} cell (row {}, col {}): MIN delay {} > MAX delay {}",
                name, r, k, fmtNum(lo), fmtNum(hi)));
          }
          for (Corner c : {Corner::MIN, Corner::MAX}) {
            const double v = t.cell(c, r, k).delay;
            if ((r > 0 && v < t.cell(c, r - 1, k).delay)
                || (k > 0 && v < t.cell(c, r, k - 1).delay)) {
              throw MonotonicityError(fmt::format(
                  "table {} {} cell (row {}, col {}) decreases", name,
                  cornerName(c), r, k));
            }
          }
        }
      }
    }
  }
}

TableSet loadTables(std::string_view text,
                    std::optional<std::uint64_t> expected_digest)
{
  std::vector<std::string_view> lines;
  {
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto nl = text.find('\n', pos);
      auto line = trim(text.substr(
          pos, nl == std::string_view::npos ? std::string_view::npos
                                            : nl - pos));
      pos = nl == std::string_view::npos ? text.size() : nl + 1;
      if (!line.empty()) {
        lines.push_back(line);
      }
    }
  }
  if (lines.empty()) {
    throw FormatError("empty table file");
  }

  const auto head = splitWs(lines[0]);
  if (head.size() != 5 || head[0] != "HASTA-TABLES") {
    throw FormatError("missing 'HASTA-TABLES' header");
  }
  if (head[1] != "v1") {
    throw FormatError("unsupported table format version '"
                      + std::string(head[1]) + "' (reader supports v1)");
  }
  auto field = [](std::string_view w, std::string_view key) {
    if (w.substr(0, key.size()) != key) {
      throw FormatError("header field '" + std::string(key) + "' missing");
    }
    return w.substr(key.size());
  };
  TableSet ts;
  const auto hex = field(head[2], "cfg=");
  if (hex.size() != 16) {
    throw FormatError("config digest must be 16 hex digits");
  }
  try {
    std::size_t used = 0;
    ts.cfg_digest = std::stoull(std::string(hex), &used, 16);
    if (used != hex.size()) {
      throw FormatError("config digest is not hex");
    }
  } catch (const std::logic_error&) {
    throw FormatError("config digest is not hex");
  }
  long k = 0;
  long l = 0;
  if (!parseInt(field(head[3], "K="), k) || !parseInt(field(head[4], "L="), l)
      || k < 1 || l < 2 || k > 100000 || l > 100000) {
    throw FormatError("bad K/L in header");
  }
  ts.K = static_cast<int>(k);
  ts.L = static_cast<int>(l);
  if (expected_digest && *expected_digest != ts.cfg_digest) {
    throw DigestMismatch(fmt::format(
        "tables were built for config {} but the active config is {}",
        hex64(ts.cfg_digest), hex64(*expected_digest)));
  }

  if (lines.size() < 2 || lines[1] != kColumns) {
    throw FormatError("missing CSV column header");
  }

  for (BlockKind s : kActiveKinds) {
    for (BlockKind d : kActiveKinds) {
      ts.table(s, d) = SegmentTable(s, d, ts.L, ts.K);
    }
  }
  ts.slew_rows.assign(static_cast<std::size_t>(ts.L), 0.0);
  std::vector<char> seen(9u * 2 * ts.L * ts.K, 0);
  std::vector<char> row_seen(static_cast<std::size_t>(ts.L), 0);

  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto line = lines[i];
    std::vector<std::string_view> f;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma == std::string_view::npos
                                         ? std::string_view::npos
                                         : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    const auto bad = [&](const std::string& why) {
      return FormatError(fmt::format("data line {}: {}", i + 1, why));
    };
    if (f.size() != 8) {
      throw bad("expected 8 fields");
    }
    const auto src = f[0].size() == 1 ? kindFromChar(f[0][0]) : std::nullopt;
    const auto dst = f[1].size() == 1 ? kindFromChar(f[1][0]) : std::nullopt;
    const BlockKind sk = src.value_or(BlockKind::W);
    const BlockKind dk = dst.value_or(BlockKind::W);
    if (!isActive(sk) || !isActive(dk)) {
      throw bad("src/dst must be one of B, R, S");
    }
    const std::size_t pair = activeIndex(sk) * 3 + activeIndex(dk);
    Corner corner;
    if (f[2] == "MIN") {
      corner = Corner::MIN;
    } else if (f[2] == "MAX") {
      corner = Corner::MAX;
    } else if (f[2] == "NOMINAL") {
      continue;  // optional debugging rows
    } else {
      throw bad("unknown corner '" + std::string(f[2]) + "'");
    }
    long row = 0;
    long col = 0;
    double slew = 0;
    StageResult v;
    if (!parseInt(f[3], row) || !parseInt(f[4], col) || !parseDouble(f[5], slew)
        || !parseDouble(f[6], v.delay) || !parseDouble(f[7], v.slew_out)) {
      throw bad("malformed number");
    }
    if (row < 0 || row >= ts.L || col < 0 || col >= ts.K) {
      throw bad("row/col index out of range");
    }
    const std::size_t key
        = ((pair * 2 + (corner == Corner::MAX)) * ts.L + row) * ts.K + col;
    if (seen[key]) {
      throw bad("duplicate cell");
    }
    seen[key] = 1;
    if (!row_seen[row]) {
      ts.slew_rows[row] = slew;
      row_seen[row] = 1;
    } else if (ts.slew_rows[row] != slew) {
      throw bad("slew_in disagrees with other cells of the same row");
    }
    ts.tables[pair].cell(corner, static_cast<int>(row), static_cast<int>(col))
        = v;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw FormatError(fmt::format("table file incomplete: expected {} cells",
                                  seen.size()));
  }
  verifyTables(ts);
  return ts;
}

TableSet loadTablesFile(const std::string& path,
                        std::optional<std::uint64_t> expected_digest)
{
  return loadTables(readFile(path), expected_digest);
}

LookupResult tableLookup(const TableSet& ts, BlockKind src, BlockKind dst,
                         int n_wires, double slew_in, LookupMode mode,
                         Purpose purpose)
{
  if (n_wires < 0 || n_wires > ts.K - 1) {
    throw LookupError("SegmentTooLong",
                      fmt::format("{} intervening W blocks exceed K-1 = {}",
                                  n_wires, ts.K - 1));
  }
  const std::vector<double>& rows = ts.slew_rows;
  const auto tol = [](double r) { return 1e-9 * std::max(1.0, std::abs(r)); };
  if (!(slew_in <= rows.back() + tol(rows.back()))) {
    throw LookupError("SlewOutOfRange",
                      fmt::format("input slew {} above characterized max {}",
                                  fmtNum(slew_in), fmtNum(rows.back())));
  }
  const Corner corner
      = purpose == Purpose::SETUP_MAX ? Corner::MAX : Corner::MIN;
  const SegmentTable& t = ts.table(src, dst);

  LookupResult res;
  if (slew_in < rows.front()) {
    res.clamped = slew_in < rows.front() - tol(rows.front());
    slew_in = rows.front();
  }
  // First row strictly above slew_in; hi in [1, L] since slew_in >= rows[0].
  const auto it = std::upper_bound(rows.begin(), rows.end(), slew_in);
  int hi = static_cast<int>(it - rows.begin());
  int lo = hi - 1;
  if (std::abs(slew_in - rows[lo]) <= tol(rows[lo])) {
    res.row = lo;
    res.value = t.cell(corner, lo, n_wires);
    return res;
  }
  if (hi < ts.L && std::abs(rows[hi] - slew_in) <= tol(rows[hi])) {
    res.row = hi;
    res.value = t.cell(corner, hi, n_wires);
    return res;
  }
  if (hi >= ts.L) {
    // Within tolerance above the last row.
    res.row = ts.L - 1;
    res.value = t.cell(corner, ts.L - 1, n_wires);
    return res;
  }
  if (mode == LookupMode::EXACT) {
    throw LookupError("NotOnGrid",
                      fmt::format("slew {} is not a characterized row (exact "
                                  "mode)",
                                  fmtNum(slew_in)));
  }
  const StageResult& a = t.cell(corner, lo, n_wires);
  const StageResult& b = t.cell(corner, hi, n_wires);
  res.row = lo;
  if (mode == LookupMode::PESSIMISTIC) {
    // Setup takes the row with the larger delay, hold the smaller; ties go to
    // the worse-slew row for setup and the better-slew row for hold.
    if (purpose == Purpose::SETUP_MAX) {
      const bool upper = b.delay >= a.delay;
      res.value = upper ? b : a;
      res.row = upper ? hi : lo;
    } else {
      const bool lower = a.delay <= b.delay;
      res.value = lower ? a : b;
      res.row = lower ? lo : hi;
    }
    return res;
  }
  const double frac = (slew_in - rows[lo]) / (rows[hi] - rows[lo]);
  res.value.delay = a.delay + frac * (b.delay - a.delay);
  res.value.slew_out = a.slew_out + frac * (b.slew_out - a.slew_out);
  return res;
}

}  // namespace gnoc
