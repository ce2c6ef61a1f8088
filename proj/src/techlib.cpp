// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#include "gnoc/techlib.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <set>

#include "gnoc/error.hpp"
#include "gnoc/util.hpp"

namespace gnoc {

char kindChar(BlockKind k)
{
  switch (k) {
    case BlockKind::W:
      return 'W';
    case BlockKind::B:
      return 'B';
    case BlockKind::R:
      return 'R';
    case BlockKind::S:
      return 'S';
  }
  return '?';
}

std::optional<BlockKind> kindFromChar(char c)
{
  switch (c) {
    case 'W':
      return BlockKind::W;
    case 'B':
      return BlockKind::B;
    case 'R':
      return BlockKind::R;
    case 'S':
      return BlockKind::S;
    default:
      return std::nullopt;
  }
}

std::string_view cornerName(Corner c)
{
  switch (c) {
    case Corner::MIN:
      return "MIN";
    case Corner::NOMINAL:
      return "NOMINAL";
    case Corner::MAX:
      return "MAX";
  }
  return "?";
}

double TechConfig::derate(Corner c) const
{
  switch (c) {
    case Corner::MIN:
      return derate_min;
    case Corner::MAX:
      return derate_max;
    case Corner::NOMINAL:
      break;
  }
  return 1.0;
}

std::vector<double> TechConfig::slewGrid() const
{
  std::vector<double> rows(static_cast<std::size_t>(L));
  const double span = slew_grid_max - slew_grid_min;
  for (int i = 0; i < L; ++i) {
    rows[i] = slew_grid_min + span * i / (L - 1);
  }
  rows.back() = slew_grid_max;
  return rows;
}

namespace {

// Key tables drive parsing, validation and serialization alike so the three
// can never drift apart.
struct GlobalKey
{
  const char* name;
  bool required;
};

constexpr GlobalKey kGlobalKeys[] = {
    {"pitch_r", true},        {"pitch_c", true},
    {"K", true},              {"L", true},
    {"slew_grid_min", true},  {"slew_grid_max", true},
    {"slew_legal_min", false}, {"slew_legal_max", false},
    {"beta", false},          {"derate_min", true},
    {"derate_max", true},     {"cb_d0", true},
    {"cb_r_drv", true},       {"cb_c_in", true},
    {"cb_s0", true},          {"cb_area_surcharge", false},
};

constexpr const char* kElectricalKeys[]
    = {"d0", "k_sl", "r_drv", "c_in", "s0", "k_sin", "k_sload"};

std::vector<std::string> sectionKeys(BlockKind k)
{
  std::vector<std::string> keys;
  if (isActive(k)) {
    keys.assign(std::begin(kElectricalKeys), std::end(kElectricalKeys));
  }
  if (k == BlockKind::R) {
    keys.insert(keys.end(), {"d_cq", "t_su", "t_h"});
  }
  if (k == BlockKind::S) {
    keys.insert(keys.end(), {"t_su", "t_h"});
  }
  keys.emplace_back("area");
  return keys;
}

bool sectionKeyRequired(BlockKind k, const std::string& key)
{
  // Switch setup/hold are optional and default to zero.
  return !(k == BlockKind::S && (key == "t_su" || key == "t_h"));
}

double* blockField(BlockParams& p, const std::string& key)
{
  if (key == "d0") return &p.d0;
  if (key == "k_sl") return &p.k_sl;
  if (key == "r_drv") return &p.r_drv;
  if (key == "c_in") return &p.c_in;
  if (key == "s0") return &p.s0;
  if (key == "k_sin") return &p.k_sin;
  if (key == "k_sload") return &p.k_sload;
  if (key == "d_cq") return &p.d_cq;
  if (key == "t_su") return &p.t_su;
  if (key == "t_h") return &p.t_h;
  return nullptr;
}

struct RawValue
{
  double value;
  int line;
};

using Section = std::map<std::string, RawValue>;

void requireNonNegative(double v, const std::string& what)
{
  if (!(v >= 0) || !std::isfinite(v)) {
    throw InvalidValue(fmt::format("{} must be finite and >= 0 (got {})", what,
                                   fmtNum(v)));
  }
}

void requirePositive(double v, const std::string& what)
{
  if (!(v > 0) || !std::isfinite(v)) {
    throw InvalidValue(
        fmt::format("{} must be > 0 (got {})", what, fmtNum(v)));
  }
}

}  // namespace

void validateTechConfig(const TechConfig& cfg)
{
  if (cfg.K < 1) {
    throw InvalidValue(fmt::format("K must be >= 1 (got {})", cfg.K));
  }
  if (cfg.L < 2) {
    throw InvalidValue(fmt::format("L must be >= 2 (got {})", cfg.L));
  }
  requireNonNegative(cfg.pitch_r, "pitch_r");
  requireNonNegative(cfg.pitch_c, "pitch_c");
  requireNonNegative(cfg.beta, "beta");
  requirePositive(cfg.slew_grid_min, "slew_grid_min");
  if (!(cfg.slew_grid_min < cfg.slew_grid_max)) {
    throw InvalidValue("slew_grid_min must be < slew_grid_max");
  }
  requireNonNegative(cfg.slew_legal_min, "slew_legal_min");
  if (!(cfg.slew_legal_min <= cfg.slew_legal_max)) {
    throw InvalidValue("slew_legal_min must be <= slew_legal_max");
  }
  requirePositive(cfg.derate_min, "derate_min");
  if (!(cfg.derate_min <= 1.0)) {
    throw InvalidValue(
        fmt::format("derate_min must be <= 1 (got {})", fmtNum(cfg.derate_min)));
  }
  if (!(cfg.derate_max >= 1.0) || !std::isfinite(cfg.derate_max)) {
    throw InvalidValue(
        fmt::format("derate_max must be >= 1 (got {})", fmtNum(cfg.derate_max)));
  }
  requireNonNegative(cfg.clock_buffer.d0, "cb_d0");
  requirePositive(cfg.clock_buffer.r_drv, "cb_r_drv");
  requirePositive(cfg.clock_buffer.c_in, "cb_c_in");
  requirePositive(cfg.clock_buffer.s0, "cb_s0");
  requireNonNegative(cfg.cb_area_surcharge, "cb_area_surcharge");
  for (BlockKind k : kAllKinds) {
    const std::string tag = std::string("kind ") + kindChar(k);
    requireNonNegative(cfg.area(k), tag + " area");
    if (!isActive(k)) {
      continue;
    }
    BlockParams p = cfg.params(k);
    for (const auto& key : sectionKeys(k)) {
      if (const double* f = blockField(p, key)) {
        requireNonNegative(*f, tag + " " + key);
      }
    }
    requirePositive(p.r_drv, tag + " r_drv");
    requirePositive(p.c_in, tag + " c_in");
  }
}

TechConfig loadTechConfig(std::string_view text)
{
  Section global;
  std::map<BlockKind, Section> sections;
  std::optional<BlockKind> current;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto line = trim(stripComment(raw));
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError(line_no, "unterminated section header");
      }
      const auto words = splitWs(line.substr(1, line.size() - 2));
      if (words.size() != 2 || words[0] != "kind" || words[1].size() != 1
          || !kindFromChar(words[1][0])) {
        throw ParseError(line_no, "expected section header '[kind <W|B|R|S>]'");
      }
      current = kindFromChar(words[1][0]);
      if (sections.count(*current)) {
        throw ParseError(line_no, "duplicate section");
      }
      sections[*current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto val_text = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError(line_no, "empty key");
    }
    double value = 0;
    if (!parseDouble(val_text, value)) {
      throw ParseError(line_no,
                       "value of '" + key + "' is not a decimal number");
    }
    Section& dest = current ? sections[*current] : global;
    bool known = false;
    if (current) {
      for (const auto& k : sectionKeys(*current)) {
        known |= (k == key);
      }
    } else {
      for (const auto& g : kGlobalKeys) {
        known |= (key == g.name);
      }
    }
    if (!known) {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
    if (dest.count(key)) {
      throw ParseError(line_no, "duplicate key '" + key + "'");
    }
    dest[key] = {value, line_no};
  }

  auto get = [](const Section& s, const std::string& key,
                std::optional<double> fallback,
                const std::string& scope) -> double {
    const auto it = s.find(key);
    if (it != s.end()) {
      return it->second.value;
    }
    if (!fallback) {
      throw MissingKey(scope.empty() ? key : scope + "." + key);
    }
    return *fallback;
  };
  auto getInt = [&](const std::string& key) -> int {
    const double v = get(global, key, std::nullopt, "");
    if (v != std::floor(v) || std::abs(v) > 1e6) {
      throw InvalidValue(key + " must be an integer");
    }
    return static_cast<int>(v);
  };

  TechConfig cfg;
  cfg.pitch_r = get(global, "pitch_r", std::nullopt, "");
  cfg.pitch_c = get(global, "pitch_c", std::nullopt, "");
  cfg.K = getInt("K");
  cfg.L = getInt("L");
  cfg.slew_grid_min = get(global, "slew_grid_min", std::nullopt, "");
  cfg.slew_grid_max = get(global, "slew_grid_max", std::nullopt, "");
  cfg.slew_legal_min = get(global, "slew_legal_min", cfg.slew_grid_min, "");
  cfg.slew_legal_max = get(global, "slew_legal_max", cfg.slew_grid_max, "");
  cfg.beta = get(global, "beta", 1.0, "");
  cfg.derate_min = get(global, "derate_min", std::nullopt, "");
  cfg.derate_max = get(global, "derate_max", std::nullopt, "");
  cfg.clock_buffer.d0 = get(global, "cb_d0", std::nullopt, "");
  cfg.clock_buffer.r_drv = get(global, "cb_r_drv", std::nullopt, "");
  cfg.clock_buffer.c_in = get(global, "cb_c_in", std::nullopt, "");
  cfg.clock_buffer.s0 = get(global, "cb_s0", std::nullopt, "");
  cfg.cb_area_surcharge = get(global, "cb_area_surcharge", 1.0, "");

  for (BlockKind k : kAllKinds) {
    const std::string scope = std::string("kind ") + kindChar(k);
    const auto it = sections.find(k);
    if (it == sections.end()) {
      throw MissingKey("[" + scope + "]");
    }
    BlockParams p;
    for (const auto& key : sectionKeys(k)) {
      const std::optional<double> fallback
          = sectionKeyRequired(k, key) ? std::nullopt : std::optional(0.0);
      const double v = get(it->second, key, fallback, scope);
      if (key == "area") {
        cfg.area_cost[kindIndex(k)] = v;
      } else {
        *blockField(p, key) = v;
      }
    }
    if (isActive(k)) {
      p.clock_buffer = cfg.clock_buffer;
    }
    cfg.blocks[kindIndex(k)] = p;
  }

  validateTechConfig(cfg);
  return cfg;
}

TechConfig loadTechConfigFile(const std::string& path)
{
  return loadTechConfig(readFile(path));
}

std::string serializeTechConfig(const TechConfig& cfg)
{
  // Round-trip exact: 17 significant digits.
  auto num = [](double v) { return fmt::format("{:.17g}", v); };
  std::string out;
  auto put = [&](std::string_view key, const std::string& v) {
    out += fmt::format("{} = {}\n", key, v);
  };
  put("pitch_r", num(cfg.pitch_r));
  put("pitch_c", num(cfg.pitch_c));
  put("K", std::to_string(cfg.K));
  put("L", std::to_string(cfg.L));
  put("slew_grid_min", num(cfg.slew_grid_min));
  put("slew_grid_max", num(cfg.slew_grid_max));
  put("slew_legal_min", num(cfg.slew_legal_min));
  put("slew_legal_max", num(cfg.slew_legal_max));
  put("beta", num(cfg.beta));
  put("derate_min", num(cfg.derate_min));
  put("derate_max", num(cfg.derate_max));
  put("cb_d0", num(cfg.clock_buffer.d0));
  put("cb_r_drv", num(cfg.clock_buffer.r_drv));
  put("cb_c_in", num(cfg.clock_buffer.c_in));
  put("cb_s0", num(cfg.clock_buffer.s0));
  put("cb_area_surcharge", num(cfg.cb_area_surcharge));
  for (BlockKind k : kAllKinds) {
    out += fmt::format("\n[kind {}]\n", kindChar(k));
    BlockParams p = cfg.params(k);
    for (const auto& key : sectionKeys(k)) {
      if (key == "area") {
        put(key, num(cfg.area(k)));
      } else {
        put(key, num(*blockField(p, key)));
      }
    }
  }
  return out;
}

const TechConfig& defaultTechConfig()
{
  static const TechConfig cfg = loadTechConfig(defaultTechText());
  return cfg;
}

std::uint64_t techDigest(const TechConfig& cfg)
{
  return fnv1a64(serializeTechConfig(cfg));
}

std::string techDigestHex(const TechConfig& cfg)
{
  return hex64(techDigest(cfg));
}

BlockParams blockParams(const TechConfig& cfg, BlockKind kind, SubtypeTag sub)
{
  if (sub.width_class < 1) {
    throw UnknownSubtype(fmt::format("width class {} on kind {}",
                                     sub.width_class, kindChar(kind)));
  }
  if (kind == BlockKind::W) {
    BlockParams p;
    if (sub.clock_buffered) {
      p.clock_buffer = cfg.clock_buffer;
    }
    return p;
  }
  if (sub.clock_buffered) {
    throw UnknownSubtype(
        fmt::format("kind {} has no .cb sub-type (its clock fragment is "
                    "always buffered)",
                    kindChar(kind)));
  }
  return cfg.params(kind);
}

void validateClockSpec(const ClockSpec& clk, const TechConfig& cfg)
{
  if (!(clk.jitter >= 0) || !std::isfinite(clk.jitter)) {
    throw InvalidValue("clock jitter must be >= 0");
  }
  if (!(clk.period > clk.jitter) || !std::isfinite(clk.period)) {
    throw InvalidValue(fmt::format("clock period {} must exceed jitter {}",
                                   fmtNum(clk.period), fmtNum(clk.jitter)));
  }
  if (clk.source_slew < cfg.slew_legal_min
      || clk.source_slew > cfg.slew_legal_max) {
    throw InvalidValue(fmt::format(
        "clock source slew {} outside legality range [{}, {}]",
        fmtNum(clk.source_slew), fmtNum(cfg.slew_legal_min),
        fmtNum(cfg.slew_legal_max)));
  }
}

ClockSpec makeClockSpec(const TechConfig& cfg, double period, double jitter)
{
  return ClockSpec{period, jitter, cfg.clockPinSlew()};
}

}  // namespace gnoc
