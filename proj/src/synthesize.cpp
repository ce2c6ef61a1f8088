// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#include "gnoc/synthesize.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <tuple>

#include "gnoc/error.hpp"
#include "gnoc/util.hpp"

namespace gnoc {

void validateLinkSpec(const LinkSpec& spec)
{
  if (spec.length_slots < 1) {
    throw InvalidValue(fmt::format("link '{}': length_slots must be >= 1",
                                   spec.name));
  }
  if (!(spec.jitter >= 0) || !(spec.period > spec.jitter)) {
    throw InvalidValue(fmt::format(
        "link '{}': period {} must exceed jitter {} >= 0", spec.name,
        fmtNum(spec.period), fmtNum(spec.jitter)));
  }
}

ClockSpec clockFor(const LinkSpec& spec, const TechConfig& cfg)
{
  return makeClockSpec(cfg, spec.period, spec.jitter);
}

std::vector<int> insertEvenly(int run_length, int count)
{
  if (count < 0 || count > run_length) {
    throw InvalidValue(fmt::format("cannot place {} blocks in {} slots", count,
                                   run_length));
  }
  std::vector<int> pos;
  pos.reserve(static_cast<std::size_t>(count));
  // Integer form of floor(i*(M+1)/(n+1) + 1/2).
  const long num = run_length + 1;
  const long den = count + 1;
  for (long i = 1; i <= count; ++i) {
    pos.push_back(static_cast<int>((2 * i * num + den) / (2 * den)));
  }
  return pos;
}

Validity isValidTokens(std::span<const Token> tokens, const ClockSpec& clk,
                       const Analyzer& an)
{
  Validity v;
  try {
    const TimingReport rep = an.analyzeTokens(tokens, clk);
    for (const auto& viol : rep.violations) {
      v.reasons.push_back(fmt::format("{} {}: {}", violationName(viol.kind),
                                      viol.location, viol.detail));
    }
  } catch (const LookupError& e) {
    v.reasons.push_back(e.what());
  }
  v.valid = v.reasons.empty();
  return v;
}

Validity isValid(const LinkSentence& link, const LinkSpec& spec,
                 const Analyzer& an)
{
  validateLinkSpec(spec);
  if (link.size() != static_cast<std::size_t>(spec.length_slots) + 2) {
    throw InvalidValue(fmt::format(
        "link has {} interior tokens but spec '{}' has {} slots",
        link.size() - 2, spec.name, spec.length_slots));
  }
  return isValidTokens(link.span(), clockFor(spec, an.config()), an);
}

int maxUnbufferedRun(double period, const TechConfig& cfg)
{
  const double half = period / 2;
  if (clockStageDelay(0, Corner::MAX, cfg) >= half) {
    return -1;
  }
  int n = 0;
  // Stage delay grows at least linearly in n; bounded by the period.
  while (clockStageDelay(n + 1, Corner::MAX, cfg) < half) {
    ++n;
    if (n > 1000000) {
      break;
    }
  }
  return n;
}

std::vector<Token> assignClockSubtypes(std::span<const Token> tokens,
                                       double period, const TechConfig& cfg)
{
  const int max_run = maxUnbufferedRun(period, cfg);
  if (max_run < 0) {
    throw ClockUnsatisfiable(fmt::format(
        "a single clock stage already takes {} >= T/2 = {}",
        fmtNum(clockStageDelay(0, Corner::MAX, cfg)), fmtNum(period / 2)));
  }
  std::vector<Token> out(tokens.begin(), tokens.end());
  int run = 0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].clockBuffered()) {
      run = 0;
    } else if (run + 1 > max_run) {
      out[i].sub.clock_buffered = true;
      run = 0;
    } else {
      ++run;
    }
  }
  return out;
}

LinkSentence assignClockSubtypes(const LinkSentence& link,
                                 const LinkSpec& spec, const TechConfig& cfg)
{
  return LinkSentence::fromTokens(
      assignClockSubtypes(link.span(), spec.period, cfg));
}

double linkCost(std::span<const Token> tokens, const TechConfig& cfg)
{
  double cost = 0;
  for (const Token& t : tokens) {
    cost += cfg.area(t.kind);
    if (t.sub.clock_buffered) {
      cost += cfg.cb_area_surcharge;
    }
  }
  return cost;
}

namespace {

/// left + m slots (b of them buffers, evenly placed) + right.
std::vector<Token> makeRun(BlockKind left, int m, int b, BlockKind right)
{
  std::vector<Token> t;
  t.reserve(static_cast<std::size_t>(m) + 2);
  t.push_back(token(left));
  t.insert(t.end(), static_cast<std::size_t>(m), plainW());
  for (int p : insertEvenly(m, b)) {
    t[static_cast<std::size_t>(p)] = token(BlockKind::B);
  }
  t.push_back(token(right));
  return t;
}

struct Evaluation
{
  std::vector<Token> tokens;  // with clock sub-types applied
  Validity validity;
};

Evaluation evaluate(std::vector<Token> data, const LinkSpec& spec,
                    const ClockSpec& clk, const Analyzer& an)
{
  Evaluation ev;
  try {
    ev.tokens = assignClockSubtypes(data, spec.period, an.config());
  } catch (const ClockUnsatisfiable& e) {
    ev.tokens = std::move(data);
    ev.validity.reasons.push_back(e.what());
    return ev;
  }
  ev.validity = isValidTokens(ev.tokens, clk, an);
  return ev;
}

void finish(SynthesisResult& res, std::vector<Token> tokens,
            const TechConfig& cfg)
{
  res.valid = true;
  res.reasons.clear();
  for (const Token& t : tokens) {
    res.n_w += t.kind == BlockKind::W;
    res.n_b += t.kind == BlockKind::B;
    res.n_r += t.kind == BlockKind::R;
  }
  res.cost = linkCost(tokens, cfg);
  res.link = LinkSentence::fromTokens(std::move(tokens));
}

}  // namespace

SynthesisResult synthesizeLink(const LinkSpec& spec, const Analyzer& an)
{
  validateLinkSpec(spec);
  const TechConfig& cfg = an.config();
  const ClockSpec clk = clockFor(spec, cfg);
  const int M = spec.length_slots;
  SynthesisResult res;

  auto record = [&](int r, int subrun, int b, const Evaluation& ev) {
    ++res.iterations;
    res.log.push_back(SynthesisLogEntry{r, subrun, b, serializeTokens(ev.tokens),
                                        ev.validity.valid,
                                        ev.validity.reasons});
    res.reasons = ev.validity.reasons;
  };

  // Register-free phase: all wires, then 1, 2, ..., M evenly placed buffers.
  for (int b = 0; b <= M; ++b) {
    Evaluation ev = evaluate(makeRun(BlockKind::S, M, b, BlockKind::S), spec,
                             clk, an);
    record(0, -1, b, ev);
    if (ev.validity.valid) {
      finish(res, std::move(ev.tokens), cfg);
      return res;
    }
  }

  // Register phase. Registers reset slew and close clock stages, so each
  // register-bounded sub-run is buffered independently; its minimal buffer
  // count depends only on (left kind, length, right kind).
  using Key = std::tuple<BlockKind, int, BlockKind>;
  std::map<Key, std::optional<std::vector<Token>>> best_subrun;

  for (int r = 1; r <= M; ++r) {
    std::vector<int> ends{0};
    for (int p : insertEvenly(M, r)) {
      ends.push_back(p);
    }
    ends.push_back(M + 1);

    std::vector<Token> full{token(BlockKind::S)};
    bool ok = true;
    for (std::size_t i = 0; i + 1 < ends.size() && ok; ++i) {
      const BlockKind lk = i == 0 ? BlockKind::S : BlockKind::R;
      const BlockKind rk = i + 2 == ends.size() ? BlockKind::S : BlockKind::R;
      const int m = ends[i + 1] - ends[i] - 1;
      const Key key{lk, m, rk};
      auto it = best_subrun.find(key);
      if (it == best_subrun.end()) {
        std::optional<std::vector<Token>> found;
        for (int b = 0; b <= m && !found; ++b) {
          Evaluation ev = evaluate(makeRun(lk, m, b, rk), spec, clk, an);
          record(r, static_cast<int>(i), b, ev);
          if (ev.validity.valid) {
            found = std::move(ev.tokens);
          }
        }
        it = best_subrun.emplace(key, std::move(found)).first;
      }
      if (!it->second) {
        ok = false;
        break;
      }
      full.insert(full.end(), it->second->begin() + 1, it->second->end());
    }
    if (ok) {
      finish(res, std::move(full), cfg);
      return res;
    }
  }
  res.valid = false;
  return res;
}

std::string formatSynthesisLog(const SynthesisResult& r)
{
  std::string out = "registers,subrun,buffers,valid,tokens,reasons\n";
  for (const auto& e : r.log) {
    std::string reasons;
    for (std::size_t i = 0; i < e.reasons.size(); ++i) {
      reasons += (i ? " | " : "") + e.reasons[i];
    }
    out += fmt::format("{},{},{},{},{},\"{}\"\n", e.registers, e.subrun,
                       e.buffers, e.valid ? "valid" : "invalid", e.tokens,
                       reasons);
  }
  if (r.valid) {
    out += fmt::format(
        "result valid cost={} W={} B={} R={} iterations={} link={}\n",
        fmtNum(r.cost), r.n_w, r.n_b, r.n_r, r.iterations,
        serializeLink(*r.link));
  } else {
    std::string reasons;
    for (std::size_t i = 0; i < r.reasons.size(); ++i) {
      reasons += (i ? " | " : "") + r.reasons[i];
    }
    out += fmt::format("result Unsynthesizable iterations={} reasons={}\n",
                       r.iterations, reasons);
  }
  return out;
}

}  // namespace gnoc
