// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#include "gnoc/dse.hpp"

#include <fmt/format.h>

#include <cmath>
#include <optional>
#include <random>
#include <set>

#include "gnoc/error.hpp"
#include "gnoc/util.hpp"

namespace gnoc {

std::vector<Candidate> parseCandidates(std::string_view text)
{
  std::vector<Candidate> out;
  std::optional<Candidate> cur;
  std::set<std::string> link_names;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    const auto w = splitWs(stripComment(raw));
    if (w.empty()) {
      continue;
    }
    if (w[0] == "candidate") {
      if (cur) {
        throw ParseError(line_no, "'candidate' before 'end'");
      }
      if (w.size() != 2) {
        throw ParseError(line_no, "expected 'candidate <name>'");
      }
      cur = Candidate{std::string(w[1]), {}, {}};
      link_names.clear();
    } else if (w[0] == "island") {
      double cost = 0;
      if (!cur) {
        throw ParseError(line_no, "'island' outside a candidate");
      }
      if (w.size() != 3 || !parseDouble(w[2], cost)) {
        throw ParseError(line_no, "expected 'island <name> <cost>'");
      }
      if (!(cost >= 0)) {
        throw InvalidValue(fmt::format("line {}: island cost must be >= 0",
                                       line_no));
      }
      cur->islands.push_back(Island{std::string(w[1]), cost});
    } else if (w[0] == "link") {
      if (!cur) {
        throw ParseError(line_no, "'link' outside a candidate");
      }
      LinkSpec spec;
      long len = 0;
      if ((w.size() != 4 && w.size() != 5) || !parseInt(w[2], len)
          || !parseDouble(w[3], spec.period)
          || (w.size() == 5 && !parseDouble(w[4], spec.jitter))) {
        throw ParseError(
            line_no,
            "expected 'link <name> <length_slots> <period_tu> [jitter_tu]'");
      }
      spec.name = std::string(w[1]);
      spec.length_slots = static_cast<int>(len);
      if (len < 1 || len > 1000000) {
        throw InvalidValue(
            fmt::format("line {}: length_slots must be >= 1", line_no));
      }
      validateLinkSpec(spec);
      if (!link_names.insert(spec.name).second) {
        throw InvalidValue(fmt::format("line {}: duplicate link name '{}'",
                                       line_no, spec.name));
      }
      cur->links.push_back(std::move(spec));
    } else if (w[0] == "end") {
      if (!cur || w.size() != 1) {
        throw ParseError(line_no, "unexpected 'end'");
      }
      out.push_back(std::move(*cur));
      cur.reset();
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(w[0]) + "'");
    }
  }
  if (cur) {
    throw ParseError(line_no, "candidate '" + cur->name + "' missing 'end'");
  }
  return out;
}

std::vector<Candidate> parseCandidatesFile(const std::string& path)
{
  return parseCandidates(readFile(path));
}

std::string serializeCandidates(std::span<const Candidate> cands)
{
  std::string out;
  for (const Candidate& c : cands) {
    out += fmt::format("candidate {}\n", c.name);
    for (const Island& i : c.islands) {
      out += fmt::format("island {} {}\n", i.name, fmtNum(i.cost));
    }
    for (const LinkSpec& l : c.links) {
      out += fmt::format("link {} {} {}", l.name, l.length_slots,
                         fmtNum(l.period));
      if (l.jitter != 0) {
        out += " " + fmtNum(l.jitter);
      }
      out += '\n';
    }
    out += "end\n";
  }
  return out;
}

CandidateEval evaluateCandidate(const Candidate& c, const Analyzer& an)
{
  CandidateEval ev;
  for (const Island& i : c.islands) {
    ev.island_cost += i.cost;
  }
  double total = ev.island_cost;
  for (const LinkSpec& spec : c.links) {
    const SynthesisResult sr = synthesizeLink(spec, an);
    if (!sr.valid) {
      std::string why;
      for (std::size_t k = 0; k < sr.reasons.size(); ++k) {
        why += (k ? " | " : "") + sr.reasons[k];
      }
      ev.detail = fmt::format("link {} unsynthesizable: {}", spec.name, why);
      ev.link_costs.clear();
      return ev;
    }
    ev.link_costs.push_back(sr.cost);
    total += sr.cost;
  }
  ev.valid = true;
  ev.cost = total;
  return ev;
}

namespace {

DseResult reduceLedger(std::span<const Candidate> cands,
                       std::vector<CandidateEval> ledger)
{
  DseResult res;
  res.ledger = std::move(ledger);
  res.evaluated = res.ledger.size();
  bool found = false;
  for (std::size_t i = 0; i < res.ledger.size(); ++i) {
    const CandidateEval& ev = res.ledger[i];
    if (ev.valid && ev.cost < res.best_cost) {
      res.best_cost = ev.cost;
      res.best_index = i;
      res.best_name = cands[i].name;
      found = true;
    }
  }
  if (!found) {
    throw NoValidCandidate(fmt::format("all {} candidates are invalid",
                                       res.ledger.size()));
  }
  return res;
}

}  // namespace

DseResult dseLoopSerial(std::span<const Candidate> cands, const Analyzer& an)
{
  std::vector<CandidateEval> ledger;
  ledger.reserve(cands.size());
  for (const Candidate& c : cands) {
    ledger.push_back(evaluateCandidate(c, an));
  }
  return reduceLedger(cands, std::move(ledger));
}

DseResult dseLoop(std::span<const Candidate> cands, const Analyzer& an)
{
  std::vector<CandidateEval> ledger(cands.size());
  const long n = static_cast<long>(cands.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    ledger[i] = evaluateCandidate(cands[i], an);
  }
  return reduceLedger(cands, std::move(ledger));
}

std::vector<Candidate> generateCandidates(std::uint64_t seed, int count,
                                          const GeneratorRanges& g)
{
  std::mt19937_64 rng(seed);
  std::vector<Candidate> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    Candidate cand;
    cand.name = fmt::format("cand{}", c);
    const auto ni = uniformInt(rng, g.islands_min, g.islands_max);
    for (std::uint64_t i = 0; i < ni; ++i) {
      // Whole-unit costs keep candidate files exact in text form.
      const double cost = std::round(
          uniformReal(rng, g.island_cost_min, g.island_cost_max));
      cand.islands.push_back(Island{fmt::format("isl{}", i), cost});
    }
    const auto nl = uniformInt(rng, g.links_min, g.links_max);
    for (std::uint64_t i = 0; i < nl; ++i) {
      LinkSpec spec;
      spec.name = fmt::format("l{}", i);
      spec.length_slots
          = static_cast<int>(uniformInt(rng, g.length_min, g.length_max));
      spec.period = std::round(uniformReal(rng, g.period_min, g.period_max));
      cand.links.push_back(spec);
    }
    out.push_back(std::move(cand));
  }
  return out;
}

std::string formatDseLedger(const DseResult& r,
                            std::span<const Candidate> cands)
{
  std::string out = "index,candidate,status,cost,detail\n";
  for (std::size_t i = 0; i < r.ledger.size(); ++i) {
    const CandidateEval& ev = r.ledger[i];
    out += fmt::format("{},{},{},{},\"{}\"\n", i, cands[i].name,
                       ev.valid ? "valid" : "invalid",
                       ev.valid ? fmtNum(ev.cost) : std::string("inf"),
                       ev.detail);
  }
  out += fmt::format("best,{},{},{}\n", r.best_name, fmtNum(r.best_cost),
                     r.evaluated);
  return out;
}

}  // namespace gnoc
