// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

// Readers for the frozen files under tests/data and a random sentence source.

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnoc/grammar.hpp"
#include "gnoc/synthesize.hpp"
#include "gnoc/util.hpp"

namespace fixtures {

struct CorpusEntry
{
  bool valid;
  std::string code;   // expected error code when invalid
  long position = 0;  // expected error position when invalid
  std::string text;
};

/// Lines "ok | <sentence>" or "<Code>@<pos> | <sentence>".
inline std::vector<CorpusEntry> grammarCorpus(const std::string& path)
{
  std::vector<CorpusEntry> out;
  std::istringstream in(gnoc::readFile(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const auto bar = line.find(" | ");
    if (bar == std::string::npos) {
      throw std::runtime_error("bad corpus line: " + line);
    }
    CorpusEntry e;
    const std::string expect = line.substr(0, bar);
    e.text = line.substr(bar + 3);
    e.valid = expect == "ok";
    if (!e.valid) {
      const auto at = expect.find('@');
      e.code = expect.substr(0, at);
      e.position = std::stol(expect.substr(at + 1));
    }
    out.push_back(e);
  }
  return out;
}

struct DseExpected
{
  std::vector<double> totals;  // +inf for invalid candidates
  std::vector<std::vector<std::string>> links;  // '# expect' annotations
};

/// Recomputes every candidate's cost from the '# expect' annotations alone.
inline DseExpected dseExpected(const std::string& text,
                               const gnoc::TechConfig& cfg)
{
  DseExpected e;
  std::istringstream in(text);
  std::string line;
  double total = 0;
  bool valid = true;
  while (std::getline(in, line)) {
    const auto words = gnoc::splitWs(line);
    if (words.empty() || words[0].front() == '#') {
      continue;
    }
    if (words[0] == "candidate") {
      total = 0;
      valid = true;
      e.links.emplace_back();
    } else if (words[0] == "island") {
      double c = 0;
      if (!gnoc::parseDouble(words[2], c)) {
        throw std::runtime_error("bad island line: " + line);
      }
      total += c;
    } else if (words[0] == "link") {
      const auto tag = line.find("# expect ");
      if (tag == std::string::npos) {
        throw std::runtime_error("link without annotation: " + line);
      }
      const std::string expect = line.substr(tag + 9);
      e.links.back().push_back(expect);
      if (expect == "unsynthesizable") {
        valid = false;
      } else {
        total += gnoc::linkCost(gnoc::parseLink(expect), cfg);
      }
    } else if (words[0] == "end") {
      e.totals.push_back(valid ? total : std::numeric_limits<double>::infinity());
    }
  }
  return e;
}

inline gnoc::LinkSentence randomSentence(std::mt19937_64& rng)
{
  using gnoc::BlockKind;
  std::vector<gnoc::Token> t{gnoc::token(BlockKind::S)};
  const auto groups = gnoc::uniformInt(rng, 1, 4);
  for (std::uint64_t g = 0; g < groups; ++g) {
    const auto n = gnoc::uniformInt(rng, 1, 12);
    for (std::uint64_t i = 0; i < n; ++i) {
      switch (gnoc::uniformInt(rng, 0, 3)) {
        case 0: t.push_back(gnoc::plainW()); break;
        case 1: t.push_back(gnoc::cbW()); break;
        case 2: t.push_back(gnoc::token(BlockKind::B)); break;
        default: t.push_back(gnoc::token(BlockKind::R)); break;
      }
    }
    t.push_back(gnoc::token(BlockKind::S));
  }
  return gnoc::LinkSentence::fromTokens(std::move(t));
}

}  // namespace fixtures
