// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

// Writes tests/data/dse_candidates.txt: 50 seeded candidates, each link
// annotated with its synthesized sentence. Run once; the file is frozen.

#include <cstdio>

#include <fmt/format.h>

#include "gnoc/dse.hpp"
#include "gnoc/util.hpp"

int main(int argc, char** argv)
{
  using namespace gnoc;
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <out.txt>\n", argv[0]);
    return 2;
  }
  const TechConfig& cfg = defaultTechConfig();
  const TableSet ts = buildTables(cfg);
  const Analyzer an(cfg, ts);
  GeneratorRanges g;
  g.length_max = 12;
  g.period_min = 8;
  g.period_max = 120;
  const auto cands = generateCandidates(2026, 50, g);
  std::string out = "# 50 candidates; '# expect' gives each link's synthesis\n";
  for (const Candidate& c : cands) {
    out += fmt::format("candidate {}\n", c.name);
    for (const Island& i : c.islands) {
      out += fmt::format("island {} {}\n", i.name, fmtNum(i.cost));
    }
    for (const LinkSpec& l : c.links) {
      const SynthesisResult r = synthesizeLink(l, an);
      out += fmt::format("link {} {} {}  # expect {}\n", l.name, l.length_slots,
                         fmtNum(l.period),
                         r.valid ? serializeLink(*r.link) : "unsynthesizable");
    }
    out += "end\n";
  }
  writeFile(argv[1], out);
  return 0;
}
