// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#include "gnoc/grammar.hpp"

#include <fmt/format.h>

#include "gnoc/error.hpp"
#include "gnoc/util.hpp"

namespace gnoc {

std::string tokenText(const Token& t)
{
  std::string s(1, kindChar(t.kind));
  if (t.sub.clock_buffered) {
    s += ".cb";
  }
  if (t.sub.width_class != 1) {
    s += ".w" + std::to_string(t.sub.width_class);
  }
  return s;
}

void checkLinkTokens(std::span<const Token> tokens)
{
  if (tokens.empty()) {
    throw GrammarError(0, "empty link; a link needs at least 'S Wires S'");
  }
  const int family = tokens.front().sub.width_class;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.sub.clock_buffered && t.kind != BlockKind::W) {
      throw SubtypeError(i, fmt::format(".cb sub-type on kind {}",
                                        kindChar(t.kind)));
    }
    if (t.sub.width_class < 1) {
      throw SubtypeError(i, "width class must be >= 1");
    }
    if (i == 0 && t.kind != BlockKind::S) {
      throw GrammarError(i, "link must start with S");
    }
    if (i > 0 && t.kind == BlockKind::S
        && tokens[i - 1].kind == BlockKind::S) {
      throw GrammarError(i, "S follows S with no wire block in between");
    }
    if (t.sub.width_class != family) {
      throw GrammarError(
          i, fmt::format("width class {} cannot abut family {}",
                         t.sub.width_class, family));
    }
  }
  if (tokens.size() == 1) {
    throw GrammarError(1, "link must end with a second S after wires");
  }
  if (tokens.back().kind != BlockKind::S) {
    throw GrammarError(tokens.size() - 1, "link must end with S");
  }
}

LinkSentence LinkSentence::fromTokens(std::vector<Token> tokens)
{
  checkLinkTokens(tokens);
  return LinkSentence(std::move(tokens));
}

namespace {

Token lexToken(std::string_view word, std::size_t pos)
{
  const auto kind = word.empty() ? std::nullopt : kindFromChar(word[0]);
  if (!kind) {
    throw LexError(pos, "unknown token '" + std::string(word) + "'");
  }
  Token t{*kind, {}};
  std::string_view rest = word.substr(1);
  bool saw_cb = false;
  bool saw_width = false;
  while (!rest.empty()) {
    if (rest.substr(0, 3) == ".cb" && (rest.size() == 3 || rest[3] == '.')
        && !saw_cb) {
      if (*kind != BlockKind::W) {
        throw SubtypeError(pos, fmt::format(".cb sub-type on kind {}",
                                            kindChar(*kind)));
      }
      t.sub.clock_buffered = true;
      saw_cb = true;
      rest.remove_prefix(3);
      continue;
    }
    if (rest.substr(0, 2) == ".w" && !saw_width) {
      auto end = rest.find('.', 2);
      long w = 0;
      if (!parseInt(rest.substr(2, end == std::string_view::npos
                                       ? std::string_view::npos
                                       : end - 2),
                    w)
          || w < 1 || w > 1000) {
        throw LexError(pos, "bad width class in '" + std::string(word) + "'");
      }
      t.sub.width_class = static_cast<int>(w);
      saw_width = true;
      rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
      continue;
    }
    throw LexError(pos, "unknown token '" + std::string(word) + "'");
  }
  return t;
}

}  // namespace

LinkSentence parseLink(std::string_view text)
{
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = stripComment(text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    for (auto word : splitWs(line)) {
      tokens.push_back(lexToken(word, tokens.size()));
    }
  }
  return LinkSentence::fromTokens(std::move(tokens));
}

LinkSentence parseLinkFile(const std::string& path)
{
  return parseLink(readFile(path));
}

std::string serializeTokens(std::span<const Token> tokens)
{
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) {
      out += ' ';
    }
    out += tokenText(tokens[i]);
  }
  return out;
}

std::string serializeLink(const LinkSentence& link)
{
  return serializeTokens(link.span());
}

std::uint64_t linkDigest(const LinkSentence& link)
{
  return fnv1a64(serializeLink(link));
}

std::vector<Segment> segmentDecompose(std::span<const Token> tokens)
{
  std::vector<Segment> segs;
  if (tokens.empty()) {
    return segs;
  }
  std::size_t src = 0;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (!isActive(tokens[i].kind)) {
      continue;
    }
    segs.push_back(Segment{tokens[src].kind, tokens[i].kind,
                           static_cast<int>(i - src - 1), src, i});
    src = i;
  }
  return segs;
}

}  // namespace gnoc
