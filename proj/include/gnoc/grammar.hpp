// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gnoc/techlib.hpp"

namespace gnoc {

struct Token
{
  BlockKind kind = BlockKind::W;
  SubtypeTag sub;

  bool operator==(const Token&) const = default;

  /// True for every token that carries a clock buffer: B, R, S and W.cb.
  bool clockBuffered() const
  {
    return isActive(kind) || sub.clock_buffered;
  }
};

constexpr Token plainW()
{
  return Token{BlockKind::W, {}};
}
constexpr Token cbW()
{
  return Token{BlockKind::W, {true, 1}};
}
constexpr Token token(BlockKind k)
{
  return Token{k, {}};
}

/// Text form of one token, e.g. "W", "W.cb", "B.w2".
std::string tokenText(const Token& t);

/// A GNoC link: S Wires (S Wires)* S with Wires = {W,B,R}+, all tokens in one
/// wire family. Instances are always valid; construct through parseLink or
/// LinkSentence::fromTokens.
class LinkSentence
{
 public:
  /// Throws GrammarError/SubtypeError naming the first offending position.
  static LinkSentence fromTokens(std::vector<Token> tokens);

  const std::vector<Token>& tokens() const { return tokens_; }
  std::span<const Token> span() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  const Token& operator[](std::size_t i) const { return tokens_[i]; }

  bool operator==(const LinkSentence&) const = default;

 private:
  explicit LinkSentence(std::vector<Token> t) : tokens_(std::move(t)) {}
  std::vector<Token> tokens_;
};

/// Grammar and valid-neighbour check without constructing a sentence.
void checkLinkTokens(std::span<const Token> tokens);

LinkSentence parseLink(std::string_view text);
LinkSentence parseLinkFile(const std::string& path);

/// Canonical single-line form: single spaces, no trailing whitespace, no
/// newline (link files add one).
std::string serializeLink(const LinkSentence& link);
std::string serializeTokens(std::span<const Token> tokens);

std::uint64_t linkDigest(const LinkSentence& link);

struct Segment
{
  BlockKind src_kind;
  BlockKind dst_kind;
  int n_wires;
  std::size_t src_index;
  std::size_t dst_index;

  bool operator==(const Segment&) const = default;
};

/// Splits a token run at every active token. The run must start and end on
/// active tokens; only W lies strictly inside a segment.
std::vector<Segment> segmentDecompose(std::span<const Token> tokens);

inline std::vector<Segment> segmentDecompose(const LinkSentence& link)
{
  return segmentDecompose(link.span());
}

}  // namespace gnoc
