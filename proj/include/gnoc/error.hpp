// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026, The gnoc Authors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gnoc {

/// Root of every error raised by the library. `code()` is the stable,
/// machine-readable name (e.g. "GrammarError") used in logs and reports.
class Error : public std::runtime_error
{
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code))
  {
  }
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// techlib
class ParseError : public Error
{
 public:
  ParseError(int line, const std::string& what)
      : Error("ParseError", "line " + std::to_string(line) + ": " + what),
        line_(line)
  {
  }
  int line() const { return line_; }

 private:
  int line_;
};

class InvalidValue : public Error
{
 public:
  explicit InvalidValue(const std::string& what) : Error("InvalidValue", what)
  {
  }
};

class MissingKey : public Error
{
 public:
  explicit MissingKey(const std::string& key)
      : Error("MissingKey", "required key '" + key + "' absent"), key_(key)
  {
  }
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class UnknownSubtype : public Error
{
 public:
  explicit UnknownSubtype(const std::string& what)
      : Error("UnknownSubtype", what)
  {
  }
};

// grammar. Each carries the zero-based token position of the first offence.
class LinkError : public Error
{
 public:
  LinkError(std::string code, std::size_t position, const std::string& what)
      : Error(std::move(code),
              "token " + std::to_string(position) + ": " + what),
        position_(position)
  {
  }
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class LexError : public LinkError
{
 public:
  LexError(std::size_t pos, const std::string& what)
      : LinkError("LexError", pos, what)
  {
  }
};

class GrammarError : public LinkError
{
 public:
  GrammarError(std::size_t pos, const std::string& what)
      : LinkError("GrammarError", pos, what)
  {
  }
};

class SubtypeError : public LinkError
{
 public:
  SubtypeError(std::size_t pos, const std::string& what)
      : LinkError("SubtypeError", pos, what)
  {
  }
};

// characterize
class FormatError : public Error
{
 public:
  explicit FormatError(const std::string& what) : Error("FormatError", what)
  {
  }
};

class DigestMismatch : public Error
{
 public:
  explicit DigestMismatch(const std::string& what)
      : Error("DigestMismatch", what)
  {
  }
};

class MonotonicityError : public Error
{
 public:
  explicit MonotonicityError(const std::string& what,
                             std::string code = "MonotonicityError")
      : Error(std::move(code), what)
  {
  }
};

/// MIN corner delay above MAX corner delay in a stored cell.
class CornerOrderError : public MonotonicityError
{
 public:
  explicit CornerOrderError(const std::string& what)
      : MonotonicityError(what, "CornerOrderError")
  {
  }
};

/// Table lookup failures. `segment()` is filled in by the analyzer when the
/// lookup happened on behalf of a link segment, otherwise -1.
class LookupError : public Error
{
 public:
  LookupError(std::string code, const std::string& what, long segment = -1)
      : Error(std::move(code),
              segment < 0 ? what
                          : "segment " + std::to_string(segment) + ": " + what),
        segment_(segment)
  {
  }
  long segment() const { return segment_; }

 private:
  long segment_;
};

class TableMismatch : public Error
{
 public:
  explicit TableMismatch(const std::string& what)
      : Error("TableMismatch", what)
  {
  }
};

// synthesize
class ClockUnsatisfiable : public Error
{
 public:
  explicit ClockUnsatisfiable(const std::string& what)
      : Error("ClockUnsatisfiable", what)
  {
  }
};

// dse
class NoValidCandidate : public Error
{
 public:
  explicit NoValidCandidate(const std::string& what)
      : Error("NoValidCandidate", what)
  {
  }
};

}  // namespace gnoc
