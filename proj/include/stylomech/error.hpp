#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stylomech {

enum class Errc {
  EmptyInput,
  NoClassifiableWords,
  LengthMismatch,
  EmptyGraph,
  ModeMismatch,
  MissingLexicon,
  InsufficientCorpus,
  TooFewRows,
  EmptySamples,
  EmptyDataset,
  SchemaMismatch,
  EmptyMatrix,
  InvalidParams,
  LexiconError,
  IoError,
  ParseError,
  SchemaError,
  FormatError,
  VersionError,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library. `code()` identifies the condition;
/// parse-style errors also carry the 1-based line they refer to.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::size_t> line = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  /// The message without the code and line prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
  std::optional<std::size_t> line_;
};

}  // namespace stylomech
