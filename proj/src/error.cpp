#include "stylomech/error.hpp"

#include <fmt/format.h>

namespace stylomech {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NoClassifiableWords: return "NoClassifiableWords";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::ModeMismatch: return "ModeMismatch";
    case Errc::MissingLexicon: return "MissingLexicon";
    case Errc::InsufficientCorpus: return "InsufficientCorpus";
    case Errc::TooFewRows: return "TooFewRows";
    case Errc::EmptySamples: return "EmptySamples";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::EmptyMatrix: return "EmptyMatrix";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::LexiconError: return "LexiconError";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::FormatError: return "FormatError";
    case Errc::VersionError: return "VersionError";
  }
  return "Unknown";
}

namespace {
std::string compose(Errc code, const std::string& what, std::optional<std::size_t> line) {
  if (line) return fmt::format("{}: line {}: {}", to_string(code), *line, what);
  return fmt::format("{}: {}", to_string(code), what);
}
}  // namespace

Error::Error(Errc code, const std::string& what, std::optional<std::size_t> line)
    : std::runtime_error(compose(code, what, line)), code_(code), detail_(what), line_(line) {}

}  // namespace stylomech
