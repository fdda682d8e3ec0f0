#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stylomech/pairwise.hpp"
#include "stylomech/text.hpp"

namespace stylomech {

/// Labeled pair records sharing one column layout. `provenance[i]` names
/// the two documents behind row i; it may be empty (e.g. a CSV read
/// without its sidecar).
struct PairDataset {
  std::vector<std::string> feature_names;
  std::vector<SimilarityRecord> rows;
  std::vector<std::pair<std::string, std::string>> provenance;

  std::size_t size() const { return rows.size(); }
  bool operator==(const PairDataset&) const = default;
};

struct VarianceReport {
  std::map<std::string, double> variance;  // population variance per column
  std::vector<std::string> dropped;        // in column order
  double threshold = 0.05;
};

/// Default minimum column variance for a feature to be kept.
inline constexpr double kDefaultVarianceThreshold = 0.05;

struct PairOptions {
  LanguageMode mode = LanguageMode::English;
  /// Required in RS mode; builtin lexicon when null.
  const RsLexicon* lexicon = nullptr;
  const EnglishResources* resources = nullptr;  // builtin when null
  CleanPolicy clean;
  /// RS mode: documents are split into chunks of this many words, and each
  /// chunk is one pairing unit. Trailing chunks under half the target are
  /// dropped when the document has a full chunk.
  std::size_t target_words = 80;
  std::size_t threads = 1;
};

/// One pairing unit: a whole document (English) or one chunk (RS).
struct ProfiledUnit {
  std::string id;
  std::string author;
  StyleProfile profile;
};

/// Cleans and profiles every document. Documents without an author or too
/// short to profile are skipped with a warning.
std::vector<ProfiledUnit> profile_corpus(const std::vector<RawDocument>& corpus, const PairOptions& options);

/// Draws `n_same` same-author pairs (label 1) and `n_diff` cross-author
/// pairs (label 0) uniformly without replacement from all unordered pairs
/// of distinct units, seeded and deterministic. Same-author rows come first.
/// Throws Error(InsufficientCorpus) when either pair space is too small.
PairDataset build_pairs(const std::vector<ProfiledUnit>& units, std::size_t n_same, std::size_t n_diff,
                        std::uint64_t seed, const PairOptions& options);

PairDataset build_pairs(const std::vector<RawDocument>& corpus, std::size_t n_same, std::size_t n_diff,
                        std::uint64_t seed, const PairOptions& options);

/// Drops rows whose (values, label) repeat an earlier row. Rows with equal
/// values but different labels are all kept and reported as a warning.
PairDataset dedupe(const PairDataset& ds);

/// Removes columns whose population variance is below `threshold`.
/// Throws Error(TooFewRows) for fewer than two rows.
std::pair<PairDataset, VarianceReport> variance_filter(const PairDataset& ds,
                                                       double threshold = kDefaultVarianceThreshold);

/// Population variance of column `column`.
double column_variance(const PairDataset& ds, std::size_t column);

/// CSV: header of feature names then `label`; one row per record with
/// shortest round-trip decimals. Rows must carry labels.
void write_csv(const PairDataset& ds, std::ostream& out);
PairDataset read_csv(std::istream& in);

/// File variants. `write_csv` also writes the provenance sidecar
/// (`<name>.prov.tsv`: row_index TAB doc_a TAB doc_b) when the dataset has
/// provenance; `read_csv` loads it when present.
void write_csv(const PairDataset& ds, const std::string& path);
PairDataset read_csv(const std::string& path);

/// "dir/name.csv" -> "dir/name.prov.tsv".
std::string provenance_path(const std::string& csv_path);

}  // namespace stylomech
