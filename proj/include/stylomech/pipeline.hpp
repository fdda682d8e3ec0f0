#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stylomech/dataset.hpp"
#include "stylomech/eval.hpp"
#include "stylomech/forest.hpp"
#include "stylomech/stylo_rs.hpp"
#include "stylomech/text.hpp"

namespace stylomech {

/// Settings shared by the CLI subcommands. Every field has a key in the
/// key=value config format; the key is the field name except where noted.
struct Config {
  LanguageMode mode = LanguageMode::English;        // mode = english | rs
  std::string lexicon;                              // RS word list; builtin when empty
  std::string en_lexicon;                           // English word list for RS mode
  std::string resources;                            // directory with English tagger data
  std::size_t target_words = 80;                    // RS chunk size
  ForestParams forest;                              // trees, max_depth, min_samples_leaf, mtry, bootstrap
  double threshold = kDefaultThreshold;
  double variance_threshold = kDefaultVarianceThreshold;
  std::uint64_t seed = 0;
  std::size_t n_same = 400;
  std::size_t n_diff = 400;
  double train_fraction = 0.8;
  bool stratified = true;
  std::size_t threads = 1;
};

/// Sets one key. Throws Error(ParseError) naming the key for an unknown
/// key or a malformed value.
void apply_setting(Config& config, std::string_view key, std::string_view value);

/// key=value lines; `#` starts a comment; blank lines ignored. Errors carry
/// the line number and the key.
void apply_config_text(Config& config, std::string_view text);
void apply_config_file(Config& config, const std::string& path);

/// The RS lexicon named by the config, or the builtin one.
RsLexicon lexicon_for(const Config& config);

/// English tagger data named by the config, or the builtin copy.
EnglishResources resources_for(const Config& config);

/// Predicts every row of `test` (projected onto the model's features) and
/// tallies against the labels.
ConfusionMatrix evaluate(const Forest& forest, const PairDataset& test, double threshold = kDefaultThreshold);

struct ExperimentResult {
  PairDataset dataset;  // after dedupe and the variance filter
  VarianceReport variance;
  Forest forest;
  ConfusionMatrix confusion;
  ClassificationReport report;
  std::string dataset_csv;
  std::string model_text;
  std::string report_text;
};

/// Pairs -> dedupe -> variance filter -> split -> train -> evaluate. Pairs
/// use `seed`, the split mix(seed, 1), the forest mix(seed, 2).
ExperimentResult run_experiment(const std::vector<RawDocument>& corpus, const Config& config);

}  // namespace stylomech
