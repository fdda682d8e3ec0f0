#include "stylomech/pipeline.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <tuple>

#include "numeric_text.hpp"
#include "stylomech/assets.hpp"
#include "stylomech/error.hpp"
#include "stylomech/random.hpp"

namespace stylomech {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw Error(Errc::ParseError,
              "key '" + std::string(key) + "': expected " + std::string(expected) + ", got '" + std::string(value) + "'");
}

template <class Int>
Int to_int(std::string_view key, std::string_view value, bool positive) {
  const auto v = numeric_text::parse_int<Int>(value);
  if (!v || (positive && *v == 0)) bad_value(key, value, positive ? "a positive integer" : "a non-negative integer");
  return *v;
}

double to_real(std::string_view key, std::string_view value) {
  const auto v = numeric_text::parse_double(value);
  if (!v || !std::isfinite(*v)) bad_value(key, value, "a number");
  return *v;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  bad_value(key, value, "true or false");
}

}  // namespace

void apply_setting(Config& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "mode") {
    const auto m = parse_language_mode(value);
    if (!m) bad_value(key, value, "english or rs");
    c.mode = *m;
  } else if (key == "lexicon") {
    c.lexicon = value;
  } else if (key == "en_lexicon") {
    c.en_lexicon = value;
  } else if (key == "resources") {
    c.resources = value;
  } else if (key == "target_words") {
    c.target_words = to_int<std::size_t>(key, value, true);
  } else if (key == "trees") {
    c.forest.n_trees = to_int<std::size_t>(key, value, true);
  } else if (key == "max_depth") {
    c.forest.max_depth = to_int<std::size_t>(key, value, true);
  } else if (key == "min_samples_leaf") {
    c.forest.min_samples_leaf = to_int<std::size_t>(key, value, true);
  } else if (key == "mtry") {
    c.forest.mtry = to_int<std::size_t>(key, value, false);
  } else if (key == "bootstrap") {
    c.forest.bootstrap = to_bool(key, value);
  } else if (key == "threshold") {
    c.threshold = to_real(key, value);
  } else if (key == "variance_threshold") {
    c.variance_threshold = to_real(key, value);
    if (c.variance_threshold < 0.0) bad_value(key, value, "a non-negative number");
  } else if (key == "seed") {
    c.seed = to_int<std::uint64_t>(key, value, false);
  } else if (key == "n_same") {
    c.n_same = to_int<std::size_t>(key, value, false);
  } else if (key == "n_diff") {
    c.n_diff = to_int<std::size_t>(key, value, false);
  } else if (key == "train_fraction") {
    c.train_fraction = to_real(key, value);
    if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) bad_value(key, value, "a number in (0, 1)");
  } else if (key == "stratified") {
    c.stratified = to_bool(key, value);
  } else if (key == "threads") {
    c.threads = to_int<std::size_t>(key, value, true);
  } else {
    throw Error(Errc::ParseError, "unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(Config& config, std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::ParseError, "expected key=value, got '" + std::string(line) + "'", line_no);
    }
    const auto key = trim(line.substr(0, eq));
    try {
      apply_setting(config, key, line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(Errc::ParseError, e.detail(), line_no);
    }
  }
}

void apply_config_file(Config& config, const std::string& path) {
  apply_config_text(config, assets::read_file(path));
}

RsLexicon lexicon_for(const Config& config) {
  if (config.lexicon.empty()) return RsLexicon::builtin();
  return RsLexicon::from_files(config.lexicon, config.en_lexicon);
}

EnglishResources resources_for(const Config& config) {
  if (config.resources.empty()) return EnglishResources::builtin();
  return EnglishResources::from_directory(config.resources);
}

ConfusionMatrix evaluate(const Forest& forest, const PairDataset& test, double threshold) {
  std::vector<int> preds;
  std::vector<int> labels;
  for (const auto& row : test.rows) {
    if (!row.label) throw Error(Errc::SchemaError, "evaluate: test row without label");
    const auto score = row.feature_names == forest.feature_names ? forest.predict(row.values)
                                                                 : predict(forest, project(row, forest.feature_names));
    preds.push_back(classify(score, threshold));
    labels.push_back(*row.label);
  }
  return confusion(preds, labels);
}

ExperimentResult run_experiment(const std::vector<RawDocument>& corpus, const Config& config) {
  const auto lexicon = config.mode == LanguageMode::RomanizedSinhala ? std::optional<RsLexicon>(lexicon_for(config))
                                                                     : std::nullopt;
  const auto resources = resources_for(config);
  PairOptions options;
  options.mode = config.mode;
  options.lexicon = lexicon ? &*lexicon : nullptr;
  options.resources = &resources;
  options.target_words = config.target_words;
  options.threads = config.threads;

  ExperimentResult r;
  auto pairs = dedupe(build_pairs(corpus, config.n_same, config.n_diff, config.seed, options));
  std::tie(r.dataset, r.variance) = variance_filter(pairs, config.variance_threshold);
  if (r.dataset.feature_names.empty()) {
    throw Error(Errc::InsufficientCorpus, "every feature column fell below the variance threshold");
  }
  const auto [train, test] =
      split(r.dataset, SplitOptions{config.train_fraction, mix(config.seed, 1), config.stratified});
  auto params = config.forest;
  params.seed = mix(config.seed, 2);
  r.forest = train_forest(train, params, config.threads);
  r.confusion = evaluate(r.forest, test, config.threshold);
  r.report = report(r.confusion);

  std::ostringstream csv;
  write_csv(r.dataset, csv);
  r.dataset_csv = csv.str();
  std::ostringstream model;
  save_model(r.forest, model);
  r.model_text = model.str();
  r.report_text = format_report(r.report);
  return r;
}

}  // namespace stylomech
