#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "stylomech/assets.hpp"
#include "stylomech/dataset.hpp"
#include "stylomech/error.hpp"
#include "stylomech/eval.hpp"
#include "stylomech/forest.hpp"
#include "stylomech/pairwise.hpp"
#include "stylomech/pipeline.hpp"
#include "stylomech/stylo_en.hpp"
#include "stylomech/stylo_rs.hpp"
#include "stylomech/synthgen.hpp"
#include "stylomech/text.hpp"

namespace stylomech::cli {

namespace {

// Flags that map onto Config keys. A flag given on the command line wins
// over the same key in --config.
constexpr std::pair<const char*, const char*> kConfigFlags[] = {
    {"--mode", "mode"},
    {"--lexicon", "lexicon"},
    {"--en-lexicon", "en_lexicon"},
    {"--resources", "resources"},
    {"--seed", "seed"},
    {"--threshold", "threshold"},
    {"--variance-threshold", "variance_threshold"},
    {"--trees", "trees"},
    {"--max-depth", "max_depth"},
    {"--min-samples-leaf", "min_samples_leaf"},
    {"--mtry", "mtry"},
    {"--bootstrap", "bootstrap"},
    {"--target-words", "target_words"},
    {"--n-same", "n_same"},
    {"--n-diff", "n_diff"},
    {"--train-fraction", "train_fraction"},
    {"--threads", "threads"},
};

struct Command {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
  std::string out_path;
  CLI::Option* config_option = nullptr;
  CLI::Option* out_option = nullptr;

  Config config() const {
    Config c;
    if (config_option && config_option->count() > 0) apply_config_file(c, config_path);
    for (const auto& [key, option] : options) {
      if (option->count() > 0) apply_setting(c, key, values.at(key));
    }
    return c;
  }

  bool has_out() const { return out_option && out_option->count() > 0; }
};

Command& add_command(CLI::App& app, std::vector<std::unique_ptr<Command>>& commands, const char* name,
                     const char* description, bool out_required = false) {
  auto& cmd = *commands.emplace_back(std::make_unique<Command>());
  cmd.app = app.add_subcommand(name, description);
  for (const auto& [flag, key] : kConfigFlags) {
    cmd.options[key] = cmd.app->add_option(flag, cmd.values[key], std::string("config key ") + key);
  }
  cmd.config_option = cmd.app->add_option("--config", cmd.config_path, "key=value settings file")->check(
      CLI::ExistingFile);
  cmd.out_option = cmd.app->add_option("--out", cmd.out_path, "output path");
  if (out_required) cmd.out_option->required();
  return cmd;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot write " + path);
  f << text;
  if (!f) throw Error(Errc::IoError, "failed writing " + path);
}

/// Prints `text`, and also writes it to --out when given.
void emit(const Command& cmd, std::ostream& out, const std::string& text) {
  out << text;
  if (cmd.has_out()) write_text_file(cmd.out_path, text);
}

StyleProfile profile_file(const std::string& path, const Config& config, const EnglishResources& res) {
  const auto text = clean(assets::read_file(path));
  if (config.mode == LanguageMode::English) return StyleProfile::from_english(english_profile(text, res));
  const auto tokens = tokenize(text);
  auto chunks = chunk(tokens, config.target_words, path);
  return StyleProfile::from_chunk(std::move(chunks.front()));
}

std::string record_text(const SimilarityRecord& r) {
  std::string out;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    out += fmt::format("{}={}\n", r.feature_names[i], r.values[i]);
  }
  return out;
}

std::string variance_text(const VarianceReport& v) {
  std::string out;
  for (const auto& [name, var] : v.variance) {
    const bool dropped = std::find(v.dropped.begin(), v.dropped.end(), name) != v.dropped.end();
    out += fmt::format("variance {} {:.6g}{}\n", name, var, dropped ? " dropped" : "");
  }
  return out;
}

ConfusionMatrix parse_matrix(const std::string& text) {
  std::vector<std::uint64_t> cells;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || cell.empty()) {
      throw CLI::ValidationError("--matrix", "expected four non-negative integers, got '" + cell + "'");
    }
    cells.push_back(v);
  }
  if (cells.size() != 4) throw CLI::ValidationError("--matrix", "expected four comma-separated counts");
  ConfusionMatrix cm;
  cm.counts = {{{cells[0], cells[1]}, {cells[2], cells[3]}}};
  return cm;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Pairwise authorship verification for English and Romanized Sinhala text.", "stylomech");
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Command>> commands;

  std::string input_a;
  std::string input_b;

  auto& clean_cmd = add_command(app, commands, "clean", "strip emoji, URLs and media placeholders from a text file");
  clean_cmd.app->add_option("file", input_a, "text file")->required();

  auto& profile_cmd = add_command(app, commands, "profile", "print the stylometric profile of a text file");
  profile_cmd.app->add_option("file", input_a, "text file")->required();

  auto& compare_cmd = add_command(app, commands, "compare", "print the similarity record of two text files");
  compare_cmd.app->add_option("a", input_a, "first text file")->required();
  compare_cmd.app->add_option("b", input_b, "second text file")->required();

  std::string corpus_dir;
  bool no_filter = false;
  auto& build_cmd = add_command(app, commands, "build-dataset", "build a labeled pair dataset CSV from a corpus", true);
  build_cmd.app->add_option("--corpus", corpus_dir, "corpus root (<author>/<doc>.txt)")->required();
  build_cmd.app->add_flag("--no-filter", no_filter, "keep low-variance columns");

  std::string data_path;
  auto& train_cmd = add_command(app, commands, "train", "train a forest on a dataset CSV", true);
  train_cmd.app->add_option("--data", data_path, "dataset CSV")->required();

  std::string model_path;
  auto& eval_cmd = add_command(app, commands, "evaluate", "classification report of a model on a dataset CSV");
  eval_cmd.app->add_option("--model", model_path, "model file")->required();
  eval_cmd.app->add_option("--data", data_path, "dataset CSV")->required();

  auto& verify_cmd = add_command(app, commands, "verify", "score whether two texts share an author");
  verify_cmd.app->add_option("--model", model_path, "model file")->required();
  verify_cmd.app->add_option("a", input_a, "known text")->required();
  verify_cmd.app->add_option("b", input_b, "questioned text")->required();

  CorpusSpec spec;
  auto& synth_cmd = add_command(app, commands, "synth", "write a synthetic author corpus", true);
  synth_cmd.app->add_option("--authors", spec.n_authors, "number of authors")->capture_default_str();
  synth_cmd.app->add_option("--docs", spec.docs_per_author, "documents per author")->capture_default_str();
  synth_cmd.app->add_option("--words", spec.words_per_doc, "words per document")->capture_default_str();
  synth_cmd.app->add_option("--spread", spec.spread, "style spread between authors")->capture_default_str();

  std::string matrix;
  auto& report_cmd = add_command(app, commands, "report", "classification report of a confusion matrix");
  report_cmd.app->add_option("--matrix", matrix, "counts tn,fp,fn,tp (rows are true labels 0, 1)")->required();

  try {
    std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(reversed.begin(), reversed.end());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (clean_cmd.app->parsed()) {
      emit(clean_cmd, out, clean(assets::read_file(input_a)) + "\n");
    } else if (profile_cmd.app->parsed()) {
      const auto config = profile_cmd.config();
      const auto res = resources_for(config);
      std::ostringstream text;
      if (config.mode == LanguageMode::English) {
        write_profile(text, english_profile(clean(assets::read_file(input_a)), res));
      } else {
        const auto lexicon = lexicon_for(config);
        const auto chunk_ = as_chunk(clean(assets::read_file(input_a)), input_a);
        text << "en_si_ratio\t" << fmt::format("{}", en_si_ratio(chunk_, lexicon)) << '\n';
        for (const auto& t : chunk_.tokens) {
          if (t.kind == TokenKind::Word) {
            text << "word\t" << fold_case(t.text) << '\t' << to_string(classify_word(t.text, lexicon)) << '\n';
          }
        }
      }
      emit(profile_cmd, out, text.str());
    } else if (compare_cmd.app->parsed()) {
      const auto config = compare_cmd.config();
      const auto res = resources_for(config);
      const auto lexicon = lexicon_for(config);
      const auto record =
          compare_profiles(profile_file(input_a, config, res), profile_file(input_b, config, res), &lexicon);
      emit(compare_cmd, out, record_text(record));
    } else if (build_cmd.app->parsed()) {
      const auto config = build_cmd.config();
      const auto res = resources_for(config);
      const auto lexicon = lexicon_for(config);
      PairOptions options;
      options.mode = config.mode;
      options.lexicon = &lexicon;
      options.resources = &res;
      options.target_words = config.target_words;
      options.threads = config.threads;
      auto ds = dedupe(build_pairs(load_corpus(corpus_dir, config.mode), config.n_same, config.n_diff, config.seed,
                                   options));
      if (!no_filter) {
        auto [filtered, variance] = variance_filter(ds, config.variance_threshold);
        out << variance_text(variance);
        ds = std::move(filtered);
      }
      write_csv(ds, build_cmd.out_path);
      out << fmt::format("rows={} features={}\n", ds.size(), ds.feature_names.size());
    } else if (train_cmd.app->parsed()) {
      const auto config = train_cmd.config();
      auto params = config.forest;
      params.seed = config.seed;
      const auto forest = train_forest(read_csv(data_path), params, config.threads);
      save_model(forest, train_cmd.out_path);
      out << fmt::format("trees={}", forest.trees.size());
      if (forest.oob_error) out << fmt::format(" oob_error={:.4f}", *forest.oob_error);
      out << '\n';
      for (const auto& [name, value] : feature_importance(forest)) {
        out << fmt::format("importance {} {:.4f}\n", name, value);
      }
    } else if (eval_cmd.app->parsed()) {
      const auto config = eval_cmd.config();
      const auto forest = load_model(model_path);
      emit(eval_cmd, out, format_report(report(evaluate(forest, read_csv(data_path), config.threshold))));
    } else if (verify_cmd.app->parsed()) {
      const auto config = verify_cmd.config();
      const auto res = resources_for(config);
      const auto lexicon = lexicon_for(config);
      const auto forest = load_model(model_path);
      const auto record =
          compare_profiles(profile_file(input_a, config, res), profile_file(input_b, config, res), &lexicon);
      const double score = predict(forest, project(record, forest.feature_names));
      emit(verify_cmd, out,
           fmt::format("score={:.4f} label={} threshold={}\n", score, classify(score, config.threshold),
                       config.threshold));
    } else if (synth_cmd.app->parsed()) {
      const auto config = synth_cmd.config();
      spec.seed = config.seed;
      spec.rs_mode = config.mode == LanguageMode::RomanizedSinhala;
      const auto corpus = gen_corpus(spec, config.threads);
      write_corpus(corpus, synth_cmd.out_path);
      out << fmt::format("authors={} documents={}\n", corpus.authors.size(),
                         corpus.authors.size() * spec.docs_per_author);
    } else if (report_cmd.app->parsed()) {
      emit(report_cmd, out, format_report(report(parse_matrix(matrix))));
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace stylomech::cli
