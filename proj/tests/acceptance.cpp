// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "oracles.hpp"
#include "stylomech/dataset.hpp"
#include "stylomech/eval.hpp"
#include "stylomech/forest.hpp"
#include "stylomech/log.hpp"
#include "stylomech/pipeline.hpp"
#include "stylomech/random.hpp"
#include "stylomech/stylo_rs.hpp"
#include "stylomech/synthgen.hpp"

using namespace stylomech;

namespace {

// Generator spreads for the synthetic end-to-end runs.
constexpr double kEnglishSpread = 1.0;
constexpr double kRsSpread = 1.0;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<std::string> words_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

/// Finds the report line whose label is `label` and returns its numeric
/// cells.
std::vector<std::string> report_cells(const std::string& text, const std::string& label) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto pos = line.find_first_not_of(' ');
    if (pos != std::string::npos && line.compare(pos, label.size(), label) == 0 &&
        (pos + label.size() == line.size() || line[pos + label.size()] == ' ')) {
      return words_of(line.substr(pos + label.size()));
    }
  }
  return {};
}

Outcome criterion_reference_reports() {
  struct Case {
    ConfusionMatrix cm;
    std::vector<std::string> row0, row1, accuracy;
  };
  const Case cases[] = {
      {{{{{63, 25}, {26, 55}}}}, {"0.71", "0.72", "0.71", "88"}, {"0.69", "0.68", "0.68", "81"}, {"0.70", "169"}},
      {{{{{54, 2}, {9, 16}}}}, {"0.86", "0.96", "0.91", "56"}, {"0.89", "0.64", "0.74", "25"}, {"0.86", "81"}},
  };
  Outcome o;
  for (const auto& c : cases) {
    const auto text = format_report(report(c.cm));
    const auto r0 = report_cells(text, "0");
    const auto r1 = report_cells(text, "1");
    const auto acc = report_cells(text, "accuracy");
    if (r0 != c.row0 || r1 != c.row1 || acc != c.accuracy) {
      o.pass = false;
      o.detail += "mismatch:\n" + text;
    }
  }
  if (o.pass) o.detail = "both reference reports reproduced cell for cell";
  return o;
}

Outcome criterion_levenshtein() {
  Rng rng(kSeed);
  const char32_t alphabet[] = {U'a', U'b', U'c', U'd', U'w', U'h', U'é', U'අ'};
  auto random_string = [&] {
    std::vector<char32_t> s(rng.index(31));
    for (auto& c : s) c = alphabet[rng.index(std::size(alphabet))];
    return s;
  };
  Outcome o;
  std::size_t mismatches = 0;
  std::size_t violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_string();
    const auto b = random_string();
    const auto c = random_string();
    const auto sa = oracle::utf8(a);
    const auto sb = oracle::utf8(b);
    const auto sc = oracle::utf8(c);
    const auto d = levenshtein(sa, sb);
    if (d != oracle::edit_distance(a, b)) ++mismatches;
    const auto lo = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    if (d != levenshtein(sb, sa) || d > levenshtein(sa, sc) + levenshtein(sc, sb) || d < lo ||
        d > std::max(a.size(), b.size()) || (d == 0) != (a == b)) {
      ++violations;
    }
  }
  o.pass = mismatches == 0 && violations == 0;
  o.detail = fmt::format("1000 pairs, {} oracle mismatches, {} metric violations", mismatches, violations);
  return o;
}

Outcome criterion_reference_chunks() {
  const auto a = as_chunk(" warthamana janapathithuma wides sancharayak sadaha ada dina indiawa bala pitath uni ");
  const auto b = as_chunk(" wrthmna jnaphithuma widhes sncharyk sadha ada dina indiwa bala pitath wuni ");
  const auto f = rs_pair_features(a, b, RsLexicon::builtin());
  Outcome o;
  o.pass = f.aligned_count == 11 && f.total_edit_distance >= 11 && f.total_edit_distance <= 14;
  o.detail = fmt::format("aligned_count={} total_edit_distance={} (reference aggregate 12)", f.aligned_count,
                         f.total_edit_distance);
  return o;
}

Outcome criterion_variance_filter() {
  PairDataset ds;
  ds.feature_names = {"constant", "alternating", "low"};
  for (int i = 0; i < 10; ++i) {
    SimilarityRecord r;
    r.feature_names = ds.feature_names;
    r.values = {3.0, static_cast<double>(i % 2), i % 2 == 0 ? 0.2 : -0.2};
    r.label = i % 2;
    ds.rows.push_back(r);
  }
  const auto [filtered, variance] = variance_filter(ds, 0.05);
  Outcome o;
  o.pass = variance.dropped == std::vector<std::string>{"constant", "low"} &&
           filtered.feature_names == std::vector<std::string>{"alternating"};
  o.detail = fmt::format("variances {:.4g}/{:.4g}/{:.4g}, dropped {}", variance.variance.at("constant"),
                         variance.variance.at("alternating"), variance.variance.at("low"),
                         fmt::format("{}", fmt::join(variance.dropped, ",")));
  return o;
}

struct RunSpec {
  bool rs = false;
  double spread = 1.0;
  std::size_t threads = 1;
};

ExperimentResult synthetic_run(const RunSpec& spec) {
  CorpusSpec corpus;
  corpus.n_authors = 40;
  corpus.docs_per_author = 6;
  corpus.words_per_doc = spec.rs ? 80 : 300;
  corpus.spread = spec.spread;
  corpus.seed = kSeed;
  corpus.rs_mode = spec.rs;
  Config config;
  config.mode = spec.rs ? LanguageMode::RomanizedSinhala : LanguageMode::English;
  config.seed = kSeed;
  config.threads = spec.threads;
  config.n_same = 400;
  config.n_diff = 400;
  config.target_words = 80;
  return run_experiment(gen_corpus(corpus, spec.threads).documents(), config);
}

std::vector<ExperimentResult> g_runs;  // English, RS from criterion 5, reused by 6

Outcome criterion_end_to_end() {
  const auto en = synthetic_run({false, kEnglishSpread, 1});
  const auto rs = synthetic_run({true, kRsSpread, 1});
  const auto control_en = synthetic_run({false, 0.0, 1});
  const auto control_rs = synthetic_run({true, 0.0, 1});
  Outcome o;
  o.pass = en.report.accuracy >= 0.75 && rs.report.accuracy >= 0.80 && control_en.report.accuracy >= 0.40 &&
           control_en.report.accuracy <= 0.60 && control_rs.report.accuracy >= 0.40 &&
           control_rs.report.accuracy <= 0.60;
  o.detail = fmt::format(
      "english acc={:.4f} ({} test rows, spread {}), rs acc={:.4f} ({} test rows, spread {}), "
      "zero-spread control english={:.4f} rs={:.4f}",
      en.report.accuracy, en.report.total_support, kEnglishSpread, rs.report.accuracy, rs.report.total_support,
      kRsSpread, control_en.report.accuracy, control_rs.report.accuracy);
  g_runs = {en, rs};
  return o;
}

Outcome criterion_determinism() {
  if (g_runs.size() != 2) return {false, "criterion 5 results unavailable"};
  Outcome o;
  std::size_t differing = 0;
  for (int m = 0; m < 2; ++m) {
    for (std::size_t threads : {std::size_t{1}, std::size_t{4}}) {
      const auto again = synthetic_run({m == 1, m == 1 ? kRsSpread : kEnglishSpread, threads});
      const auto& first = g_runs[static_cast<std::size_t>(m)];
      if (again.dataset_csv != first.dataset_csv) ++differing;
      if (again.model_text != first.model_text) ++differing;
      if (again.report_text != first.report_text) ++differing;
    }
  }
  o.pass = differing == 0;
  o.detail = fmt::format("2 modes x (1, 4 threads) reruns, {} differing artifacts", differing);
  return o;
}

PairDataset random_dataset(Rng& rng, std::size_t rows, std::size_t features) {
  PairDataset ds;
  for (std::size_t f = 0; f < features; ++f) ds.feature_names.push_back(fmt::format("f{}", f));
  for (std::size_t i = 0; i < rows; ++i) {
    SimilarityRecord r;
    r.feature_names = ds.feature_names;
    for (std::size_t f = 0; f < features; ++f) r.values.push_back(rng.uniform(0.0, 10.0));
    const double signal = r.values[0] + 0.5 * r.values[1] + rng.normal(0.0, 1.5);
    r.label = signal > 7.5 ? 1 : 0;
    ds.rows.push_back(std::move(r));
  }
  return ds;
}

Outcome criterion_forest_invariants() {
  Rng rng(kSeed);
  auto train = random_dataset(rng, 300, 4);
  auto test = random_dataset(rng, 1000, 4);
  ForestParams params;
  params.n_trees = 50;
  params.seed = kSeed;
  const auto forest = train_forest(train, params);
  std::size_t out_of_range = 0;
  for (const auto& r : test.rows) {
    const double p = predict(forest, r);
    if (!(p >= 0.0 && p <= 1.0)) ++out_of_range;
  }
  double importance_sum = 0.0;
  for (const auto& [name, v] : feature_importance(forest)) importance_sum += v;

  auto scale = [](PairDataset ds) {
    for (auto& r : ds.rows) r.values[1] *= 1000.0;
    return ds;
  };
  const auto scaled_forest = train_forest(scale(train), params);
  const auto scaled_test = scale(test);
  std::size_t flips = 0;
  for (std::size_t i = 0; i < test.rows.size(); ++i) {
    if (classify(predict(forest, test.rows[i])) != classify(predict(scaled_forest, scaled_test.rows[i]))) ++flips;
  }

  std::size_t oracle_mismatches = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(8);
    const std::size_t features = 1 + rng.index(2);
    const std::size_t depth = 1 + rng.index(2);
    std::vector<std::vector<double>> x(n, std::vector<double>(features));
    std::vector<int> y(n);
    PairDataset ds;
    for (std::size_t f = 0; f < features; ++f) ds.feature_names.push_back(fmt::format("f{}", f));
    for (std::size_t i = 0; i < n; ++i) {
      SimilarityRecord r;
      r.feature_names = ds.feature_names;
      for (auto& v : x[i]) {
        v = static_cast<double>(rng.index(5));  // small grid forces ties
        r.values.push_back(v);
      }
      y[i] = static_cast<int>(rng.index(2));
      r.label = y[i];
      ds.rows.push_back(std::move(r));
    }
    ForestParams p;
    p.n_trees = 1;
    p.bootstrap = false;
    p.max_depth = depth;
    p.min_samples_leaf = 1;
    p.mtry = features;
    const auto tree = train_forest(ds, p).trees.at(0);
    const oracle::GreedyCart expected(x, y, depth);
    bool same = tree.nodes.size() == expected.nodes().size();
    for (std::size_t k = 0; same && k < tree.nodes.size(); ++k) {
      const auto& a = tree.nodes[k];
      const auto& b = expected.nodes()[k];
      same = a.leaf == b.leaf &&
             (a.leaf ? a.value == static_cast<double>(b.value.num) / static_cast<double>(b.value.den)
                     : a.feature == b.feature && a.threshold == b.threshold && a.left == b.left && a.right == b.right);
    }
    if (!same) ++oracle_mismatches;
  }

  Outcome o;
  o.pass = out_of_range == 0 && std::abs(importance_sum - 1.0) <= 1e-9 && flips == 0 && oracle_mismatches == 0;
  o.detail = fmt::format(
      "{} predictions outside [0,1], importance sum {:.12f}, {} flips after x1000 scaling, "
      "{} of 300 trees differ from exhaustive greedy CART",
      out_of_range, importance_sum, flips, oracle_mismatches);
  return o;
}

Outcome criterion_weighted_recall() {
  Rng rng(kSeed);
  std::size_t failures = 0;
  for (int i = 0; i < 1000; ++i) {
    ConfusionMatrix cm;
    for (auto& row : cm.counts) {
      for (auto& cell : row) cell = rng.index(i % 2 == 0 ? 20 : 100000);
    }
    if (cm.total() == 0) cm.counts[0][0] = 1;
    const auto r = report(cm);
    if (r.weighted_avg.recall != r.accuracy) ++failures;
  }
  return {failures == 0, fmt::format("1000 random matrices, {} with weighted recall != accuracy", failures)};
}

}  // namespace

int main() {
  log::set_warning_sink({});
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
    double budget_seconds;
  };
  const Criterion criteria[] = {
      {"1 reference report reproduction", criterion_reference_reports, 1.0},
      {"2 levenshtein oracle equivalence", criterion_levenshtein, 5.0},
      {"3 reference chunk-pair check", criterion_reference_chunks, 1.0},
      {"4 variance filter", criterion_variance_filter, 1.0},
      {"5 end-to-end synthetic accuracy", criterion_end_to_end, 60.0},
      {"6 determinism", criterion_determinism, 120.0},
      {"7 forest invariants", criterion_forest_invariants, 10.0},
      {"8 weighted recall equals accuracy", criterion_weighted_recall, 1.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      o.pass = false;
      o.detail += fmt::format("; over the {} s budget", c.budget_seconds);
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.name << ": " << o.detail
              << fmt::format(" [{:.2f} s]", seconds) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
