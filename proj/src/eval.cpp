#include "stylomech/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "stylomech/error.hpp"
#include "stylomech/random.hpp"

namespace stylomech {

std::pair<PairDataset, PairDataset> split(const PairDataset& ds, const SplitOptions& options) {
  if (!(options.train_fraction > 0.0 && options.train_fraction < 1.0)) {
    throw Error(Errc::InvalidParams, "train_fraction must lie strictly between 0 and 1");
  }
  Rng rng(options.seed);
  std::vector<bool> to_train(ds.rows.size(), false);
  auto take = [&](std::vector<std::size_t> group) {
    rng.shuffle(std::span<std::size_t>(group));
    const auto k = static_cast<std::size_t>(std::floor(options.train_fraction * static_cast<double>(group.size()) + 1e-9));
    for (std::size_t i = 0; i < k; ++i) to_train[group[i]] = true;
  };
  if (options.stratified) {
    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < ds.rows.size(); ++i) by_class[ds.rows[i].label.value_or(0) == 1 ? 1 : 0].push_back(i);
    if (by_class[0].empty() || by_class[1].empty()) {
      throw Error(Errc::TooFewRows, "stratified split needs rows of both classes");
    }
    take(std::move(by_class[0]));
    take(std::move(by_class[1]));
  } else {
    std::vector<std::size_t> all(ds.rows.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    take(std::move(all));
  }

  std::pair<PairDataset, PairDataset> parts;
  parts.first.feature_names = parts.second.feature_names = ds.feature_names;
  const bool has_provenance = ds.provenance.size() == ds.rows.size();
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    auto& part = to_train[i] ? parts.first : parts.second;
    part.rows.push_back(ds.rows[i]);
    if (has_provenance) part.provenance.push_back(ds.provenance[i]);
  }
  if (parts.first.rows.empty() || parts.second.rows.empty()) {
    throw Error(Errc::TooFewRows, "split of " + std::to_string(ds.rows.size()) + " rows leaves one side empty");
  }
  return parts;
}

ConfusionMatrix confusion(std::span<const int> preds, std::span<const int> labels) {
  if (preds.size() != labels.size() || preds.empty()) {
    throw Error(Errc::LengthMismatch, "confusion: " + std::to_string(preds.size()) + " predictions for " +
                                          std::to_string(labels.size()) + " labels");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if ((preds[i] != 0 && preds[i] != 1) || (labels[i] != 0 && labels[i] != 1)) {
      throw Error(Errc::InvalidParams, "confusion: labels must be 0 or 1");
    }
    ++cm.counts[static_cast<std::size_t>(labels[i])][static_cast<std::size_t>(preds[i])];
  }
  return cm;
}

namespace {

__extension__ typedef unsigned __int128 u128;

// Non-negative fraction kept in lowest terms.
struct Fraction {
  u128 num = 0;
  u128 den = 1;

  static Fraction of(u128 n, u128 d) {
    if (d == 0) return {};
    Fraction f{n, d};
    f.reduce();
    return f;
  }

  void reduce() {
    auto a = num;
    auto b = den;
    while (b != 0) {
      const auto t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
  }

  Fraction operator+(const Fraction& o) const { return of(num * o.den + o.num * den, den * o.den); }
  Fraction scaled(u128 k) const { return of(num * k, den); }
  Fraction divided(u128 k) const { return of(num, den * k); }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct ExactMetrics {
  Fraction precision, recall, f1;
};

ClassMetrics to_metrics(const ExactMetrics& m, std::uint64_t support) {
  return {m.precision.value(), m.recall.value(), m.f1.value(), support};
}

}  // namespace

ClassificationReport report(const ConfusionMatrix& cm) {
  const auto total = cm.total();
  if (total == 0) throw Error(Errc::EmptyMatrix, "report: confusion matrix is empty");
  ClassificationReport r;
  r.total_support = total;
  std::array<ExactMetrics, 2> exact;
  for (std::size_t c = 0; c < 2; ++c) {
    const auto tp = cm.counts[c][c];
    const auto predicted = cm.counts[0][c] + cm.counts[1][c];
    const auto actual = cm.counts[c][0] + cm.counts[c][1];
    exact[c].precision = Fraction::of(tp, predicted);
    exact[c].recall = Fraction::of(tp, actual);
    // 2PR/(P+R) with P = tp/predicted and R = tp/actual.
    exact[c].f1 = Fraction::of(2 * static_cast<u128>(tp), predicted + actual);
    r.per_class[c] = to_metrics(exact[c], actual);
  }
  r.accuracy = Fraction::of(cm.counts[0][0] + cm.counts[1][1], total).value();

  ExactMetrics macro;
  ExactMetrics weighted;
  const auto s0 = r.per_class[0].support;
  const auto s1 = r.per_class[1].support;
  auto both = [&](Fraction ExactMetrics::*field) {
    (macro.*field) = ((exact[0].*field) + (exact[1].*field)).divided(2);
    (weighted.*field) = ((exact[0].*field).scaled(s0) + (exact[1].*field).scaled(s1)).divided(total);
  };
  both(&ExactMetrics::precision);
  both(&ExactMetrics::recall);
  both(&ExactMetrics::f1);
  r.macro_avg = to_metrics(macro, total);
  r.weighted_avg = to_metrics(weighted, total);
  return r;
}

namespace {

std::string two_decimals(double x) {
  // Half-up on the decimal value, so 0.6875 prints as 0.69.
  return fmt::format("{:.2f}", std::floor(x * 100.0 + 0.5 + 1e-9) / 100.0);
}

}  // namespace

std::string format_report(const ClassificationReport& r) {
  constexpr int width = 12;  // "weighted avg"
  std::string out = fmt::format("{:>{}} ", "", width);
  for (const char* h : {"precision", "recall", "f1-score", "support"}) out += fmt::format(" {:>9}", h);
  out += "\n\n";
  auto row = [&](std::string_view name, const ClassMetrics& m) {
    out += fmt::format("{:>{}}  {:>9} {:>9} {:>9} {:>9}\n", name, width, two_decimals(m.precision),
                       two_decimals(m.recall), two_decimals(m.f1), m.support);
  };
  row("0", r.per_class[0]);
  row("1", r.per_class[1]);
  out += "\n";
  out += fmt::format("{:>{}}  {:>9} {:>9} {:>9} {:>9}\n", "accuracy", width, "", "", two_decimals(r.accuracy),
                     r.total_support);
  row("macro avg", r.macro_avg);
  row("weighted avg", r.weighted_avg);
  return out;
}

}  // namespace stylomech
