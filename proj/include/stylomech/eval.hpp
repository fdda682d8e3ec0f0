#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "stylomech/dataset.hpp"

namespace stylomech {

struct SplitOptions {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  bool stratified = true;
};

/// Seeded partition into (train, test). Stratified: floor(fraction * n_c)
/// rows of each class go to train, the rest to test. Both parts keep the
/// original row order and carry their provenance. Throws Error(TooFewRows)
/// when either part would be empty (or a class is missing when stratified),
/// Error(InvalidParams) for a fraction outside (0, 1).
std::pair<PairDataset, PairDataset> split(const PairDataset& ds, const SplitOptions& options = {});

/// counts[true_label][predicted_label].
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, 2>, 2> counts{};

  std::uint64_t total() const { return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1]; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// Throws Error(LengthMismatch) for different or zero lengths and
/// Error(InvalidParams) for values other than 0 and 1.
ConfusionMatrix confusion(std::span<const int> preds, std::span<const int> labels);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

struct ClassificationReport {
  std::array<ClassMetrics, 2> per_class;
  double accuracy = 0.0;
  ClassMetrics macro_avg;     // support = total
  ClassMetrics weighted_avg;  // support = total
  std::uint64_t total_support = 0;
};

/// Metrics are computed as exact fractions and rounded to double once, so
/// algebraic identities (weighted recall == accuracy) hold bit for bit.
/// Zero denominators give 0. Throws Error(EmptyMatrix) when total is 0.
ClassificationReport report(const ConfusionMatrix& cm);

/// Fixed-width table: rows `0`, `1`, `accuracy`, `macro avg`,
/// `weighted avg`; 2 decimals, halves rounded up.
std::string format_report(const ClassificationReport& r);

}  // namespace stylomech
