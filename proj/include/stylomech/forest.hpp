#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylomech/dataset.hpp"
#include "stylomech/pairwise.hpp"

namespace stylomech {

struct ForestParams {
  std::size_t n_trees = 200;
  std::size_t max_depth = 12;
  std::size_t min_samples_leaf = 2;
  /// Features drawn per node. 0 means ceil(sqrt(n_features)), resolved at
  /// training time.
  std::size_t mtry = 0;
  bool bootstrap = true;
  std::uint64_t seed = 0;

  bool operator==(const ForestParams&) const = default;
};

struct TreeNode {
  bool leaf = true;
  std::uint32_t feature = 0;
  double threshold = 0.0;  // go left when value <= threshold
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  double value = 0.0;  // leaf only

  bool operator==(const TreeNode&) const = default;
};

/// Nodes in depth-first preorder, node 0 the root; children always have
/// larger ids than their parent.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  double predict(std::span<const double> values) const;
  std::size_t depth() const;
  bool operator==(const DecisionTree&) const = default;
};

/// Row-major feature matrix plus labels (0/1 in practice, any value in
/// [0,1] accepted).
struct TrainingData {
  std::size_t n_features = 0;
  std::vector<double> x;
  std::vector<double> y;

  std::size_t rows() const { return y.size(); }
  double at(std::size_t row, std::size_t feature) const { return x[row * n_features + feature]; }

  static TrainingData from(const PairDataset& ds);
};

/// Grows one CART regression tree on the rows listed in `rows` (repeats
/// allowed). At each node mtry features are drawn with `tree_seed`'s
/// generator in preorder, and the split minimizing the summed squared error
/// of the children is taken. Candidate thresholds are midpoints between
/// adjacent distinct values; ties go to the lowest feature index, then the
/// lowest threshold. Throws Error(EmptySamples) when `rows` is empty.
DecisionTree train_tree(const TrainingData& data, std::span<const std::size_t> rows, const ForestParams& params,
                        std::uint64_t tree_seed);

/// All rows of `data`.
DecisionTree train_tree(const TrainingData& data, const ForestParams& params, std::uint64_t tree_seed);

struct Forest {
  ForestParams params;  // mtry resolved
  std::vector<DecisionTree> trees;
  std::vector<std::string> feature_names;
  std::optional<double> oob_error;
  /// Squared-error reduction summed per feature over all splits.
  std::vector<double> split_gain;

  double predict(std::span<const double> values) const;
  bool operator==(const Forest&) const = default;
};

/// Tree i sees a bootstrap resample drawn by a generator seeded with
/// mix(seed, i) (or all rows without bootstrap). With bootstrap, the
/// out-of-bag misclassification rate at threshold 0.5 is recorded. Output is
/// the same for every thread count. Throws Error(EmptyDataset) for no rows,
/// Error(InvalidParams) for bad parameters.
Forest train_forest(const PairDataset& ds, const ForestParams& params, std::size_t threads = 1);

/// Mean of the per-tree leaf values. Throws Error(SchemaMismatch) when the
/// record's feature names differ from the forest's.
double predict(const Forest& forest, const SimilarityRecord& record);

inline constexpr double kDefaultThreshold = 0.5;

/// 1 iff score >= threshold.
inline int classify(double score, double threshold = kDefaultThreshold) { return score >= threshold ? 1 : 0; }

/// Split gain per feature normalized to sum 1; empty when no tree splits.
std::map<std::string, double> feature_importance(const Forest& forest);

void save_model(const Forest& forest, std::ostream& out);
void save_model(const Forest& forest, const std::string& path);

/// Throws Error(VersionError) for an unknown format version and
/// Error(FormatError) with the line number for anything malformed.
Forest load_model(std::istream& in);
Forest load_model(const std::string& path);

}  // namespace stylomech
