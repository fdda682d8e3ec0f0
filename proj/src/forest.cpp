#include "stylomech/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "numeric_text.hpp"
#include "parallel.hpp"
#include "stylomech/error.hpp"
#include "stylomech/log.hpp"
#include "stylomech/random.hpp"

namespace stylomech {

double DecisionTree::predict(std::span<const double> values) const {
  std::size_t id = 0;
  while (!nodes[id].leaf) {
    const auto& n = nodes[id];
    id = values[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes[id].value;
}

std::size_t DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<std::size_t> d(nodes.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (!nodes[i].leaf) d[nodes[i].left] = d[nodes[i].right] = d[i] + 1;
  }
  return deepest;
}

TrainingData TrainingData::from(const PairDataset& ds) {
  TrainingData data;
  data.n_features = ds.feature_names.size();
  data.x.reserve(ds.rows.size() * data.n_features);
  data.y.reserve(ds.rows.size());
  for (std::size_t r = 0; r < ds.rows.size(); ++r) {
    const auto& row = ds.rows[r];
    if (row.values.size() != data.n_features) {
      throw Error(Errc::SchemaMismatch, "row " + std::to_string(r) + " has " + std::to_string(row.values.size()) +
                                            " values for " + std::to_string(data.n_features) + " features");
    }
    if (!row.label) throw Error(Errc::SchemaError, "row " + std::to_string(r) + " has no label");
    data.x.insert(data.x.end(), row.values.begin(), row.values.end());
    data.y.push_back(static_cast<double>(*row.label));
  }
  return data;
}

// ---------------------------------------------------------------------------
// tree growth

namespace {

std::size_t resolve_mtry(std::size_t mtry, std::size_t n_features) {
  if (mtry != 0) return mtry;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_features)))));
}

void validate(const ForestParams& params, std::size_t n_features) {
  if (params.n_trees == 0 || params.max_depth == 0 || params.min_samples_leaf == 0) {
    throw Error(Errc::InvalidParams, "n_trees, max_depth and min_samples_leaf must be positive");
  }
  if (n_features == 0) throw Error(Errc::InvalidParams, "no feature columns");
  if (resolve_mtry(params.mtry, n_features) > n_features) {
    throw Error(Errc::InvalidParams, "mtry " + std::to_string(params.mtry) + " exceeds the " +
                                         std::to_string(n_features) + " features");
  }
}

class TreeBuilder {
 public:
  TreeBuilder(const TrainingData& data, const ForestParams& params, Rng& rng, std::vector<double>& gains)
      : data_(data), params_(params), mtry_(resolve_mtry(params.mtry, data.n_features)), rng_(rng), gains_(gains) {
    features_.resize(data.n_features);
  }

  DecisionTree build(std::vector<std::size_t> rows) {
    grow(std::move(rows), 0);
    return std::move(tree_);
  }

 private:
  struct Split {
    std::size_t feature = 0;
    double threshold = 0.0;
    double score = -std::numeric_limits<double>::infinity();  // SL^2/nL + SR^2/nR
  };

  std::uint32_t grow(std::vector<std::size_t> rows, std::size_t depth) {
    const auto id = static_cast<std::uint32_t>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    double sum = 0.0;
    for (auto r : rows) sum += data_.y[r];
    const double n = static_cast<double>(rows.size());
    const bool pure = std::all_of(rows.begin(), rows.end(), [&](auto r) { return data_.y[r] == data_.y[rows[0]]; });
    if (pure || depth >= params_.max_depth || rows.size() < 2 * params_.min_samples_leaf) {
      make_leaf(id, sum / n);
      return id;
    }
    const auto split = best_split(rows);
    if (!split) {
      make_leaf(id, sum / n);
      return id;
    }
    gains_[split->feature] += std::max(0.0, split->score - sum * sum / n);
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (auto r : rows) (data_.at(r, split->feature) <= split->threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    auto& node = tree_.nodes[id];
    node.leaf = false;
    node.feature = static_cast<std::uint32_t>(split->feature);
    node.threshold = split->threshold;
    const auto l = grow(std::move(left), depth + 1);
    const auto r = grow(std::move(right), depth + 1);
    tree_.nodes[id].left = l;
    tree_.nodes[id].right = r;
    return id;
  }

  void make_leaf(std::uint32_t id, double value) {
    tree_.nodes[id].leaf = true;
    tree_.nodes[id].value = value;
  }

  std::optional<Split> best_split(const std::vector<std::size_t>& rows) {
    // Partial Fisher-Yates draw of mtry features, then ascending order so
    // the first strictly better candidate wins ties.
    std::iota(features_.begin(), features_.end(), std::size_t{0});
    for (std::size_t k = 0; k < mtry_; ++k) {
      std::swap(features_[k], features_[k + rng_.index(features_.size() - k)]);
    }
    std::vector<std::size_t> drawn(features_.begin(), features_.begin() + static_cast<std::ptrdiff_t>(mtry_));
    std::sort(drawn.begin(), drawn.end());

    const std::size_t n = rows.size();
    const std::size_t min_leaf = params_.min_samples_leaf;
    std::optional<Split> best;
    std::vector<std::pair<double, double>> column(n);
    for (auto f : drawn) {
      for (std::size_t i = 0; i < n; ++i) column[i] = {data_.at(rows[i], f), data_.y[rows[i]]};
      std::sort(column.begin(), column.end());
      double total = 0.0;
      for (const auto& [x, y] : column) total += y;
      double left_sum = 0.0;
      for (std::size_t k = 1; k < n; ++k) {
        left_sum += column[k - 1].second;
        if (k < min_leaf || n - k < min_leaf) continue;
        const double a = column[k - 1].first;
        const double b = column[k].first;
        if (!(a < b)) continue;
        const double right_sum = total - left_sum;
        const double score = left_sum * left_sum / static_cast<double>(k) +
                             right_sum * right_sum / static_cast<double>(n - k);
        const double bar = best ? best->score + 1e-12 * (1.0 + std::abs(best->score)) : -1.0;
        if (best && !(score > bar)) continue;
        double mid = 0.5 * (a + b);
        if (!(mid < b)) mid = a;  // adjacent doubles
        best = Split{f, mid, score};
      }
    }
    return best;
  }

  const TrainingData& data_;
  const ForestParams& params_;
  std::size_t mtry_;
  Rng& rng_;
  std::vector<double>& gains_;
  std::vector<std::size_t> features_;
  DecisionTree tree_;
};

DecisionTree grow_tree(const TrainingData& data, std::vector<std::size_t> rows, const ForestParams& params, Rng& rng,
                       std::vector<double>& gains) {
  if (rows.empty()) throw Error(Errc::EmptySamples, "train_tree: no samples");
  validate(params, data.n_features);
  gains.assign(data.n_features, 0.0);
  return TreeBuilder(data, params, rng, gains).build(std::move(rows));
}

}  // namespace

DecisionTree train_tree(const TrainingData& data, std::span<const std::size_t> rows, const ForestParams& params,
                        std::uint64_t tree_seed) {
  Rng rng(tree_seed);
  std::vector<double> gains;
  return grow_tree(data, std::vector<std::size_t>(rows.begin(), rows.end()), params, rng, gains);
}

DecisionTree train_tree(const TrainingData& data, const ForestParams& params, std::uint64_t tree_seed) {
  std::vector<std::size_t> rows(data.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return train_tree(data, rows, params, tree_seed);
}

// ---------------------------------------------------------------------------
// forest

double Forest::predict(std::span<const double> values) const {
  double sum = 0.0;
  for (const auto& t : trees) sum += t.predict(values);
  return sum / static_cast<double>(trees.size());
}

Forest train_forest(const PairDataset& ds, const ForestParams& params, std::size_t threads) {
  if (ds.rows.empty()) throw Error(Errc::EmptyDataset, "train_forest: dataset has no rows");
  const auto data = TrainingData::from(ds);
  validate(params, data.n_features);
  if (ds.rows.size() >= 2) {
    for (std::size_t c = 0; c < ds.feature_names.size(); ++c) {
      if (column_variance(ds, c) < kDefaultVarianceThreshold) {
        log::warn("column " + ds.feature_names[c] + " has variance below " +
                  numeric_text::format(kDefaultVarianceThreshold) + "; was the variance filter applied?");
      }
    }
  }

  Forest forest;
  forest.params = params;
  forest.params.mtry = resolve_mtry(params.mtry, data.n_features);
  forest.feature_names = ds.feature_names;
  forest.trees.resize(params.n_trees);
  const std::size_t n = data.rows();
  std::vector<std::vector<double>> gains(params.n_trees);
  std::vector<std::vector<bool>> in_bag(params.bootstrap ? params.n_trees : 0);

  detail::parallel_for(params.n_trees, threads, [&](std::size_t t) {
    Rng rng(mix(params.seed, t));
    std::vector<std::size_t> rows(n);
    if (params.bootstrap) {
      in_bag[t].assign(n, false);
      for (auto& r : rows) {
        r = rng.index(n);
        in_bag[t][r] = true;
      }
    } else {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    forest.trees[t] = grow_tree(data, std::move(rows), forest.params, rng, gains[t]);
  });

  forest.split_gain.assign(data.n_features, 0.0);
  for (const auto& g : gains) {
    for (std::size_t f = 0; f < g.size(); ++f) forest.split_gain[f] += g[f];
  }

  if (params.bootstrap) {
    std::size_t scored = 0;
    std::size_t wrong = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const std::span<const double> values(data.x.data() + r * data.n_features, data.n_features);
      double sum = 0.0;
      std::size_t votes = 0;
      for (std::size_t t = 0; t < params.n_trees; ++t) {
        if (in_bag[t][r]) continue;
        sum += forest.trees[t].predict(values);
        ++votes;
      }
      if (votes == 0) continue;
      ++scored;
      if (classify(sum / static_cast<double>(votes)) != static_cast<int>(data.y[r])) ++wrong;
    }
    if (scored > 0) forest.oob_error = static_cast<double>(wrong) / static_cast<double>(scored);
  }
  return forest;
}

double predict(const Forest& forest, const SimilarityRecord& record) {
  if (record.feature_names != forest.feature_names) {
    throw Error(Errc::SchemaMismatch, "record features do not match the model's features");
  }
  return forest.predict(record.values);
}

std::map<std::string, double> feature_importance(const Forest& forest) {
  std::map<std::string, double> out;
  const double total = std::accumulate(forest.split_gain.begin(), forest.split_gain.end(), 0.0);
  if (!(total > 0.0)) return out;
  for (std::size_t f = 0; f < forest.feature_names.size() && f < forest.split_gain.size(); ++f) {
    out[forest.feature_names[f]] = forest.split_gain[f] / total;
  }
  return out;
}

// ---------------------------------------------------------------------------
// model file

namespace {

constexpr std::string_view kMagic = "STYLOMECH-FOREST";
constexpr std::string_view kVersion = "1";

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::vector<std::string> split_on(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const auto next = text.find(sep, pos);
    out.emplace_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) return out;
    pos = next + 1;
  }
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Next non-blank line split on single spaces; throws at end of input.
  std::vector<std::string> next(std::string_view expecting) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return split_on(line, ' ');
    }
    throw Error(Errc::FormatError, "unexpected end of file, expecting " + std::string(expecting), line_ + 1);
  }

  [[noreturn]] void fail(const std::string& what) const { throw Error(Errc::FormatError, what, line_); }

  template <class Int>
  Int integer(std::string_view text, std::string_view what) const {
    const auto v = numeric_text::parse_int<Int>(text);
    if (!v) fail("bad " + std::string(what) + " '" + std::string(text) + "'");
    return *v;
  }

  double real(std::string_view text, std::string_view what) const {
    const auto v = numeric_text::parse_double(text);
    if (!v || !std::isfinite(*v)) fail("bad " + std::string(what) + " '" + std::string(text) + "'");
    return *v;
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace

void save_model(const Forest& forest, std::ostream& out) {
  const auto& p = forest.params;
  out << kMagic << ' ' << kVersion << '\n';
  out << "params n_trees=" << p.n_trees << " max_depth=" << p.max_depth << " min_samples_leaf=" << p.min_samples_leaf
      << " mtry=" << p.mtry << " bootstrap=" << (p.bootstrap ? 1 : 0) << " seed=" << p.seed;
  if (forest.oob_error) out << " oob_error=" << numeric_text::format(*forest.oob_error);
  out << '\n';
  out << "features " << join(forest.feature_names) << '\n';
  std::vector<std::string> gains;
  for (double g : forest.split_gain) gains.push_back(numeric_text::format(g));
  out << "gain " << join(gains) << '\n';
  for (std::size_t t = 0; t < forest.trees.size(); ++t) {
    const auto& nodes = forest.trees[t].nodes;
    out << "tree " << t << ' ' << nodes.size() << '\n';
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      if (n.leaf) {
        out << i << " L " << numeric_text::format(n.value) << '\n';
      } else {
        out << i << " S " << n.feature << ' ' << numeric_text::format(n.threshold) << ' ' << n.left << ' ' << n.right
            << '\n';
      }
    }
  }
  if (!out) throw Error(Errc::IoError, "save_model: stream failure");
}

void save_model(const Forest& forest, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  save_model(forest, out);
}

Forest load_model(std::istream& in) {
  Reader reader(in);
  Forest forest;

  auto header = reader.next("version line");
  if (header.size() != 2 || header[0] != kMagic) reader.fail("not a forest model file");
  if (header[1] != kVersion) {
    throw Error(Errc::VersionError, "unsupported model version '" + header[1] + "'", 1);
  }

  auto params = reader.next("params line");
  if (params.empty() || params[0] != "params") reader.fail("expected 'params'");
  std::map<std::string, std::string> kv;
  for (std::size_t i = 1; i < params.size(); ++i) {
    const auto eq = params[i].find('=');
    if (eq == std::string::npos) reader.fail("expected key=value, found '" + params[i] + "'");
    kv[params[i].substr(0, eq)] = params[i].substr(eq + 1);
  }
  auto take = [&](const std::string& key) -> std::string {
    const auto it = kv.find(key);
    if (it == kv.end()) reader.fail("params line lacks " + key);
    auto v = it->second;
    kv.erase(it);
    return v;
  };
  auto& p = forest.params;
  p.n_trees = reader.integer<std::size_t>(take("n_trees"), "n_trees");
  p.max_depth = reader.integer<std::size_t>(take("max_depth"), "max_depth");
  p.min_samples_leaf = reader.integer<std::size_t>(take("min_samples_leaf"), "min_samples_leaf");
  p.mtry = reader.integer<std::size_t>(take("mtry"), "mtry");
  const auto bootstrap = take("bootstrap");
  if (bootstrap != "0" && bootstrap != "1") reader.fail("bootstrap must be 0 or 1");
  p.bootstrap = bootstrap == "1";
  p.seed = reader.integer<std::uint64_t>(take("seed"), "seed");
  if (kv.contains("oob_error")) {
    forest.oob_error = reader.real(take("oob_error"), "oob_error");
    if (*forest.oob_error < 0.0 || *forest.oob_error > 1.0) reader.fail("oob_error outside [0,1]");
  }
  if (!kv.empty()) reader.fail("unknown parameter " + kv.begin()->first);
  if (p.n_trees == 0) reader.fail("n_trees must be positive");

  auto features = reader.next("features line");
  if (features.size() != 2 || features[0] != "features") reader.fail("expected 'features <names>'");
  forest.feature_names = split_on(features[1], ',');
  const std::size_t n_features = forest.feature_names.size();
  for (const auto& name : forest.feature_names) {
    if (name.empty()) reader.fail("empty feature name");
  }

  auto gain = reader.next("gain line");
  if (gain.size() != 2 || gain[0] != "gain") reader.fail("expected 'gain <values>'");
  for (const auto& g : split_on(gain[1], ',')) forest.split_gain.push_back(reader.real(g, "gain"));
  if (forest.split_gain.size() != n_features) reader.fail("gain count differs from feature count");

  for (std::size_t t = 0; t < p.n_trees; ++t) {
    auto head = reader.next("tree line");
    if (head.size() != 3 || head[0] != "tree" || reader.integer<std::size_t>(head[1], "tree index") != t) {
      reader.fail("expected 'tree " + std::to_string(t) + " <n_nodes>'");
    }
    const auto n_nodes = reader.integer<std::size_t>(head[2], "node count");
    if (n_nodes == 0) reader.fail("tree without nodes");
    DecisionTree tree;
    tree.nodes.resize(n_nodes);
    std::vector<int> parents(n_nodes, 0);
    for (std::size_t i = 0; i < n_nodes; ++i) {
      auto f = reader.next("node line");
      if (f.size() < 2 || reader.integer<std::size_t>(f[0], "node id") != i) {
        reader.fail("expected node " + std::to_string(i));
      }
      auto& node = tree.nodes[i];
      if (f[1] == "L" && f.size() == 3) {
        node.leaf = true;
        node.value = reader.real(f[2], "leaf value");
        if (node.value < 0.0 || node.value > 1.0) reader.fail("leaf value outside [0,1]");
      } else if (f[1] == "S" && f.size() == 6) {
        node.leaf = false;
        node.feature = reader.integer<std::uint32_t>(f[2], "feature index");
        node.threshold = reader.real(f[3], "threshold");
        node.left = reader.integer<std::uint32_t>(f[4], "left child");
        node.right = reader.integer<std::uint32_t>(f[5], "right child");
        if (node.feature >= n_features) reader.fail("feature index out of range");
        for (auto c : {node.left, node.right}) {
          if (c <= i || c >= n_nodes) reader.fail("child id out of range");
          if (++parents[c] > 1) reader.fail("node " + std::to_string(c) + " has two parents");
        }
        if (node.left == node.right) reader.fail("split with identical children");
      } else {
        reader.fail("malformed node line");
      }
    }
    for (std::size_t i = 1; i < n_nodes; ++i) {
      if (parents[i] != 1) reader.fail("node " + std::to_string(i) + " unreachable in tree " + std::to_string(t));
    }
    forest.trees.push_back(std::move(tree));
  }
  std::string rest;
  while (std::getline(in, rest)) {
    if (!rest.empty() && rest != "\r") throw Error(Errc::FormatError, "trailing content after the last tree");
  }
  return forest;
}

Forest load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return load_model(in);
}

}  // namespace stylomech
