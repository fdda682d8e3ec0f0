#include "stylomech/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "numeric_text.hpp"
#include "parallel.hpp"
#include "stylomech/error.hpp"
#include "stylomech/log.hpp"
#include "stylomech/random.hpp"

namespace stylomech {

// ---------------------------------------------------------------------------
// profiling and pair construction

namespace {

struct UnitResult {
  std::vector<ProfiledUnit> units;
  std::vector<std::string> warnings;
};

UnitResult profile_document(const RawDocument& doc, const PairOptions& options) {
  UnitResult result;
  if (!doc.author_id) {
    result.warnings.push_back("skipping " + doc.doc_id + ": no author");
    return result;
  }
  const auto text = clean(doc.text, options.clean);
  const auto& res = options.resources ? *options.resources : EnglishResources::builtin();
  try {
    if (options.mode == LanguageMode::English) {
      result.units.push_back({doc.doc_id, *doc.author_id, StyleProfile::from_english(english_profile(text, res))});
      return result;
    }
    const auto& lexicon = options.lexicon ? *options.lexicon : RsLexicon::builtin();
    const auto tokens = tokenize(text);
    if (count_words(tokens) == 0) throw Error(Errc::EmptyInput, "no words");
    auto chunks = chunk(tokens, options.target_words, doc.doc_id);
    if (chunks.size() > 1 && chunks.back().word_count() * 2 < options.target_words) chunks.pop_back();
    for (std::size_t k = 0; k < chunks.size(); ++k) {
      try {
        en_si_ratio(chunks[k], lexicon);
      } catch (const Error& e) {
        result.warnings.push_back("skipping " + doc.doc_id + "#" + std::to_string(k) + ": " + e.what());
        continue;
      }
      result.units.push_back(
          {doc.doc_id + "#" + std::to_string(k), *doc.author_id, StyleProfile::from_chunk(std::move(chunks[k]))});
    }
  } catch (const Error& e) {
    result.warnings.push_back("skipping " + doc.doc_id + ": " + e.what());
  }
  return result;
}

using IndexPair = std::pair<std::uint32_t, std::uint32_t>;

std::vector<IndexPair> sample_without_replacement(std::vector<IndexPair> space, std::size_t k, Rng& rng) {
  for (std::size_t t = 0; t < k; ++t) {
    std::swap(space[t], space[t + rng.index(space.size() - t)]);
  }
  space.resize(k);
  return space;
}

}  // namespace

std::vector<ProfiledUnit> profile_corpus(const std::vector<RawDocument>& corpus, const PairOptions& options) {
  std::vector<UnitResult> results(corpus.size());
  detail::parallel_for(corpus.size(), options.threads,
                       [&](std::size_t i) { results[i] = profile_document(corpus[i], options); });
  std::vector<ProfiledUnit> units;
  for (auto& r : results) {
    for (const auto& w : r.warnings) log::warn(w);
    for (auto& u : r.units) units.push_back(std::move(u));
  }
  return units;
}

PairDataset build_pairs(const std::vector<ProfiledUnit>& units, std::size_t n_same, std::size_t n_diff,
                        std::uint64_t seed, const PairOptions& options) {
  std::vector<IndexPair> same_space;
  std::vector<IndexPair> diff_space;
  for (std::uint32_t i = 0; i < units.size(); ++i) {
    for (std::uint32_t j = i + 1; j < units.size(); ++j) {
      (units[i].author == units[j].author ? same_space : diff_space).emplace_back(i, j);
    }
  }
  if (same_space.size() < n_same || diff_space.size() < n_diff) {
    throw Error(Errc::InsufficientCorpus,
                "requested " + std::to_string(n_same) + " same-author and " + std::to_string(n_diff) +
                    " different-author pairs; corpus offers " + std::to_string(same_space.size()) + " and " +
                    std::to_string(diff_space.size()));
  }
  Rng same_rng(mix(seed, 1));
  Rng diff_rng(mix(seed, 2));
  auto chosen = sample_without_replacement(std::move(same_space), n_same, same_rng);
  const auto diff = sample_without_replacement(std::move(diff_space), n_diff, diff_rng);
  chosen.insert(chosen.end(), diff.begin(), diff.end());

  const RsLexicon* lexicon = options.lexicon;
  if (options.mode == LanguageMode::RomanizedSinhala && lexicon == nullptr) lexicon = &RsLexicon::builtin();

  PairDataset ds;
  ds.rows.resize(chosen.size());
  detail::parallel_for(chosen.size(), options.threads, [&](std::size_t r) {
    const auto [i, j] = chosen[r];
    ds.rows[r] = compare_profiles(units[i].profile, units[j].profile, lexicon);
    ds.rows[r].label = r < n_same ? 1 : 0;
  });
  for (const auto& [i, j] : chosen) ds.provenance.emplace_back(units[i].id, units[j].id);
  if (ds.rows.empty()) {
    ds.feature_names = options.mode == LanguageMode::English ? english_feature_names() : rs_feature_names();
    return ds;
  }
  ds.feature_names = ds.rows.front().feature_names;
  for (const auto& row : ds.rows) {
    if (row.feature_names != ds.feature_names) {
      throw Error(Errc::SchemaError, "pair records disagree on feature columns (inconsistent injected scalars?)");
    }
  }
  return ds;
}

PairDataset build_pairs(const std::vector<RawDocument>& corpus, std::size_t n_same, std::size_t n_diff,
                        std::uint64_t seed, const PairOptions& options) {
  return build_pairs(profile_corpus(corpus, options), n_same, n_diff, seed, options);
}

// ---------------------------------------------------------------------------
// cleaning

PairDataset dedupe(const PairDataset& ds) {
  PairDataset out;
  out.feature_names = ds.feature_names;
  const bool has_provenance = ds.provenance.size() == ds.rows.size();
  std::map<std::vector<double>, unsigned> seen;  // bit 0: label 0 seen, bit 1: label 1 seen
  std::size_t conflicts = 0;
  for (std::size_t r = 0; r < ds.rows.size(); ++r) {
    const auto& row = ds.rows[r];
    const unsigned bit = 1u << (row.label.value_or(0) == 1 ? 1 : 0);
    auto [it, inserted] = seen.try_emplace(row.values, 0u);
    if (it->second & bit) continue;
    if (!inserted) ++conflicts;
    it->second |= bit;
    out.rows.push_back(row);
    if (has_provenance) out.provenance.push_back(ds.provenance[r]);
  }
  if (conflicts > 0) {
    log::warn(std::to_string(conflicts) + " row(s) share feature values with a row of the other label; kept");
  }
  return out;
}

double column_variance(const PairDataset& ds, std::size_t column) {
  const double n = static_cast<double>(ds.rows.size());
  double sum = 0.0;
  for (const auto& row : ds.rows) sum += row.values[column];
  const double mean = sum / n;
  double sq = 0.0;
  for (const auto& row : ds.rows) sq += (row.values[column] - mean) * (row.values[column] - mean);
  return sq / n;
}

std::pair<PairDataset, VarianceReport> variance_filter(const PairDataset& ds, double threshold) {
  if (ds.rows.size() < 2) throw Error(Errc::TooFewRows, "variance_filter: need at least two rows");
  VarianceReport report;
  report.threshold = threshold;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < ds.feature_names.size(); ++c) {
    const double v = column_variance(ds, c);
    report.variance[ds.feature_names[c]] = v;
    if (v < threshold) {
      report.dropped.push_back(ds.feature_names[c]);
    } else {
      keep.push_back(c);
    }
  }
  PairDataset out;
  out.provenance = ds.provenance;
  for (auto c : keep) out.feature_names.push_back(ds.feature_names[c]);
  out.rows.reserve(ds.rows.size());
  for (const auto& row : ds.rows) {
    SimilarityRecord r;
    r.feature_names = out.feature_names;
    r.label = row.label;
    for (auto c : keep) r.values.push_back(row.values[c]);
    out.rows.push_back(std::move(r));
  }
  return {std::move(out), std::move(report)};
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_fields(std::string_view line, char sep) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  for (;;) {
    const auto next = line.find(sep, pos);
    fields.emplace_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return fields;
}

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

void write_csv(const PairDataset& ds, std::ostream& out) {
  for (const auto& name : ds.feature_names) {
    if (name.empty() || name.find_first_of(",\n\r") != std::string::npos) {
      throw Error(Errc::SchemaError, "feature name not representable in CSV: '" + name + "'");
    }
    out << name << ',';
  }
  out << "label\n";
  for (const auto& row : ds.rows) {
    if (!row.label) throw Error(Errc::SchemaError, "write_csv: row without label");
    for (double v : row.values) out << numeric_text::format(v) << ',';
    out << *row.label << '\n';
  }
  if (!out) throw Error(Errc::IoError, "write_csv: stream failure");
}

PairDataset read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::SchemaError, "empty CSV: missing header", 1);
  const auto header = split_fields(trim_cr(line), ',');
  if (header.size() < 2 || header.back() != "label") {
    throw Error(Errc::SchemaError, "header must list feature names followed by 'label'", 1);
  }
  PairDataset ds;
  ds.feature_names.assign(header.begin(), header.end() - 1);
  for (const auto& name : ds.feature_names) {
    if (name.empty()) throw Error(Errc::SchemaError, "empty feature name in header", 1);
    if (std::count(ds.feature_names.begin(), ds.feature_names.end(), name) > 1) {
      throw Error(Errc::SchemaError, "duplicate feature name '" + name + "'", 1);
    }
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim_cr(line);
    if (text.empty()) continue;
    const auto fields = split_fields(text, ',');
    if (fields.size() != header.size()) {
      throw Error(Errc::ParseError,
                  "expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()),
                  line_no);
    }
    SimilarityRecord row;
    row.feature_names = ds.feature_names;
    for (std::size_t c = 0; c + 1 < fields.size(); ++c) {
      const auto v = numeric_text::parse_double(fields[c]);
      if (!v || !std::isfinite(*v)) {
        throw Error(Errc::ParseError, "non-numeric value '" + fields[c] + "' in column " + header[c], line_no);
      }
      row.values.push_back(*v);
    }
    if (fields.back() != "0" && fields.back() != "1") {
      throw Error(Errc::ParseError, "label must be 0 or 1, found '" + fields.back() + "'", line_no);
    }
    row.label = fields.back() == "1" ? 1 : 0;
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

std::string provenance_path(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  if (p.extension() == ".csv") p.replace_extension();
  return p.string() + ".prov.tsv";
}

void write_csv(const PairDataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  write_csv(ds, out);
  if (ds.provenance.empty()) return;
  const auto prov_path = provenance_path(path);
  std::ofstream prov(prov_path, std::ios::binary);
  if (!prov) throw Error(Errc::IoError, "cannot write " + prov_path);
  for (std::size_t i = 0; i < ds.provenance.size(); ++i) {
    prov << i << '\t' << ds.provenance[i].first << '\t' << ds.provenance[i].second << '\n';
  }
  if (!prov) throw Error(Errc::IoError, "failed writing " + prov_path);
}

PairDataset read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  auto ds = read_csv(in);
  const auto prov_path = provenance_path(path);
  std::ifstream prov(prov_path, std::ios::binary);
  if (!prov) return ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(prov, line)) {
    ++line_no;
    const auto text = trim_cr(line);
    if (text.empty()) continue;
    const auto fields = split_fields(text, '\t');
    const auto index = fields.size() == 3 ? numeric_text::parse_int<std::size_t>(fields[0]) : std::nullopt;
    if (!index || *index != ds.provenance.size()) {
      throw Error(Errc::ParseError, "malformed provenance line in " + prov_path, line_no);
    }
    ds.provenance.emplace_back(fields[1], fields[2]);
  }
  if (ds.provenance.size() != ds.rows.size()) {
    throw Error(Errc::SchemaError, prov_path + " does not match the rows of " + path);
  }
  return ds;
}

}  // namespace stylomech
