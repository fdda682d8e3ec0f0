#include "stylomech/stylo_rs.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "stylomech/assets.hpp"
#include "stylomech/error.hpp"
#include "utf8.hpp"

namespace stylomech {

std::size_t levenshtein(std::string_view a, std::string_view b) {
  const auto s = utf8::to_codepoints(a);
  const auto t = utf8::to_codepoints(b);
  if (s.empty()) return t.size();
  if (t.empty()) return s.size();
  std::vector<std::size_t> prev(t.size() + 1);
  std::vector<std::size_t> cur(t.size() + 1);
  for (std::size_t j = 0; j <= t.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= t.size(); ++j) {
      const std::size_t substitution = prev[j - 1] + (s[i - 1] == t[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitution});
    }
    std::swap(prev, cur);
  }
  return prev[t.size()];
}

std::string consonant_skeleton(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (char c : fold_case(word)) {
    if (c != 'a' && c != 'e' && c != 'i' && c != 'o' && c != 'u') out.push_back(c);
  }
  return out;
}

std::string_view to_string(WordLanguage lang) {
  switch (lang) {
    case WordLanguage::English: return "English";
    case WordLanguage::RomanizedSinhala: return "RomanizedSinhala";
    case WordLanguage::Unknown: return "Unknown";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// lexicon

RsLexicon::RsLexicon(const std::vector<std::string>& rs_words, const std::vector<std::string>& en_words) {
  for (const auto& w : rs_words) rs_words_.insert(fold_case(w));
  for (const auto& w : en_words) en_words_.insert(fold_case(w));
  if (rs_words_.empty() || en_words_.empty()) {
    throw Error(Errc::LexiconError, "lexicon needs both Romanized Sinhala and English words");
  }
  std::vector<std::string> overlap;
  for (const auto& w : rs_words_) {
    if (en_words_.contains(w)) overlap.push_back(w);
  }
  if (!overlap.empty()) {
    std::sort(overlap.begin(), overlap.end());
    std::string list;
    for (const auto& w : overlap) list += (list.empty() ? "" : ", ") + w;
    throw Error(Errc::LexiconError, "words listed as both English and Romanized Sinhala: " + list);
  }
  for (const auto& w : rs_words_) {
    if (auto skeleton = consonant_skeleton(w); !skeleton.empty()) rs_skeletons_.insert(std::move(skeleton));
  }
}

namespace {
std::vector<std::string> builtin_english() {
  auto words = assets::lines(assets::get("en_common.txt"));
  const auto function_words = assets::lines(assets::get("function_words.txt"));
  words.insert(words.end(), function_words.begin(), function_words.end());
  return words;
}
}  // namespace

const RsLexicon& RsLexicon::builtin() {
  static const RsLexicon lexicon(assets::lines(assets::get("rs_lexicon.txt")), builtin_english());
  return lexicon;
}

RsLexicon RsLexicon::from_files(const std::string& rs_path, const std::string& en_path) {
  auto rs = assets::lines(assets::read_file(rs_path));
  auto en = en_path.empty() ? builtin_english() : assets::lines(assets::read_file(en_path));
  return RsLexicon(rs, en);
}

std::vector<std::string> RsLexicon::rs_words() const {
  std::vector<std::string> out(rs_words_.begin(), rs_words_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> RsLexicon::en_words() const {
  std::vector<std::string> out(en_words_.begin(), en_words_.end());
  std::sort(out.begin(), out.end());
  return out;
}

WordLanguage classify_word(std::string_view word, const RsLexicon& lexicon) {
  const auto folded = fold_case(word);
  if (lexicon.is_english(folded)) return WordLanguage::English;
  if (lexicon.is_rs(folded)) return WordLanguage::RomanizedSinhala;
  const auto skeleton = consonant_skeleton(folded);
  if (!skeleton.empty() && lexicon.has_rs_skeleton(skeleton)) return WordLanguage::RomanizedSinhala;
  return WordLanguage::Unknown;
}

// ---------------------------------------------------------------------------
// chunk features

double en_si_ratio(const Chunk& chunk, const RsLexicon& lexicon) {
  std::size_t english = 0;
  std::size_t sinhala = 0;
  for (const auto& t : chunk.tokens) {
    if (t.kind != TokenKind::Word) continue;
    switch (classify_word(t.text, lexicon)) {
      case WordLanguage::English: ++english; break;
      case WordLanguage::RomanizedSinhala: ++sinhala; break;
      case WordLanguage::Unknown: break;
    }
  }
  if (english + sinhala == 0) throw Error(Errc::NoClassifiableWords, "en_si_ratio: no classifiable words");
  if (sinhala == 0) return static_cast<double>(english);
  return static_cast<double>(english) / static_cast<double>(sinhala);
}

namespace {

struct Candidate {
  std::string word;
  std::string skeleton;
  std::size_t skeleton_length;  // code points
};

std::vector<Candidate> candidates(const Chunk& chunk, const RsLexicon& lexicon) {
  std::vector<Candidate> out;
  for (const auto& t : chunk.tokens) {
    if (t.kind != TokenKind::Word || classify_word(t.text, lexicon) == WordLanguage::English) continue;
    auto folded = fold_case(t.text);
    auto skeleton = consonant_skeleton(folded);
    const auto length = codepoint_length(skeleton);
    out.push_back({std::move(folded), std::move(skeleton), length});
  }
  return out;
}

std::size_t length_gap(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

std::vector<AlignedPair> align(const std::vector<Candidate>& a, const std::vector<Candidate>& b) {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges;  // (distance, i, j)
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (length_gap(a[i].skeleton_length, b[j].skeleton_length) > kSkeletonTolerance) continue;
      const auto d = levenshtein(a[i].skeleton, b[j].skeleton);
      if (d <= kSkeletonTolerance) edges.emplace_back(d, i, j);
    }
  }
  std::sort(edges.begin(), edges.end());
  std::vector<bool> used_a(a.size(), false);
  std::vector<bool> used_b(b.size(), false);
  std::vector<AlignedPair> pairs;
  for (const auto& [d, i, j] : edges) {
    if (used_a[i] || used_b[j]) continue;
    used_a[i] = used_b[j] = true;
    pairs.push_back({a[i].word, b[j].word, i, j});
  }
  return pairs;
}

}  // namespace

std::vector<AlignedPair> align_rs_words(const Chunk& a, const Chunk& b, const RsLexicon& lexicon) {
  return align(candidates(a, lexicon), candidates(b, lexicon));
}

RsPairFeatures rs_pair_features(const Chunk& a, const Chunk& b, const RsLexicon& lexicon) {
  RsPairFeatures f;
  f.ratio_a = en_si_ratio(a, lexicon);
  f.ratio_b = en_si_ratio(b, lexicon);
  f.ratio_abs_diff = std::abs(f.ratio_a - f.ratio_b);
  const auto cand_a = candidates(a, lexicon);
  const auto cand_b = candidates(b, lexicon);
  const auto pairs = align(cand_a, cand_b);
  f.aligned_count = pairs.size();
  std::vector<double> normalized;
  normalized.reserve(pairs.size());
  for (const auto& p : pairs) {
    const auto d = levenshtein(p.word_a, p.word_b);
    f.total_edit_distance += d;
    const auto longest = std::max(codepoint_length(p.word_a), codepoint_length(p.word_b));
    normalized.push_back(longest > 0 ? static_cast<double>(d) / static_cast<double>(longest) : 0.0);
  }
  if (!pairs.empty()) {
    // Summed in sorted order so swapping the chunks gives the same bits.
    std::sort(normalized.begin(), normalized.end());
    double sum = 0.0;
    for (double v : normalized) sum += v;
    f.mean_normalized_distance = sum / static_cast<double>(pairs.size());
  }
  const auto candidate_total = cand_a.size() + cand_b.size();
  if (candidate_total > 0) {
    f.unaligned_fraction =
        static_cast<double>(candidate_total - 2 * pairs.size()) / static_cast<double>(candidate_total);
  }
  return f;
}

Chunk as_chunk(std::string_view text, std::string_view source_document) {
  return Chunk{tokenize(text), std::string(source_document)};
}

}  // namespace stylomech
