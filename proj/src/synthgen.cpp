#include "stylomech/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "numeric_text.hpp"
#include "parallel.hpp"
#include "stylomech/assets.hpp"
#include "stylomech/error.hpp"
#include "stylomech/random.hpp"

namespace stylomech {

namespace {

// Shared content-word pool for English mode: made-up words whose suffixes
// steer the tagger (-ly adverbs, -ing/-ed verbs, -tion nouns, -ous
// adjectives; bare stems fall back to nouns).
const std::vector<std::string>& pseudo_word_pool() {
  static const std::vector<std::string> pool = [] {
    constexpr const char* onsets[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br",
                                      "gr", "pl", "st", "tr", "sk"};
    constexpr const char* nuclei[] = {"a", "e", "i", "o", "u", "ai", "ou"};
    constexpr const char* suffixes[] = {"", "", "", "", "ly", "ing", "ing", "ed", "ed", "tion", "ous"};
    Rng rng(0x5eedf00dULL);
    std::vector<std::string> words;
    while (words.size() < 480) {
      std::string w;
      const auto syllables = 2 + rng.index(2);
      for (std::size_t s = 0; s < syllables; ++s) {
        w += onsets[rng.index(std::size(onsets))];
        w += nuclei[rng.index(std::size(nuclei))];
      }
      w += suffixes[rng.index(std::size(suffixes))];
      if (std::find(words.begin(), words.end(), w) == words.end()) words.push_back(std::move(w));
    }
    return words;
  }();
  return pool;
}

std::vector<std::pair<std::string, double>> uniform_weights(const std::vector<std::string>& words) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& w : words) out.emplace_back(w, 1.0);
  return out;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

void check(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::InvalidParams, what);
}

bool probability(double p) { return p >= 0.0 && p <= 1.0; }

void validate(const AuthorStyleParams& p) {
  check(std::isfinite(p.mean_sentence_len) && p.mean_sentence_len >= 1.0, "mean_sentence_len must be at least 1");
  check(std::isfinite(p.std_sentence_len) && p.std_sentence_len >= 0.0, "std_sentence_len must be non-negative");
  check(probability(p.func_word_share), "func_word_share must lie in [0,1]");
  check(probability(p.rs_vowel_drop_prob), "rs_vowel_drop_prob must lie in [0,1]");
  check(probability(p.en_mix_prob), "en_mix_prob must lie in [0,1]");
  check(!p.vocab.empty(), "vocabulary is empty");
  double mid_total = 0.0;
  double terminator_total = 0.0;
  for (const auto& [mark, rate] : p.punct_rates) {
    check(std::isfinite(rate) && rate >= 0.0, "punctuation rate for '" + mark + "' must be non-negative");
    if (std::find(std::begin(kSynthMidMarks), std::end(kSynthMidMarks), mark) != std::end(kSynthMidMarks)) {
      mid_total += rate;
    } else if (std::find(std::begin(kSynthTerminators), std::end(kSynthTerminators), mark) !=
               std::end(kSynthTerminators)) {
      terminator_total += rate;
    } else {
      check(false, "unsupported punctuation mark '" + mark + "'");
    }
  }
  check(mid_total < 1000.0, "mid-sentence punctuation rates must total under 1000 per 1000 tokens");
  check(terminator_total > 0.0, "at least one terminator needs a positive weight");
  if (!p.rs_mode) {
    check(p.func_word_share == 0.0 || !p.func_word_weights.empty(), "function-word weights are empty");
  } else {
    check(p.en_mix_prob == 0.0 || !p.en_mix_vocab.empty(), "English mix vocabulary is empty");
  }
}

class DocWriter {
 public:
  DocWriter(const AuthorStyleParams& p, Rng& rng) : p_(p), rng_(rng) {
    for (const auto& [w, weight] : p.vocab) {
      vocab_.push_back(w);
      vocab_w_.push_back(weight);
    }
    for (const auto& [w, weight] : p.func_word_weights) {
      func_.push_back(w);
      func_w_.push_back(weight);
    }
    for (const auto& [w, weight] : p.en_mix_vocab) {
      mix_.push_back(w);
      mix_w_.push_back(weight);
    }
    for (const char* m : kSynthMidMarks) {
      const auto it = p.punct_rates.find(m);
      mid_rate_.push_back(it == p.punct_rates.end() ? 0.0 : it->second / 1000.0);
      mid_total_ += mid_rate_.back();
    }
    for (const char* m : kSynthTerminators) {
      const auto it = p.punct_rates.find(m);
      term_w_.push_back(it == p.punct_rates.end() ? 0.0 : it->second);
    }
  }

  std::string document(std::size_t words) {
    std::string out;
    std::size_t remaining = words;
    while (remaining > 0) {
      auto len = static_cast<std::size_t>(
          std::clamp(std::lround(rng_.normal(p_.mean_sentence_len, p_.std_sentence_len)), 2L, 60L));
      len = std::min(len, remaining);
      remaining -= len;
      if (!out.empty()) out += ' ';
      sentence(out, len);
    }
    return out;
  }

 private:
  void sentence(std::string& out, std::size_t len) {
    // Mark probability per gap, chosen so each mark's share of all tokens
    // (words, marks, terminator) equals its configured rate in expectation.
    std::vector<double> gap_prob(mid_rate_.size(), 0.0);
    if (len >= 2) {
      const double scale = static_cast<double>(len + 1) / ((1.0 - mid_total_) * static_cast<double>(len - 1));
      double sum = 0.0;
      for (std::size_t m = 0; m < gap_prob.size(); ++m) sum += gap_prob[m] = mid_rate_[m] * scale;
      if (sum > 1.0) {
        for (auto& q : gap_prob) q /= sum;
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      auto w = word();
      if (i == 0 && !w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
      if (i > 0) out += ' ';
      out += w;
      if (i + 1 < len) {
        double u = rng_.uniform();
        for (std::size_t m = 0; m < gap_prob.size(); ++m) {
          if (u < gap_prob[m]) {
            out += std::string_view(kSynthMidMarks[m]) == "-" ? " -" : kSynthMidMarks[m];
            break;
          }
          u -= gap_prob[m];
        }
      }
    }
    out += kSynthTerminators[rng_.weighted(term_w_)];
  }

  std::string word() {
    if (p_.rs_mode) {
      if (rng_.bernoulli(p_.en_mix_prob)) return mix_[rng_.weighted(mix_w_)];
      const auto& base = vocab_[rng_.weighted(vocab_w_)];
      if (p_.rs_vowel_drop_prob <= 0.0) return base;
      std::string w;
      for (char c : base) {
        if (is_vowel(c) && rng_.bernoulli(p_.rs_vowel_drop_prob)) continue;
        w += c;
      }
      return w.empty() ? base : w;
    }
    if (rng_.bernoulli(p_.func_word_share)) return func_[rng_.weighted(func_w_)];
    return vocab_[rng_.weighted(vocab_w_)];
  }

  const AuthorStyleParams& p_;
  Rng& rng_;
  std::vector<std::string> vocab_, func_, mix_;
  std::vector<double> vocab_w_, func_w_, mix_w_;
  std::vector<double> mid_rate_;
  double mid_total_ = 0.0;
  std::vector<double> term_w_;
};

}  // namespace

AuthorStyleParams base_style(bool rs_mode) {
  AuthorStyleParams p;
  p.rs_mode = rs_mode;
  p.punct_rates = {{",", 45.0}, {";", 4.0}, {":", 3.0}, {"-", 5.0}, {".", 8.0}, {"?", 1.0}, {"!", 1.0}};
  if (rs_mode) {
    p.vocab = uniform_weights(assets::lines(assets::get("rs_lexicon.txt")));
    p.en_mix_vocab = uniform_weights(assets::lines(assets::get("en_common.txt")));
    p.rs_vowel_drop_prob = 0.15;
    p.en_mix_prob = 0.2;
    p.func_word_share = 0.0;
  } else {
    p.vocab = uniform_weights(pseudo_word_pool());
    for (const auto& w : assets::lines(assets::get("function_words.txt"))) p.func_word_weights[w] = 1.0;
  }
  return p;
}

AuthorStyleParams sample_style(bool rs_mode, double spread, std::uint64_t seed) {
  check(std::isfinite(spread) && spread >= 0.0, "spread must be non-negative");
  auto p = base_style(rs_mode);
  Rng rng(seed);
  const double s = spread;
  p.mean_sentence_len = std::max(3.0, p.mean_sentence_len + s * rng.uniform(-8.0, 8.0));
  p.std_sentence_len = std::max(1.0, p.std_sentence_len * std::exp(s * rng.uniform(-0.7, 0.7)));
  for (const char* m : kSynthMidMarks) p.punct_rates[m] *= std::exp(s * rng.uniform(-1.5, 1.5));
  for (const char* m : kSynthTerminators) p.punct_rates[m] *= std::exp(s * rng.uniform(-1.5, 1.5));
  for (auto& [w, weight] : p.vocab) weight *= std::exp(s * rng.uniform(-4.5, 4.5));
  if (rs_mode) {
    p.rs_vowel_drop_prob = std::clamp(p.rs_vowel_drop_prob + s * rng.uniform(-0.15, 0.35), 0.0, 1.0);
    p.en_mix_prob = std::clamp(p.en_mix_prob + s * rng.uniform(-0.18, 0.45), 0.0, 1.0);
    for (auto& [w, weight] : p.en_mix_vocab) weight *= std::exp(s * rng.uniform(-2.0, 2.0));
  } else {
    p.func_word_share = std::clamp(p.func_word_share + s * rng.uniform(-0.1, 0.1), 0.0, 1.0);
    for (auto& [w, weight] : p.func_word_weights) weight *= std::exp(s * rng.uniform(-2.0, 2.0));
  }
  return p;
}

std::vector<std::string> gen_author_docs(const AuthorStyleParams& params, std::size_t n_docs,
                                         std::size_t words_per_doc, std::uint64_t seed) {
  check(n_docs >= 1, "n_docs must be at least 1");
  check(words_per_doc >= 1, "words_per_doc must be at least 1");
  validate(params);
  Rng rng(seed);
  DocWriter writer(params, rng);
  std::vector<std::string> docs;
  docs.reserve(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d) docs.push_back(writer.document(words_per_doc));
  return docs;
}

SynthCorpus gen_corpus(const CorpusSpec& spec, std::size_t threads) {
  check(spec.n_authors >= 2, "n_authors must be at least 2");
  check(spec.docs_per_author >= 1, "docs_per_author must be at least 1");
  check(std::isfinite(spec.spread) && spec.spread >= 0.0, "spread must be non-negative");
  SynthCorpus corpus;
  corpus.spec = spec;
  corpus.authors.resize(spec.n_authors);
  const auto digits = std::to_string(spec.n_authors - 1).size();
  detail::parallel_for(spec.n_authors, threads, [&](std::size_t i) {
    auto& a = corpus.authors[i];
    a.id = fmt::format("author{:0{}}", i, digits);
    a.params = sample_style(spec.rs_mode, spec.spread, mix(spec.seed, 2 * i));
    a.docs = gen_author_docs(a.params, spec.docs_per_author, spec.words_per_doc, mix(spec.seed, 2 * i + 1));
  });
  return corpus;
}

std::vector<RawDocument> SynthCorpus::documents() const {
  std::vector<RawDocument> out;
  const auto digits = std::to_string(spec.docs_per_author - 1).size();
  const auto mode = spec.rs_mode ? LanguageMode::RomanizedSinhala : LanguageMode::English;
  for (const auto& a : authors) {
    for (std::size_t d = 0; d < a.docs.size(); ++d) {
      out.push_back({fmt::format("{}/doc{:0{}}", a.id, d, digits), a.docs[d], a.id, mode});
    }
  }
  return out;
}

std::string synth_config_text(const SynthCorpus& corpus) {
  const auto& s = corpus.spec;
  std::string out;
  out += fmt::format("mode={}\n", s.rs_mode ? "rs" : "english");
  out += fmt::format("n_authors={}\ndocs_per_author={}\nwords_per_doc={}\n", s.n_authors, s.docs_per_author,
                     s.words_per_doc);
  out += fmt::format("spread={}\nseed={}\n", numeric_text::format(s.spread), s.seed);
  for (const auto& a : corpus.authors) {
    const auto& p = a.params;
    auto put = [&](std::string_view key, double v) {
      out += fmt::format("{}.{}={}\n", a.id, key, numeric_text::format(v));
    };
    put("mean_sentence_len", p.mean_sentence_len);
    put("std_sentence_len", p.std_sentence_len);
    for (const auto& [mark, rate] : p.punct_rates) put("punct[" + mark + "]", rate);
    if (p.rs_mode) {
      put("rs_vowel_drop_prob", p.rs_vowel_drop_prob);
      put("en_mix_prob", p.en_mix_prob);
    } else {
      put("func_word_share", p.func_word_share);
    }
  }
  return out;
}

void write_corpus(const SynthCorpus& corpus, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  for (const auto& doc : corpus.documents()) {
    const fs::path path = fs::path(dir) / (doc.doc_id + ".txt");
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(Errc::IoError, "cannot create " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary);
    out << doc.text << '\n';
    if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  }
  std::ofstream cfg(fs::path(dir) / "synth.cfg", std::ios::binary);
  cfg << synth_config_text(corpus);
  if (!cfg) throw Error(Errc::IoError, "cannot write " + (fs::path(dir) / "synth.cfg").string());
}

}  // namespace stylomech
