#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stylomech/text.hpp"

namespace stylomech {

/// Generative style of one synthetic author.
struct AuthorStyleParams {
  double mean_sentence_len = 14.0;
  double std_sentence_len = 5.0;
  /// Per-1000-token rates of the mid-sentence marks (, ; : -) and relative
  /// weights of the sentence terminators (. ? !).
  std::map<std::string, double> punct_rates;
  /// Share of words drawn from `func_word_weights` (English mode).
  double func_word_share = 0.45;
  std::map<std::string, double> func_word_weights;
  std::vector<std::pair<std::string, double>> vocab;
  bool rs_mode = false;
  double rs_vowel_drop_prob = 0.0;
  double en_mix_prob = 0.0;
  /// English words mixed into RS text.
  std::vector<std::pair<std::string, double>> en_mix_vocab;
};

/// Mid-sentence marks and terminators understood by the generator.
inline constexpr const char* kSynthMidMarks[] = {",", ";", ":", "-"};
inline constexpr const char* kSynthTerminators[] = {".", "?", "!"};

/// The parameters every author starts from before the spread is applied.
AuthorStyleParams base_style(bool rs_mode);

/// Perturbs `base_style` by `spread` (0 gives the base exactly; 1 is the
/// documented full spread) with the given generator seed.
AuthorStyleParams sample_style(bool rs_mode, double spread, std::uint64_t seed);

/// `n_docs` documents of exactly `words_per_doc` words each: sentence
/// lengths from a normal clipped to [2, 60], words drawn by weight,
/// mid-sentence marks placed so their per-1000-token rates match
/// `punct_rates` in expectation. In RS mode each lexicon word loses each
/// vowel with `rs_vowel_drop_prob` and words are English with
/// `en_mix_prob`. Throws Error(InvalidParams) for out-of-range parameters.
std::vector<std::string> gen_author_docs(const AuthorStyleParams& params, std::size_t n_docs,
                                         std::size_t words_per_doc, std::uint64_t seed);

struct CorpusSpec {
  std::size_t n_authors = 40;
  std::size_t docs_per_author = 6;
  std::size_t words_per_doc = 300;
  double spread = 1.0;
  std::uint64_t seed = 0;
  bool rs_mode = false;
};

struct SynthAuthor {
  std::string id;
  AuthorStyleParams params;
  std::vector<std::string> docs;
};

struct SynthCorpus {
  CorpusSpec spec;
  std::vector<SynthAuthor> authors;

  /// doc_id "<author>/<docNN>", in author then document order.
  std::vector<RawDocument> documents() const;
};

/// Author i draws its style with seed mix(seed, 2i) and its documents with
/// mix(seed, 2i + 1). Throws Error(InvalidParams) for fewer than two
/// authors, zero documents or a negative spread.
SynthCorpus gen_corpus(const CorpusSpec& spec, std::size_t threads = 1);

/// Writes `<dir>/<author>/<doc>.txt` for every document plus `<dir>/synth.cfg`
/// (key=value: the corpus spec and each author's scalar parameters).
void write_corpus(const SynthCorpus& corpus, const std::string& dir);

std::string synth_config_text(const SynthCorpus& corpus);

}  // namespace stylomech
