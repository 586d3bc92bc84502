// Verification cases, corpus JSONL I/O, and the synthetic corpus generator.
//
// A verification case asks: were the known documents and the unknown
// document written by the same person? On disk a corpus is JSONL, one case
// per line:
//   {"case_id": "...", "known_docs": ["..."], "unknown_doc": "...",
//    "label": "Y" | "N" | null}
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "averify/textproc.hpp"

namespace averify {

enum class Label { Y, N };

char label_char(Label label);
Label parse_label(std::string_view text);  // throws on anything but "Y"/"N"

struct VerificationCase {
    std::string case_id;
    std::vector<std::string> known_docs;  // never empty
    std::string unknown_doc;
    std::optional<Label> label;  // empty for unlabeled inference input
};

struct CorpusMeta {
    std::string name;   // defaults to the source file stem
    std::string split;  // "train", "test", or empty; derived, never persisted
};

struct Corpus {
    CorpusMeta meta;
    std::vector<VerificationCase> cases;

    std::size_t count_label(Label label) const;
};

// Loads JSONL. Throws std::runtime_error naming the path and line on parse
// or schema errors, duplicate case ids, or empty files. With
// `require_balanced` the labeled Y and N counts must match exactly and every
// case must be labeled.
Corpus load_corpus(const std::string& path, bool require_balanced = false);

void save_corpus(const Corpus& corpus, const std::string& path);

// The profile-based pairing: all known documents concatenated, in order,
// joined by "\n" (a newline is also a sentence boundary, so documents never
// blend into one sentence).
std::string profile_text(const VerificationCase& c);

struct ProfiledCase {
    Document unknown;
    Document known;  // segmented profile_text
};

ProfiledCase profile(const VerificationCase& c);

// --- Synthetic corpus generation -----------------------------------------
//
// Authors are style bundles: punctuation habits, favorite function words and
// collocations, sentence length tendencies. Documents mix those habits with
// per-document topic words drawn from procedurally built pools that never
// collide with the function-word inventory. Each author contributes one
// same-author case (label Y) and one impostor case (label N), so every
// generated corpus is balanced; authors are split disjointly between train
// and test. With `cross_topic`, unknown documents of Y cases draw topic
// words from a letter-disjoint second pool, while N-case impostors reuse the
// topic words of the known documents they are forged against.

struct GeneratorConfig {
    int authors = 100;
    int docs_per_author = 3;  // known documents per author
    int sentences_per_doc_min = 25;
    int sentences_per_doc_max = 45;
    int tokens_per_sentence_min = 7;
    int tokens_per_sentence_max = 16;
    int topic_words_per_doc = 12;
    double topic_word_ratio = 0.35;  // chance a content slot emits a topic word
    int style_skew = 3;              // higher concentrates each author's preferences
    bool cross_topic = true;
    double train_ratio = 0.4;
    std::string corpus_name = "synthetic";

    // Throws std::invalid_argument on out-of-range or inconsistent values
    // (each split needs at least two authors).
    void validate() const;

    static GeneratorConfig from_json_file(const std::string& path);
};

struct GeneratedCorpora {
    Corpus train;
    Corpus test;
};

// Deterministic: equal config and seed give byte-identical corpora.
GeneratedCorpora generate_synthetic(const GeneratorConfig& config, std::uint64_t seed);

}  // namespace averify
