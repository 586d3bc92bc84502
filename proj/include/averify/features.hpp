// Topic-agnostic feature extraction.
//
// Eleven feature categories, each turning a document into a bag of string
// features counted over sentences:
//   F1..F3   punctuation mark n-grams (n = 1, 2, 3), character level; every
//            non-punctuation character is skipped before windowing
//   F4       lexicon phrases opening a sentence, plus phrases opening a
//            clause after "," or ";" (feature keeps the mark: ", but")
//   F5       lexicon phrases ending a sentence (final punctuation ignored)
//   F6..F9   token n-grams (n = 1..4) built only from lexicon words and
//            punctuation tokens; n = 1 additionally drops punctuation
//   F10..F11 token n-grams (n = 3, 4) where exactly one token is not a
//            lexicon word and is masked as "#"
//
// Phrase membership is decided by a greedy longest-match scan over each
// sentence, so e.g. "of course" consumes both tokens as one lexicon hit.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "averify/lexicon.hpp"
#include "averify/textproc.hpp"

namespace averify {

enum class CategoryId : int {
    F1 = 1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11,
};

inline constexpr int kNumCategories = 11;

enum class CategoryKind {
    PunctuationNgram,
    SentenceStarter,
    SentenceEnding,
    TokenNgram,
    MaskedTokenNgram,
};

CategoryKind category_kind(CategoryId id);

// n-gram order, or 0 for the starter/ending categories.
int category_gram_order(CategoryId id);

// "F1".."F11".
std::string_view category_name(CategoryId id);

// Inverse of category_name; throws std::invalid_argument on unknown names.
CategoryId parse_category(std::string_view name);

// F1..F11 in order.
const std::vector<CategoryId>& all_categories();

using FeatureBag = std::map<std::string, std::uint32_t>;

FeatureBag extract(const Document& doc, CategoryId id, const Lexicon& lex);

// Two documents projected onto the union of their feature vocabularies.
struct FeatureVectorPair {
    std::vector<std::string> vocab;  // sorted lexicographically
    std::vector<double> x;           // first document, L1-normalized
    std::vector<double> y;           // second document, L1-normalized
};

// Aligns two bags on their vocabulary union and L1-normalizes each side. A
// document with an empty bag maps to the all-zero vector.
FeatureVectorPair make_vector_pair(const FeatureBag& x_bag, const FeatureBag& y_bag);

FeatureVectorPair make_vector_pair(const Document& x_doc, const Document& y_doc,
                                   CategoryId id, const Lexicon& lex);

}  // namespace averify
