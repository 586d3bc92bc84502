// Sentence segmentation and tokenization.
//
// All downstream feature extraction is sentence-scoped, so the segmenter is
// the unit every text passes through first. Rules of the road:
//   - sentences end at runs of . ! ? followed by whitespace or end of text,
//     with a small abbreviation list suppressing false stops ("e.g.", "dr.");
//     trailing closers (quotes, brackets) stay with the sentence
//   - a hard newline always ends the current sentence
//   - tokens are maximal letter runs (word-internal apostrophes included),
//     maximal ASCII digit runs, or single punctuation marks
//   - word tokens are lowercased; otherwise token text preserves the input,
//     so concatenating token texts reconstructs the sentence modulo
//     whitespace and case
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace averify {

enum class TokenKind { Word, Punctuation, Number };

const char* token_kind_name(TokenKind kind);

struct Token {
    std::string text;
    TokenKind kind = TokenKind::Word;
    bool operator==(const Token&) const = default;
};

struct Sentence {
    std::string raw;            // trimmed source slice
    std::vector<Token> tokens;  // never empty
};

struct Document {
    std::vector<Sentence> sentences;
};

// True for ASCII punctuation and the common Unicode punctuation blocks
// (general punctuation, supplemental, CJK and fullwidth forms, and the
// handful of Latin-1 marks). Letters, digits, and whitespace are never
// punctuation.
bool is_punct_codepoint(char32_t cp);

// Tokenizes one sentence. An apostrophe (U+0027 or U+2019) flanked by
// letters stays inside the word token; every other punctuation codepoint is
// its own token.
std::vector<Token> tokenize(std::string_view sentence_text);

// Splits text into sentences and tokenizes each. Sentences that contain no
// tokens are dropped; the result may be empty for blank input.
Document segment(std::string_view text);

// Punctuation codepoints of a raw sentence in order, one UTF-8 encoded
// codepoint per element. Word-internal apostrophes count: this is a plain
// character scan, independent of tokenization.
std::vector<std::string> punctuation_chars(std::string_view raw);

}  // namespace averify
