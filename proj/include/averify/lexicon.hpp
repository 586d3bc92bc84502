// Topic-agnostic word and phrase inventory.
//
// A lexicon maps lowercase surfaces (single words or space-separated
// multi-word phrases) to the closed set of function-word categories they
// belong to. The bundled inventory lives in data/lexicon.tsv; loaders accept
// any file in the same format.
#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace averify {

// The closed set of category names a lexicon entry may carry.
const std::vector<std::string>& lexicon_categories();
bool is_lexicon_category(std::string_view name);

struct LexiconEntry {
    std::string surface;  // lowercase, single-space separated
    std::set<std::string> categories;
};

class Lexicon {
  public:
    // True if `surface` is an entry. The query is normalized the same way
    // stored surfaces are (typographic apostrophes folded to U+0027), so
    // callers may pass raw token text.
    bool contains_surface(std::string_view surface) const;

    // Entry for `surface` after normalization, or nullptr.
    const LexiconEntry* find(std::string_view surface) const;

    // True if at least one multi-word phrase starts with `first_word`.
    bool is_phrase_start(std::string_view first_word) const;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    // Token count of the longest phrase; 1 for a single-word-only lexicon.
    std::size_t max_phrase_len() const { return max_phrase_len_; }

    const std::map<std::string, LexiconEntry>& entries() const { return entries_; }
    std::set<std::string> categories_present() const;

    void add(std::string surface, const std::string& category);

  private:
    std::map<std::string, LexiconEntry> entries_;  // keyed by normalized surface
    std::unordered_set<std::string> phrase_first_words_;
    std::size_t max_phrase_len_ = 0;
};

// Parses TSV content: `category<TAB>surface` per line, `#` starts a comment,
// blank lines ignored. Surfaces are lowercased, apostrophe-normalized, and
// internal whitespace runs collapse to single spaces. Duplicate surfaces
// merge their category sets. Throws std::runtime_error naming `origin` and
// the line number on malformed lines or unknown categories, and when the
// result is empty.
Lexicon parse_lexicon(std::string_view text, std::string_view origin = "<memory>");

// parse_lexicon over the file's content; I/O failures throw with the path.
Lexicon load_lexicon(const std::string& path);

// True iff the tokens, joined by single spaces, form an entry surface.
bool contains(const Lexicon& lex, const std::vector<std::string>& tokens);

}  // namespace averify
