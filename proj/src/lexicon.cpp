#include "averify/lexicon.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "averify/util.hpp"

namespace averify {
namespace {

// U+2019 as UTF-8, folded to '\'' so curly and straight apostrophes match.
std::string normalize_surface(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        if (i + 2 < raw.size() && static_cast<unsigned char>(raw[i]) == 0xE2 &&
            static_cast<unsigned char>(raw[i + 1]) == 0x80 &&
            static_cast<unsigned char>(raw[i + 2]) == 0x99) {
            out.push_back('\'');
            i += 3;
            continue;
        }
        char c = raw[i++];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
        out.push_back(c);
    }
    return out;
}

// Trims ASCII whitespace and collapses internal runs to single spaces.
std::string collapse_spaces(std::string_view s) {
    std::string out;
    bool pending_space = false;
    for (char c : s) {
        const bool ws = c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
        if (ws) {
            if (!out.empty()) pending_space = true;
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

std::size_t phrase_token_count(std::string_view surface) {
    return static_cast<std::size_t>(std::count(surface.begin(), surface.end(), ' ')) + 1;
}

}  // namespace

const std::vector<std::string>& lexicon_categories() {
    static const std::vector<std::string> names = {
        "conjunctions",
        "determiners",
        "prepositions",
        "pronouns",
        "quantifiers",
        "auxiliary_verbs",
        "delexicalised_verbs",
        "empty_verbs",
        "helping_verbs",
        "contractions",
        "adverbs_of_degree",
        "adverbs_of_frequency",
        "adverbs_of_place",
        "adverbs_of_time",
        "pronominal_adverbs",
        "focusing_adverbs",
        "conjunctive_adverbs",
        "transition_words",
        "transitional_phrases",
        "phrasal_prepositions",
    };
    return names;
}

bool is_lexicon_category(std::string_view name) {
    const auto& names = lexicon_categories();
    return std::find(names.begin(), names.end(), name) != names.end();
}

bool Lexicon::contains_surface(std::string_view surface) const {
    return find(surface) != nullptr;
}

const LexiconEntry* Lexicon::find(std::string_view surface) const {
    const auto it = entries_.find(normalize_surface(surface));
    return it == entries_.end() ? nullptr : &it->second;
}

bool Lexicon::is_phrase_start(std::string_view first_word) const {
    return phrase_first_words_.count(normalize_surface(first_word)) > 0;
}

std::set<std::string> Lexicon::categories_present() const {
    std::set<std::string> out;
    for (const auto& [surface, entry] : entries_) {
        out.insert(entry.categories.begin(), entry.categories.end());
    }
    return out;
}

void Lexicon::add(std::string surface, const std::string& category) {
    auto [it, inserted] = entries_.try_emplace(surface);
    if (inserted) it->second.surface = it->first;
    it->second.categories.insert(category);
    const std::size_t len = phrase_token_count(it->first);
    max_phrase_len_ = std::max(max_phrase_len_, len);
    if (len > 1) {
        phrase_first_words_.insert(it->first.substr(0, it->first.find(' ')));
    }
}

Lexicon parse_lexicon(std::string_view text, std::string_view origin) {
    Lexicon lex;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    const auto fail = [&](const std::string& what) {
        throw std::runtime_error(std::string(origin) + ":" + std::to_string(line_no) +
                                 ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string collapsed = collapse_spaces(line);
        if (collapsed.empty() || collapsed[0] == '#') continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) fail("malformed line, expected category<TAB>surface");
        const std::string category = collapse_spaces(line.substr(0, tab));
        const std::string surface = normalize_surface(collapse_spaces(line.substr(tab + 1)));
        if (!is_lexicon_category(category)) fail("unknown category '" + category + "'");
        if (surface.empty()) fail("empty surface");
        lex.add(surface, category);
    }
    if (lex.empty()) throw std::runtime_error(std::string(origin) + ": empty lexicon");
    return lex;
}

Lexicon load_lexicon(const std::string& path) {
    return parse_lexicon(read_text_file(path), path);
}

bool contains(const Lexicon& lex, const std::vector<std::string>& tokens) {
    if (tokens.empty()) return false;
    std::string joined;
    for (const auto& t : tokens) {
        if (!joined.empty()) joined.push_back(' ');
        joined += t;
    }
    return lex.contains_surface(joined);
}

}  // namespace averify
