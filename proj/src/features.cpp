#include "averify/features.hpp"

#include <algorithm>
#include <stdexcept>

namespace averify {
namespace {

// Length of the longest lexicon surface formed by consecutive word tokens
// starting at `pos`, or 0. Single words count; longer phrases win.
std::size_t longest_match_at(const std::vector<Token>& tokens, std::size_t pos,
                             const Lexicon& lex) {
    if (pos >= tokens.size() || tokens[pos].kind != TokenKind::Word) return 0;
    std::string joined = tokens[pos].text;
    std::size_t best = lex.contains_surface(joined) ? 1 : 0;
    if (!lex.is_phrase_start(tokens[pos].text)) return best;
    const std::size_t max_len = std::min(lex.max_phrase_len(), tokens.size() - pos);
    for (std::size_t len = 2; len <= max_len; ++len) {
        const Token& next = tokens[pos + len - 1];
        if (next.kind != TokenKind::Word) break;
        joined.push_back(' ');
        joined += next.text;
        if (lex.contains_surface(joined)) best = len;
    }
    return best;
}

// Longest lexicon surface formed by consecutive word tokens ending at `pos`.
std::size_t longest_match_ending_at(const std::vector<Token>& tokens, std::size_t pos,
                                    const Lexicon& lex) {
    if (tokens[pos].kind != TokenKind::Word) return 0;
    std::size_t best = 0;
    const std::size_t max_len = std::min(lex.max_phrase_len(), pos + 1);
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t start = pos + 1 - len;
        if (tokens[start].kind != TokenKind::Word) break;
        std::string joined;
        for (std::size_t k = start; k <= pos; ++k) {
            if (!joined.empty()) joined.push_back(' ');
            joined += tokens[k].text;
        }
        if (lex.contains_surface(joined)) best = len;
    }
    return best;
}

// Marks each token as topic-agnostic or not: punctuation always is, numbers
// never are, and words are when a greedy left-to-right longest-match scan
// covers them with a lexicon surface.
std::vector<char> mark_topic_agnostic(const std::vector<Token>& tokens, const Lexicon& lex) {
    std::vector<char> ta(tokens.size(), 0);
    std::size_t i = 0;
    while (i < tokens.size()) {
        const Token& tok = tokens[i];
        if (tok.kind == TokenKind::Punctuation) {
            ta[i++] = 1;
            continue;
        }
        if (tok.kind == TokenKind::Number) {
            ++i;
            continue;
        }
        const std::size_t len = longest_match_at(tokens, i, lex);
        if (len == 0) {
            ++i;
            continue;
        }
        for (std::size_t k = 0; k < len; ++k) ta[i + k] = 1;
        i += len;
    }
    return ta;
}

std::string join_tokens(const std::vector<Token>& tokens, std::size_t begin, std::size_t len) {
    std::string out;
    for (std::size_t k = begin; k < begin + len; ++k) {
        if (!out.empty()) out.push_back(' ');
        out += tokens[k].text;
    }
    return out;
}

void extract_punct_ngrams(const Document& doc, std::size_t n, FeatureBag& bag) {
    for (const Sentence& s : doc.sentences) {
        const std::vector<std::string> marks = punctuation_chars(s.raw);
        if (marks.size() < n) continue;
        for (std::size_t i = 0; i + n <= marks.size(); ++i) {
            std::string gram;
            for (std::size_t k = 0; k < n; ++k) gram += marks[i + k];
            ++bag[gram];
        }
    }
}

void extract_starters(const Document& doc, const Lexicon& lex, FeatureBag& bag) {
    for (const Sentence& s : doc.sentences) {
        const auto& toks = s.tokens;
        if (const std::size_t len = longest_match_at(toks, 0, lex); len > 0) {
            ++bag[join_tokens(toks, 0, len)];
        }
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (toks[i].kind != TokenKind::Punctuation) continue;
            if (toks[i].text != "," && toks[i].text != ";") continue;
            if (const std::size_t len = longest_match_at(toks, i + 1, lex); len > 0) {
                ++bag[toks[i].text + " " + join_tokens(toks, i + 1, len)];
            }
        }
    }
}

void extract_endings(const Document& doc, const Lexicon& lex, FeatureBag& bag) {
    for (const Sentence& s : doc.sentences) {
        const auto& toks = s.tokens;
        std::size_t last = toks.size();
        for (std::size_t i = toks.size(); i-- > 0;) {
            if (toks[i].kind != TokenKind::Punctuation) {
                last = i;
                break;
            }
        }
        if (last == toks.size() || toks[last].kind != TokenKind::Word) continue;
        if (const std::size_t len = longest_match_ending_at(toks, last, lex); len > 0) {
            ++bag[join_tokens(toks, last + 1 - len, len)];
        }
    }
}

void extract_token_ngrams(const Document& doc, std::size_t n, const Lexicon& lex,
                          FeatureBag& bag) {
    for (const Sentence& s : doc.sentences) {
        const auto& toks = s.tokens;
        const std::vector<char> ta = mark_topic_agnostic(toks, lex);
        if (n == 1) {
            for (std::size_t i = 0; i < toks.size(); ++i) {
                if (ta[i] && toks[i].kind == TokenKind::Word) ++bag[toks[i].text];
            }
            continue;
        }
        if (toks.size() < n) continue;
        for (std::size_t i = 0; i + n <= toks.size(); ++i) {
            bool all_ta = true;
            for (std::size_t k = 0; k < n && all_ta; ++k) all_ta = ta[i + k] != 0;
            if (all_ta) ++bag[join_tokens(toks, i, n)];
        }
    }
}

void extract_masked_ngrams(const Document& doc, std::size_t n, const Lexicon& lex,
                           FeatureBag& bag) {
    for (const Sentence& s : doc.sentences) {
        const auto& toks = s.tokens;
        if (toks.size() < n) continue;
        const std::vector<char> ta = mark_topic_agnostic(toks, lex);
        for (std::size_t i = 0; i + n <= toks.size(); ++i) {
            std::size_t masked = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (!ta[i + k]) ++masked;
            }
            if (masked != 1) continue;
            std::string gram;
            for (std::size_t k = 0; k < n; ++k) {
                if (!gram.empty()) gram.push_back(' ');
                gram += ta[i + k] ? toks[i + k].text : "#";
            }
            ++bag[gram];
        }
    }
}

}  // namespace

CategoryKind category_kind(CategoryId id) {
    switch (id) {
        case CategoryId::F1:
        case CategoryId::F2:
        case CategoryId::F3:
            return CategoryKind::PunctuationNgram;
        case CategoryId::F4:
            return CategoryKind::SentenceStarter;
        case CategoryId::F5:
            return CategoryKind::SentenceEnding;
        case CategoryId::F6:
        case CategoryId::F7:
        case CategoryId::F8:
        case CategoryId::F9:
            return CategoryKind::TokenNgram;
        case CategoryId::F10:
        case CategoryId::F11:
            return CategoryKind::MaskedTokenNgram;
    }
    throw std::invalid_argument("unknown feature category id");
}

int category_gram_order(CategoryId id) {
    switch (id) {
        case CategoryId::F1: return 1;
        case CategoryId::F2: return 2;
        case CategoryId::F3: return 3;
        case CategoryId::F4: return 0;
        case CategoryId::F5: return 0;
        case CategoryId::F6: return 1;
        case CategoryId::F7: return 2;
        case CategoryId::F8: return 3;
        case CategoryId::F9: return 4;
        case CategoryId::F10: return 3;
        case CategoryId::F11: return 4;
    }
    throw std::invalid_argument("unknown feature category id");
}

std::string_view category_name(CategoryId id) {
    switch (id) {
        case CategoryId::F1: return "F1";
        case CategoryId::F2: return "F2";
        case CategoryId::F3: return "F3";
        case CategoryId::F4: return "F4";
        case CategoryId::F5: return "F5";
        case CategoryId::F6: return "F6";
        case CategoryId::F7: return "F7";
        case CategoryId::F8: return "F8";
        case CategoryId::F9: return "F9";
        case CategoryId::F10: return "F10";
        case CategoryId::F11: return "F11";
    }
    throw std::invalid_argument("unknown feature category id");
}

CategoryId parse_category(std::string_view name) {
    for (CategoryId id : all_categories()) {
        if (category_name(id) == name) return id;
    }
    throw std::invalid_argument("unknown feature category '" + std::string(name) + "'");
}

const std::vector<CategoryId>& all_categories() {
    static const std::vector<CategoryId> ids = [] {
        std::vector<CategoryId> v;
        for (int i = 1; i <= kNumCategories; ++i) v.push_back(static_cast<CategoryId>(i));
        return v;
    }();
    return ids;
}

FeatureBag extract(const Document& doc, CategoryId id, const Lexicon& lex) {
    FeatureBag bag;
    const auto n = static_cast<std::size_t>(category_gram_order(id));
    switch (category_kind(id)) {
        case CategoryKind::PunctuationNgram:
            extract_punct_ngrams(doc, n, bag);
            break;
        case CategoryKind::SentenceStarter:
            extract_starters(doc, lex, bag);
            break;
        case CategoryKind::SentenceEnding:
            extract_endings(doc, lex, bag);
            break;
        case CategoryKind::TokenNgram:
            extract_token_ngrams(doc, n, lex, bag);
            break;
        case CategoryKind::MaskedTokenNgram:
            extract_masked_ngrams(doc, n, lex, bag);
            break;
    }
    return bag;
}

FeatureVectorPair make_vector_pair(const FeatureBag& x_bag, const FeatureBag& y_bag) {
    FeatureVectorPair out;
    // Two-pointer merge of the sorted bag keys.
    auto xi = x_bag.begin();
    auto yi = y_bag.begin();
    while (xi != x_bag.end() || yi != y_bag.end()) {
        if (yi == y_bag.end() || (xi != x_bag.end() && xi->first < yi->first)) {
            out.vocab.push_back(xi->first);
            out.x.push_back(xi->second);
            out.y.push_back(0.0);
            ++xi;
        } else if (xi == x_bag.end() || yi->first < xi->first) {
            out.vocab.push_back(yi->first);
            out.x.push_back(0.0);
            out.y.push_back(yi->second);
            ++yi;
        } else {
            out.vocab.push_back(xi->first);
            out.x.push_back(xi->second);
            out.y.push_back(yi->second);
            ++xi;
            ++yi;
        }
    }
    const auto normalize = [](std::vector<double>& v) {
        double total = 0.0;
        for (double c : v) total += c;
        if (total <= 0.0) return;  // empty bag stays the all-zero vector
        for (double& c : v) c /= total;
    };
    normalize(out.x);
    normalize(out.y);
    return out;
}

FeatureVectorPair make_vector_pair(const Document& x_doc, const Document& y_doc,
                                   CategoryId id, const Lexicon& lex) {
    return make_vector_pair(extract(x_doc, id, lex), extract(y_doc, id, lex));
}

}  // namespace averify
