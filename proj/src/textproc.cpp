#include "averify/textproc.hpp"

#include <cstddef>
#include <unordered_set>

namespace averify {
namespace {

constexpr char32_t kApostrophe = 0x27;
constexpr char32_t kRightSingleQuote = 0x2019;

struct Decoded {
    char32_t cp;
    std::size_t len;  // bytes consumed, >= 1
};

// Minimal UTF-8 decoder. Malformed bytes decode as themselves one byte at a
// time, so no input can make the scanner stall or throw.
Decoded decode_utf8(std::string_view s, std::size_t i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) return {b0, 1};

    std::size_t need = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        need = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        need = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        need = 3;
        cp = b0 & 0x07;
    } else {
        return {b0, 1};
    }
    if (i + need >= s.size()) return {b0, 1};
    for (std::size_t k = 1; k <= need; ++k) {
        const unsigned char bk = byte(i + k);
        if ((bk & 0xC0) != 0x80) return {b0, 1};
        cp = (cp << 6) | (bk & 0x3F);
    }
    return {cp, need + 1};
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_space_cp(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return (cp >= 0x2000 && cp <= 0x200B) || cp == 0x2028 || cp == 0x2029;
    }
}

bool is_ascii_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

char32_t to_lower_cp(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    // Latin-1 uppercase block, skipping the multiplication sign.
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    return cp;
}

bool is_apostrophe(char32_t cp) { return cp == kApostrophe || cp == kRightSingleQuote; }

bool is_word_cp(char32_t cp) {
    return !is_space_cp(cp) && !is_ascii_digit(cp) && !is_punct_codepoint(cp);
}

// Closers that may trail a terminal mark and still belong to the sentence.
bool is_closer_cp(char32_t cp) {
    switch (cp) {
        case '\'': case '"': case ')': case ']': case '}':
        case 0xBB:      // »
        case 0x2019:    // right single quote
        case 0x201D:    // right double quote
            return true;
        default:
            return false;
    }
}

bool is_terminal_cp(char32_t cp) { return cp == '.' || cp == '!' || cp == '?'; }

// Abbreviations whose trailing period does not end a sentence. Lowercase,
// period included.
const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> set = {
        "e.g.", "i.e.", "etc.",  "cf.",   "vs.",  "viz.",  "al.",   "ca.",
        "mr.",  "mrs.", "ms.",   "dr.",   "prof.", "rev.", "gen.",  "sen.",
        "rep.", "st.",  "jr.",   "sr.",   "no.",  "nos.",  "vol.",  "fig.",
        "figs.", "sec.", "dept.", "univ.", "inc.", "ltd.",  "co.",   "corp.",
        "approx.", "appt.", "apt.", "est.", "min.", "max.", "misc.", "tel.",
        "jan.", "feb.", "mar.", "apr.", "jun.", "jul.", "aug.", "sep.",
        "sept.", "oct.", "nov.", "dec.", "mon.", "tue.", "wed.", "thu.",
        "fri.", "sat.", "sun.",
    };
    return set;
}

// The maximal run of word chars and periods ending just before `dot_pos`,
// plus the period itself, lowercased: "(see e.g. this)" at the final e.g.
// period yields "e.g.".
std::string abbreviation_candidate(std::string_view text, std::size_t dot_pos) {
    std::size_t start = dot_pos;
    while (start > 0) {
        // Walk one codepoint back: resync to the previous UTF-8 lead byte.
        std::size_t prev = start - 1;
        while (prev > 0 && (static_cast<unsigned char>(text[prev]) & 0xC0) == 0x80) --prev;
        const Decoded d = decode_utf8(text, prev);
        if (d.cp != '.' && !is_word_cp(d.cp)) break;
        start = prev;
    }
    if (start == dot_pos) return {};
    std::string out;
    std::size_t i = start;
    while (i <= dot_pos) {
        const Decoded d = decode_utf8(text, i);
        encode_utf8(to_lower_cp(d.cp), out);
        i += d.len;
    }
    return out;
}

}  // namespace

const char* token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Word: return "word";
        case TokenKind::Punctuation: return "punctuation";
        case TokenKind::Number: return "number";
    }
    return "unknown";
}

bool is_punct_codepoint(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
               (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
    }
    switch (cp) {
        case 0xA1:   // ¡
        case 0xA7:   // §
        case 0xAB:   // «
        case 0xB6:   // ¶
        case 0xB7:   // ·
        case 0xBB:   // »
        case 0xBF:   // ¿
            return true;
        default:
            break;
    }
    // General punctuation, supplemental punctuation, CJK symbols, and
    // fullwidth forms; the everyday subset, not the full Unicode tables.
    if (cp >= 0x2010 && cp <= 0x2027) return true;
    if (cp >= 0x2030 && cp <= 0x205E) return true;
    if (cp >= 0x2E00 && cp <= 0x2E7F) return true;
    if (cp == 0x3001 || cp == 0x3002) return true;
    if (cp >= 0x3008 && cp <= 0x3011) return true;
    if (cp >= 0x3014 && cp <= 0x301F) return true;
    if (cp >= 0xFF01 && cp <= 0xFF0F) return true;
    if (cp >= 0xFF1A && cp <= 0xFF20) return true;
    if (cp >= 0xFF3B && cp <= 0xFF40) return true;
    if (cp >= 0xFF5B && cp <= 0xFF65) return true;
    return false;
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::string current;
    TokenKind current_kind = TokenKind::Word;
    bool have_current = false;
    char32_t prev_cp = 0;

    const auto flush = [&] {
        if (have_current) {
            tokens.push_back({std::move(current), current_kind});
            current.clear();
            have_current = false;
        }
    };
    const auto append = [&](char32_t cp, TokenKind kind) {
        if (have_current && current_kind != kind) flush();
        current_kind = kind;
        have_current = true;
        encode_utf8(cp, current);
    };

    std::size_t i = 0;
    while (i < text.size()) {
        const Decoded d = decode_utf8(text, i);
        const char32_t cp = d.cp;
        if (is_space_cp(cp)) {
            flush();
        } else if (is_ascii_digit(cp)) {
            append(cp, TokenKind::Number);
        } else if (is_punct_codepoint(cp)) {
            bool internal_apostrophe = false;
            if (is_apostrophe(cp) && have_current && current_kind == TokenKind::Word &&
                is_word_cp(prev_cp)) {
                const std::size_t next = i + d.len;
                if (next < text.size() && is_word_cp(decode_utf8(text, next).cp)) {
                    internal_apostrophe = true;
                }
            }
            if (internal_apostrophe) {
                // Keep the raw codepoint so token texts still reconstruct
                // the input; lexicon lookups normalize on their side.
                encode_utf8(cp, current);
            } else {
                flush();
                std::string mark;
                encode_utf8(cp, mark);
                tokens.push_back({std::move(mark), TokenKind::Punctuation});
            }
        } else {
            append(to_lower_cp(cp), TokenKind::Word);
        }
        prev_cp = cp;
        i += d.len;
    }
    flush();
    return tokens;
}

std::vector<std::string> punctuation_chars(std::string_view raw) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < raw.size()) {
        const Decoded d = decode_utf8(raw, i);
        if (is_punct_codepoint(d.cp)) {
            std::string mark;
            encode_utf8(d.cp, mark);
            out.push_back(std::move(mark));
        }
        i += d.len;
    }
    return out;
}

Document segment(std::string_view text) {
    Document doc;
    const auto close = [&](std::size_t begin, std::size_t end) {
        // Trim whitespace on both sides of the slice.
        while (begin < end) {
            const Decoded d = decode_utf8(text, begin);
            if (!is_space_cp(d.cp)) break;
            begin += d.len;
        }
        std::size_t trimmed = begin;
        std::size_t j = begin;
        while (j < end) {
            const Decoded d = decode_utf8(text, j);
            j += d.len;
            if (!is_space_cp(d.cp)) trimmed = j;
        }
        if (trimmed <= begin) return;
        Sentence s;
        s.raw = std::string(text.substr(begin, trimmed - begin));
        s.tokens = tokenize(s.raw);
        if (!s.tokens.empty()) doc.sentences.push_back(std::move(s));
    };

    constexpr std::size_t npos = std::string_view::npos;
    std::size_t start = npos;
    std::size_t i = 0;
    while (i < text.size()) {
        const Decoded d = decode_utf8(text, i);
        const char32_t cp = d.cp;

        if (cp == '\n') {
            if (start != npos) close(start, i);
            start = npos;
            i += d.len;
            continue;
        }
        if (is_terminal_cp(cp)) {
            if (start == npos) start = i;
            // Swallow the whole terminal run, then trailing closers.
            std::size_t run_end = i;
            std::size_t run_count = 0;
            bool only_periods = true;
            while (run_end < text.size()) {
                const Decoded t = decode_utf8(text, run_end);
                if (!is_terminal_cp(t.cp)) break;
                if (t.cp != '.') only_periods = false;
                ++run_count;
                run_end += t.len;
            }
            std::size_t close_end = run_end;
            while (close_end < text.size()) {
                const Decoded t = decode_utf8(text, close_end);
                if (!is_closer_cp(t.cp)) break;
                close_end += t.len;
            }
            const bool at_eot = close_end >= text.size();
            const bool before_space = !at_eot && is_space_cp(decode_utf8(text, close_end).cp);
            bool boundary = at_eot || before_space;
            if (boundary && run_count == 1 && only_periods) {
                const std::string cand = abbreviation_candidate(text, i);
                if (!cand.empty() && abbreviations().count(cand) > 0) boundary = false;
            }
            if (boundary) {
                close(start, close_end);
                start = npos;
                i = close_end;
            } else {
                i = run_end;
            }
            continue;
        }
        if (start == npos && !is_space_cp(cp)) start = i;
        i += d.len;
    }
    if (start != npos) close(start, text.size());
    return doc;
}

}  // namespace averify
