#include "averify/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "averify/util.hpp"

namespace averify {
namespace {

using json = nlohmann::json;

json case_to_json(const VerificationCase& c) {
    json known = json::array();
    for (const auto& d : c.known_docs) known.push_back(d);
    json out{{"case_id", c.case_id},
             {"known_docs", std::move(known)},
             {"unknown_doc", c.unknown_doc}};
    if (c.label) {
        out["label"] = std::string(1, label_char(*c.label));
    } else {
        out["label"] = nullptr;
    }
    return out;
}

}  // namespace

char label_char(Label label) { return label == Label::Y ? 'Y' : 'N'; }

Label parse_label(std::string_view text) {
    if (text == "Y") return Label::Y;
    if (text == "N") return Label::N;
    throw std::runtime_error("invalid label '" + std::string(text) + "', expected Y or N");
}

std::size_t Corpus::count_label(Label label) const {
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [&](const VerificationCase& c) {
            return c.label && *c.label == label;
        }));
}

Corpus load_corpus(const std::string& path, bool require_balanced) {
    const std::string text = read_text_file(path);
    Corpus corpus;
    corpus.meta.name = std::filesystem::path(path).stem().string();
    if (corpus.meta.name.ends_with("train")) {
        corpus.meta.split = "train";
    } else if (corpus.meta.name.ends_with("test")) {
        corpus.meta.split = "test";
    }

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::set<std::string> seen_ids;
    const auto fail = [&](const std::string& what) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::exception& e) {
            fail(std::string("invalid JSON: ") + e.what());
        }
        if (!doc.is_object()) fail("case must be a JSON object");
        VerificationCase c;
        if (!doc.contains("case_id") || !doc["case_id"].is_string()) {
            fail("missing string field 'case_id'");
        }
        c.case_id = doc["case_id"].get<std::string>();
        if (c.case_id.empty()) fail("empty case_id");
        if (!seen_ids.insert(c.case_id).second) fail("duplicate case_id '" + c.case_id + "'");
        if (!doc.contains("known_docs") || !doc["known_docs"].is_array() ||
            doc["known_docs"].empty()) {
            fail("'known_docs' must be a non-empty array");
        }
        for (const json& d : doc["known_docs"]) {
            if (!d.is_string()) fail("'known_docs' entries must be strings");
            c.known_docs.push_back(d.get<std::string>());
        }
        if (!doc.contains("unknown_doc") || !doc["unknown_doc"].is_string()) {
            fail("missing string field 'unknown_doc'");
        }
        c.unknown_doc = doc["unknown_doc"].get<std::string>();
        if (doc.contains("label") && !doc["label"].is_null()) {
            if (!doc["label"].is_string()) fail("'label' must be \"Y\", \"N\", or null");
            try {
                c.label = parse_label(doc["label"].get<std::string>());
            } catch (const std::exception& e) {
                fail(e.what());
            }
        }
        corpus.cases.push_back(std::move(c));
    }
    if (corpus.cases.empty()) throw std::runtime_error(path + ": empty corpus");
    if (require_balanced) {
        for (const VerificationCase& c : corpus.cases) {
            if (!c.label) {
                throw std::runtime_error(path + ": unlabeled case '" + c.case_id +
                                         "' in a corpus required to be balanced");
            }
        }
        const std::size_t y = corpus.count_label(Label::Y);
        const std::size_t n = corpus.count_label(Label::N);
        if (y != n) {
            throw std::runtime_error(path + ": unbalanced corpus (" + std::to_string(y) +
                                     " Y vs " + std::to_string(n) + " N)");
        }
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::string out;
    for (const VerificationCase& c : corpus.cases) {
        out += case_to_json(c).dump();
        out.push_back('\n');
    }
    write_text_file(path, out);
}

std::string profile_text(const VerificationCase& c) {
    if (c.known_docs.empty()) {
        throw std::invalid_argument("case '" + c.case_id + "' has no known documents");
    }
    std::string out;
    for (std::size_t i = 0; i < c.known_docs.size(); ++i) {
        if (i > 0) out.push_back('\n');
        out += c.known_docs[i];
    }
    return out;
}

ProfiledCase profile(const VerificationCase& c) {
    return {segment(c.unknown_doc), segment(profile_text(c))};
}

// --- Synthetic corpus generation -----------------------------------------

namespace {

// Deterministic helpers over the raw engine stream; the std distributions
// are implementation-defined, so outputs would differ across toolchains.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double real() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }  // [0, 1)
    bool chance(double p) { return real() < p; }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))];
    }

    std::size_t weighted(const std::vector<double>& w) {
        double total = 0.0;
        for (double x : w) total += x;
        double r = real() * total;
        for (std::size_t i = 0; i < w.size(); ++i) {
            r -= w[i];
            if (r < 0.0) return i;
        }
        return w.size() - 1;
    }

    // Skewed weights: raising uniforms to an integer power gives every
    // author a few favorites; higher skew, stronger favorites.
    std::vector<double> skewed_weights(std::size_t n, int skew) {
        std::vector<double> w(n);
        for (double& x : w) {
            const double u = 0.05 + real();
            x = 1.0;
            for (int k = 0; k < skew; ++k) x *= u;
        }
        return w;
    }
};

struct WordPools {
    std::vector<std::string> starters;
    std::vector<std::string> pronouns;
    std::vector<std::string> conjunctions;
    std::vector<std::string> degree;
    std::vector<std::string> helpers;
    std::vector<std::string> verbs;
    std::vector<std::string> determiners;
    std::vector<std::string> prepositions;
    std::vector<std::string> frequency;
    std::vector<std::string> time;
    std::vector<std::string> contractions;
};

const WordPools& pools() {
    static const WordPools p = {
        // starters (sentence openers; multi-word entries allowed)
        {"however", "so", "well", "anyway", "also", "then", "now", "actually",
         "of course", "in fact", "besides", "still", "thus", "meanwhile", "first",
         "moreover", "indeed", "at least", "for example", "on the other hand"},
        {"i", "we", "you", "he", "she", "they", "it", "this", "that", "everyone",
         "something", "anything", "nothing"},
        {"and", "but", "or", "because", "so", "though", "although", "yet", "while",
         "whereas"},
        {"very", "really", "quite", "so", "too", "pretty", "rather", "almost",
         "nearly", "just", "simply", "totally"},
        {"is", "was", "are", "were", "have", "has", "had", "will", "would", "can",
         "could", "should", "must", "might", "been", "be"},
        {"get", "gets", "got", "getting", "go", "goes", "going", "went", "gone",
         "make", "makes", "made", "making", "take", "takes", "took", "taken",
         "do", "does", "did", "done", "give", "gives", "gave", "given", "put",
         "puts", "keep", "keeps", "kept", "let", "lets", "set", "sets", "turn",
         "turns", "turned"},
        {"the", "a", "an", "this", "that", "these", "those", "some", "any", "each",
         "every", "no", "another", "other", "both", "either", "neither", "such",
         "my", "your", "his", "her", "its", "our", "their"},
        {"in", "on", "at", "with", "from", "of", "to", "for", "by", "over",
         "under", "about", "into", "through", "after", "before", "between",
         "against", "during", "without", "within", "around", "across", "behind",
         "beyond"},
        {"always", "never", "often", "sometimes", "usually", "rarely", "normally",
         "occasionally", "constantly", "frequently", "seldom", "again"},
        {"already", "immediately", "recently", "still", "then", "yet", "soon",
         "later", "earlier", "eventually", "finally", "meanwhile", "today", "now"},
        {"i'm", "i've", "i'll", "i'd", "it's", "that's", "there's", "we're",
         "we've", "you're", "don't", "doesn't", "didn't", "can't", "couldn't",
         "won't", "wouldn't", "isn't", "wasn't", "aren't", "they're", "he's",
         "she's", "let's", "haven't"},
    };
    return p;
}

// Sentence-final punctuation shapes an author can favor.
const std::vector<std::string>& terminal_forms() {
    static const std::vector<std::string> t = {".", "!", "?", "...", "?!", "!!"};
    return t;
}

struct AuthorStyle {
    std::vector<double> w_terminal;
    std::vector<double> w_starter, w_pron, w_conj, w_degree, w_helper, w_verb,
        w_det, w_prep, w_freq, w_time, w_contr;
    std::vector<double> w_slot;  // over the 10 body pools below
    double starter_rate = 0.0;
    double starter_comma_rate = 0.0;
    double comma_rate = 0.0;
    double semicolon_rate = 0.0;
    double paren_rate = 0.0;
    double quote_rate = 0.0;
    double contraction_rate = 0.0;
    char quote_char = '"';
    int len_min = 0, len_max = 0;
};

AuthorStyle sample_style(Rng& rng, const GeneratorConfig& cfg) {
    const WordPools& p = pools();
    const int skew = cfg.style_skew;
    AuthorStyle s;
    s.w_terminal = rng.skewed_weights(terminal_forms().size(), skew);
    s.w_starter = rng.skewed_weights(p.starters.size(), skew);
    s.w_pron = rng.skewed_weights(p.pronouns.size(), skew);
    s.w_conj = rng.skewed_weights(p.conjunctions.size(), skew);
    s.w_degree = rng.skewed_weights(p.degree.size(), skew);
    s.w_helper = rng.skewed_weights(p.helpers.size(), skew);
    s.w_verb = rng.skewed_weights(p.verbs.size(), skew);
    s.w_det = rng.skewed_weights(p.determiners.size(), skew);
    s.w_prep = rng.skewed_weights(p.prepositions.size(), skew);
    s.w_freq = rng.skewed_weights(p.frequency.size(), skew);
    s.w_time = rng.skewed_weights(p.time.size(), skew);
    s.w_contr = rng.skewed_weights(p.contractions.size(), skew);
    s.w_slot = rng.skewed_weights(10, skew);
    s.starter_rate = 0.15 + 0.7 * rng.real();
    s.starter_comma_rate = 0.2 + 0.7 * rng.real();
    s.comma_rate = 0.04 + 0.22 * rng.real();
    s.semicolon_rate = 0.08 * rng.real();
    s.paren_rate = 0.05 + 0.4 * rng.real();
    s.quote_rate = 0.05 + 0.35 * rng.real();
    s.contraction_rate = 0.1 + 0.75 * rng.real();
    s.quote_char = rng.chance(0.5) ? '"' : '\'';
    const int span = cfg.tokens_per_sentence_max - cfg.tokens_per_sentence_min;
    s.len_min = cfg.tokens_per_sentence_min + rng.range(0, span / 3);
    s.len_max = cfg.tokens_per_sentence_max - rng.range(0, span / 3);
    if (s.len_min > s.len_max) std::swap(s.len_min, s.len_max);
    return s;
}

// Letter-disjoint syllable sets (pool 0: a/o vowels, pool 1: e/u/i vowels),
// all length 3, so words from different pools can never collide and
// concatenations decode uniquely within a pool.
std::string topic_word(int pool, std::size_t index) {
    static const std::vector<std::string> syl_a = {
        "zab", "bol", "tak", "moz", "rad", "sog", "dop", "gaz",
        "vol", "paz", "mot", "bak", "loz", "tag", "rob", "kad"};
    static const std::vector<std::string> syl_b = {
        "que", "wen", "xun", "hec", "jun", "nuc", "wix", "cen",
        "hux", "jew", "nex", "cui", "qin", "wuc", "xen", "hun"};
    const auto& syl = pool == 0 ? syl_a : syl_b;
    const std::size_t s = syl.size();
    std::string word = syl[index % s] + syl[(index / s) % s];
    for (std::size_t high = index / (s * s); high > 0; high /= s) {
        word += syl[high % s];
    }
    return word;
}

class SentenceBuilder {
  public:
    void add_word(const std::string& word) {
        if (!text_.empty() && !glue_next_) text_.push_back(' ');
        glue_next_ = false;
        text_ += word;
    }

    // Attached to the preceding word: , ; and closers.
    void add_trailing(const std::string& mark) { text_ += mark; }

    // Attached to the following word: ( and opening quotes.
    void add_leading(const std::string& mark) {
        if (!text_.empty()) text_.push_back(' ');
        text_ += mark;
        glue_next_ = true;
    }

    std::string finish(const std::string& terminal) {
        text_ += terminal;
        if (!text_.empty() && text_[0] >= 'a' && text_[0] <= 'z') {
            text_[0] = static_cast<char>(text_[0] - 0x20);
        }
        return std::move(text_);
    }

  private:
    std::string text_;
    bool glue_next_ = false;
};

// One sentence in the author's voice, mixing function-word habits with
// topic words from `topic`.
std::string make_sentence(Rng& rng, const AuthorStyle& s,
                          const std::vector<std::string>& topic, double topic_ratio) {
    const WordPools& p = pools();
    SentenceBuilder out;
    int words = 0;
    const int target = rng.range(s.len_min, s.len_max);

    if (rng.chance(s.starter_rate)) {
        const std::string& starter = p.starters[rng.weighted(s.w_starter)];
        std::istringstream parts(starter);
        std::string w;
        while (parts >> w) {
            out.add_word(w);
            ++words;
        }
        if (rng.chance(s.starter_comma_rate)) out.add_trailing(",");
    }

    bool pending_contraction = rng.chance(s.contraction_rate);
    int paren_left = rng.chance(s.paren_rate) ? 1 : 0;
    int quote_left = rng.chance(s.quote_rate) ? 1 : 0;

    while (words < target) {
        const bool last = words + 1 >= target;
        std::string word;
        if (pending_contraction) {
            word = p.contractions[rng.weighted(s.w_contr)];
            pending_contraction = false;
        } else if (rng.chance(topic_ratio)) {
            word = topic[static_cast<std::size_t>(
                rng.range(0, static_cast<int>(topic.size()) - 1))];
        } else {
            switch (rng.weighted(s.w_slot)) {
                case 0: word = p.pronouns[rng.weighted(s.w_pron)]; break;
                case 1: word = p.conjunctions[rng.weighted(s.w_conj)]; break;
                case 2: word = p.degree[rng.weighted(s.w_degree)]; break;
                case 3: word = p.helpers[rng.weighted(s.w_helper)]; break;
                case 4: word = p.verbs[rng.weighted(s.w_verb)]; break;
                case 5: word = p.determiners[rng.weighted(s.w_det)]; break;
                case 6: word = p.prepositions[rng.weighted(s.w_prep)]; break;
                case 7: word = p.frequency[rng.weighted(s.w_freq)]; break;
                case 8: word = p.time[rng.weighted(s.w_time)]; break;
                default: word = p.helpers[rng.weighted(s.w_helper)]; break;
            }
        }

        if (quote_left > 0 && !last && rng.chance(0.12)) {
            const std::string q(1, s.quote_char);
            out.add_leading(q);
            out.add_word(word);
            out.add_trailing(q);
            --quote_left;
        } else if (paren_left > 0 && !last && rng.chance(0.12)) {
            out.add_leading("(");
            out.add_word(word);
            if (rng.chance(0.5) && words + 2 < target) {
                out.add_word(p.prepositions[rng.weighted(s.w_prep)]);
                ++words;
            }
            out.add_trailing(")");
            --paren_left;
        } else {
            out.add_word(word);
        }
        ++words;

        if (!last && words > 1) {
            if (rng.chance(s.comma_rate)) {
                out.add_trailing(",");
            } else if (rng.chance(s.semicolon_rate)) {
                out.add_trailing(";");
            }
        }
    }
    return out.finish(terminal_forms()[rng.weighted(s.w_terminal)]);
}

std::string make_document(Rng& rng, const AuthorStyle& s, const GeneratorConfig& cfg,
                          const std::vector<std::string>& topic) {
    const int sentences = rng.range(cfg.sentences_per_doc_min, cfg.sentences_per_doc_max);
    std::string doc;
    for (int i = 0; i < sentences; ++i) {
        if (i > 0) doc.push_back(' ');
        doc += make_sentence(rng, s, topic, cfg.topic_word_ratio);
    }
    return doc;
}

std::vector<std::string> fresh_topic(int pool, std::size_t& next_index, int count) {
    std::vector<std::string> words;
    words.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) words.push_back(topic_word(pool, next_index++));
    return words;
}

std::string case_id(const std::string& name, const char* split, int author, char kind) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "-%s-a%04d-%c", split, author, kind);
    return name + buf;
}

}  // namespace

void GeneratorConfig::validate() const {
    const auto fail = [](const std::string& what) {
        throw std::invalid_argument("generator config: " + what);
    };
    if (authors < 5) fail("need at least 5 authors");
    if (docs_per_author < 1) fail("docs_per_author must be positive");
    if (sentences_per_doc_min < 1 || sentences_per_doc_max < sentences_per_doc_min) {
        fail("invalid sentences_per_doc range");
    }
    if (tokens_per_sentence_min < 4 || tokens_per_sentence_max < tokens_per_sentence_min) {
        fail("invalid tokens_per_sentence range");
    }
    if (topic_words_per_doc < 1) fail("topic_words_per_doc must be positive");
    if (!(topic_word_ratio >= 0.0) || topic_word_ratio >= 1.0) {
        fail("topic_word_ratio must be in [0, 1)");
    }
    if (style_skew < 1 || style_skew > 8) fail("style_skew must be in [1, 8]");
    if (!(train_ratio > 0.0) || !(train_ratio < 1.0)) fail("train_ratio must be in (0, 1)");
    const int train_authors = static_cast<int>(std::llround(train_ratio * authors));
    if (train_authors < 2 || authors - train_authors < 2) {
        fail("each split needs at least 2 authors");
    }
    if (corpus_name.empty()) fail("corpus_name must not be empty");
}

GeneratorConfig GeneratorConfig::from_json_file(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": invalid config JSON: " + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error(path + ": config must be a JSON object");
    GeneratorConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "authors") cfg.authors = value.get<int>();
            else if (key == "docs_per_author") cfg.docs_per_author = value.get<int>();
            else if (key == "sentences_per_doc_min") cfg.sentences_per_doc_min = value.get<int>();
            else if (key == "sentences_per_doc_max") cfg.sentences_per_doc_max = value.get<int>();
            else if (key == "tokens_per_sentence_min") cfg.tokens_per_sentence_min = value.get<int>();
            else if (key == "tokens_per_sentence_max") cfg.tokens_per_sentence_max = value.get<int>();
            else if (key == "topic_words_per_doc") cfg.topic_words_per_doc = value.get<int>();
            else if (key == "topic_word_ratio") cfg.topic_word_ratio = value.get<double>();
            else if (key == "style_skew") cfg.style_skew = value.get<int>();
            else if (key == "cross_topic") cfg.cross_topic = value.get<bool>();
            else if (key == "train_ratio") cfg.train_ratio = value.get<double>();
            else if (key == "corpus_name") cfg.corpus_name = value.get<std::string>();
            else throw std::runtime_error("unknown config key '" + key + "'");
        } catch (const json::exception& e) {
            throw std::runtime_error(path + ": bad value for '" + key + "': " + e.what());
        }
    }
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return cfg;
}

GeneratedCorpora generate_synthetic(const GeneratorConfig& config, std::uint64_t seed) {
    config.validate();
    Rng rng(seed);

    const int n_authors = config.authors;
    const int n_train = static_cast<int>(std::llround(config.train_ratio * n_authors));

    std::vector<AuthorStyle> styles;
    styles.reserve(static_cast<std::size_t>(n_authors));
    for (int a = 0; a < n_authors; ++a) styles.push_back(sample_style(rng, config));

    // Pass 1: known documents and same-author unknowns, in author order.
    std::size_t next_topic_a = 0;
    std::size_t next_topic_b = 0;
    std::vector<std::vector<std::string>> known_docs(static_cast<std::size_t>(n_authors));
    std::vector<std::vector<std::string>> known_topics(static_cast<std::size_t>(n_authors));
    std::vector<std::string> y_unknown(static_cast<std::size_t>(n_authors));
    for (int a = 0; a < n_authors; ++a) {
        const auto ia = static_cast<std::size_t>(a);
        for (int d = 0; d < config.docs_per_author; ++d) {
            const std::vector<std::string> topic =
                fresh_topic(0, next_topic_a, config.topic_words_per_doc);
            known_docs[ia].push_back(make_document(rng, styles[ia], config, topic));
            known_topics[ia].insert(known_topics[ia].end(), topic.begin(), topic.end());
        }
        // Cross-topic: the same-author unknown is about something entirely
        // new (letter-disjoint pool); otherwise it revisits known topics.
        const std::vector<std::string> y_topic =
            config.cross_topic ? fresh_topic(1, next_topic_b, config.topic_words_per_doc)
                               : known_topics[ia];
        y_unknown[ia] = make_document(rng, styles[ia], config, y_topic);
    }

    // Pass 2: impostor unknowns. The impostor is the next author in the same
    // split and writes in their own style about the victim's topics.
    std::vector<std::string> n_unknown(static_cast<std::size_t>(n_authors));
    for (int a = 0; a < n_authors; ++a) {
        const auto ia = static_cast<std::size_t>(a);
        const bool in_train = a < n_train;
        const int lo = in_train ? 0 : n_train;
        const int hi = in_train ? n_train : n_authors;
        const int impostor = lo + (a - lo + 1) % (hi - lo);
        n_unknown[ia] = make_document(rng, styles[static_cast<std::size_t>(impostor)],
                                      config, known_topics[ia]);
    }

    GeneratedCorpora out;
    out.train.meta = {config.corpus_name + "-train", "train"};
    out.test.meta = {config.corpus_name + "-test", "test"};
    for (int a = 0; a < n_authors; ++a) {
        const auto ia = static_cast<std::size_t>(a);
        const bool in_train = a < n_train;
        Corpus& corpus = in_train ? out.train : out.test;
        const char* split = in_train ? "train" : "test";
        corpus.cases.push_back({case_id(config.corpus_name, split, a, 'y'),
                                known_docs[ia], y_unknown[ia], Label::Y});
        corpus.cases.push_back({case_id(config.corpus_name, split, a, 'n'),
                                known_docs[ia], n_unknown[ia], Label::N});
    }
    return out;
}

}  // namespace averify
