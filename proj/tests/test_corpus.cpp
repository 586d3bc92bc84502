#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "averify/corpus.hpp"
#include "averify/features.hpp"
#include "averify/util.hpp"
#include "test_support.hpp"

using namespace averify;

namespace {

Corpus tiny_corpus() {
    Corpus c;
    c.meta.name = "tiny";
    c.cases.push_back({"case-a", {"First doc.", "Second doc."}, "Unknown doc.", Label::Y});
    c.cases.push_back({"case-b", {"Other doc."}, "Another doc.", Label::N});
    c.cases.push_back({"case-c", {"Lone doc."}, "Mystery doc.", std::nullopt});
    return c;
}

GeneratorConfig small_config() {
    GeneratorConfig cfg;
    cfg.authors = 10;
    cfg.docs_per_author = 2;
    cfg.sentences_per_doc_min = 5;
    cfg.sentences_per_doc_max = 8;
    cfg.tokens_per_sentence_min = 5;
    cfg.tokens_per_sentence_max = 9;
    cfg.topic_words_per_doc = 4;
    return cfg;
}

std::string corpus_text(const Corpus& corpus) {
    testsup::TempDir dir;
    const std::string path = dir.file("c.jsonl");
    save_corpus(corpus, path);
    return read_text_file(path);
}

}  // namespace

TEST_CASE("corpora round-trip through JSONL including missing labels") {
    testsup::TempDir dir;
    const std::string path = dir.file("tiny.jsonl");
    save_corpus(tiny_corpus(), path);

    const Corpus loaded = load_corpus(path);
    CHECK_EQ(loaded.meta.name, "tiny");
    REQUIRE_EQ(loaded.cases.size(), 3);
    CHECK_EQ(loaded.cases[0].case_id, "case-a");
    CHECK_EQ(loaded.cases[0].known_docs,
             std::vector<std::string>{"First doc.", "Second doc."});
    CHECK_EQ(loaded.cases[0].label, Label::Y);
    CHECK_EQ(loaded.cases[1].label, Label::N);
    CHECK_FALSE(loaded.cases[2].label.has_value());
    CHECK_EQ(loaded.count_label(Label::Y), 1);
    CHECK_EQ(loaded.count_label(Label::N), 1);
}

TEST_CASE("the corpus name comes from the file stem and the split suffix") {
    testsup::TempDir dir;
    Corpus c = tiny_corpus();
    c.cases.pop_back();
    save_corpus(c, dir.file("demo-train.jsonl"));
    save_corpus(c, dir.file("demo-test.jsonl"));
    save_corpus(c, dir.file("demo.jsonl"));
    CHECK_EQ(load_corpus(dir.file("demo-train.jsonl")).meta.name, "demo-train");
    CHECK_EQ(load_corpus(dir.file("demo-train.jsonl")).meta.split, "train");
    CHECK_EQ(load_corpus(dir.file("demo-test.jsonl")).meta.split, "test");
    CHECK_EQ(load_corpus(dir.file("demo.jsonl")).meta.split, "");
}

TEST_CASE("loading reports the path and line for broken input") {
    testsup::TempDir dir;
    const std::string path = dir.file("broken.jsonl");

    write_text_file(path, "{\"case_id\": \"a\"\n");
    CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains(":1"), std::runtime_error);

    write_text_file(path,
                    "{\"case_id\": \"a\", \"known_docs\": [\"k\"], \"unknown_doc\": \"u\", "
                    "\"label\": \"Y\"}\n"
                    "{\"case_id\": \"a\", \"known_docs\": [\"k\"], \"unknown_doc\": \"u\", "
                    "\"label\": \"N\"}\n");
    CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains("duplicate"), std::runtime_error);

    write_text_file(path, "");
    CHECK_THROWS_AS(load_corpus(path), std::runtime_error);

    write_text_file(path,
                    "{\"case_id\": \"a\", \"known_docs\": [], \"unknown_doc\": \"u\", "
                    "\"label\": \"Y\"}\n");
    CHECK_THROWS_AS(load_corpus(path), std::runtime_error);
}

TEST_CASE("require_balanced rejects unlabeled and lopsided corpora") {
    testsup::TempDir dir;
    const std::string path = dir.file("c.jsonl");

    save_corpus(tiny_corpus(), path);
    CHECK_THROWS_AS(load_corpus(path, /*require_balanced=*/true), std::runtime_error);

    Corpus lopsided = tiny_corpus();
    lopsided.cases.pop_back();
    lopsided.cases[1].label = Label::Y;
    save_corpus(lopsided, path);
    CHECK_THROWS_AS(load_corpus(path, /*require_balanced=*/true), std::runtime_error);

    Corpus balanced = tiny_corpus();
    balanced.cases.pop_back();
    save_corpus(balanced, path);
    CHECK_NOTHROW(load_corpus(path, /*require_balanced=*/true));
}

TEST_CASE("profile_text joins known documents with newlines") {
    const VerificationCase c{"id", {"One.", "Two."}, "U.", std::nullopt};
    CHECK_EQ(profile_text(c), "One.\nTwo.");
    CHECK_THROWS_AS(profile_text({"id", {}, "U.", std::nullopt}), std::invalid_argument);
}

TEST_CASE("profile segments both sides without blending documents") {
    const VerificationCase c{"id", {"no stop here", "Second doc."}, "The unknown.",
                             std::nullopt};
    const ProfiledCase p = profile(c);
    CHECK_EQ(p.known.sentences.size(), 2);
    CHECK_EQ(p.unknown.sentences.size(), 1);
}

TEST_CASE("generator output is deterministic per seed") {
    const GeneratorConfig cfg = small_config();
    const GeneratedCorpora a = generate_synthetic(cfg, 7);
    const GeneratedCorpora b = generate_synthetic(cfg, 7);
    const GeneratedCorpora c = generate_synthetic(cfg, 8);
    CHECK_EQ(corpus_text(a.train), corpus_text(b.train));
    CHECK_EQ(corpus_text(a.test), corpus_text(b.test));
    CHECK_NE(corpus_text(a.train), corpus_text(c.train));
}

TEST_CASE("generated splits are balanced and author-disjoint") {
    const GeneratedCorpora g = generate_synthetic(small_config(), 3);
    // 10 authors at a 0.4 train ratio: 4 train authors, 6 test authors,
    // one Y and one N case each.
    CHECK_EQ(g.train.cases.size(), 8);
    CHECK_EQ(g.test.cases.size(), 12);
    CHECK_EQ(g.train.count_label(Label::Y), 4);
    CHECK_EQ(g.train.count_label(Label::N), 4);
    CHECK_EQ(g.test.count_label(Label::Y), 6);
    CHECK_EQ(g.test.count_label(Label::N), 6);
    CHECK_EQ(g.train.meta.split, "train");
    CHECK_EQ(g.test.meta.split, "test");

    const auto author_of = [](const std::string& id) {
        const std::size_t pos = id.rfind("-a");
        return id.substr(pos + 1, id.find('-', pos + 1) - pos - 1);
    };
    std::set<std::string> train_authors, test_authors;
    for (const auto& c : g.train.cases) train_authors.insert(author_of(c.case_id));
    for (const auto& c : g.test.cases) test_authors.insert(author_of(c.case_id));
    CHECK_EQ(train_authors.size(), 4);
    CHECK_EQ(test_authors.size(), 6);
    for (const auto& a : train_authors) CHECK_EQ(test_authors.count(a), 0);
}

TEST_CASE("every non-topic generated token is in the bundled lexicon") {
    GeneratorConfig cfg = small_config();
    cfg.topic_word_ratio = 0.0;
    const GeneratedCorpora g = generate_synthetic(cfg, 11);
    const Lexicon& lex = testsup::bundled_lexicon();
    for (const Corpus* corpus : {&g.train, &g.test}) {
        for (const VerificationCase& c : corpus->cases) {
            const Document doc = segment(c.unknown_doc);
            // No topic words anywhere, so nothing is left to mask.
            CHECK(extract(doc, CategoryId::F10, lex).empty());
            CHECK(extract(doc, CategoryId::F11, lex).empty());
        }
    }
}

TEST_CASE("generated Y cases share the author and N cases do not") {
    const GeneratedCorpora g = generate_synthetic(small_config(), 5);
    for (const VerificationCase& c : g.train.cases) {
        REQUIRE(c.label.has_value());
        const char suffix = c.case_id.back();
        CHECK_EQ(suffix, *c.label == Label::Y ? 'y' : 'n');
        CHECK_EQ(c.known_docs.size(), 2);
        CHECK_FALSE(c.unknown_doc.empty());
    }
}

TEST_CASE("generator config validation catches bad ranges") {
    GeneratorConfig cfg = small_config();
    CHECK_NOTHROW(cfg.validate());

    cfg.authors = 4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.train_ratio = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.topic_word_ratio = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.tokens_per_sentence_min = 2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.sentences_per_doc_max = cfg.sentences_per_doc_min - 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config();
    cfg.style_skew = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("generator config files reject unknown keys and bad types") {
    testsup::TempDir dir;
    const std::string path = dir.file("cfg.json");

    write_text_file(path, "{\"authors\": 12, \"train_ratio\": 0.5}\n");
    const GeneratorConfig cfg = GeneratorConfig::from_json_file(path);
    CHECK_EQ(cfg.authors, 12);
    CHECK_EQ(cfg.train_ratio, 0.5);
    CHECK_EQ(cfg.docs_per_author, 3);  // untouched defaults survive

    write_text_file(path, "{\"author_count\": 12}\n");
    CHECK_THROWS_WITH_AS(GeneratorConfig::from_json_file(path),
                         doctest::Contains("author_count"), std::runtime_error);

    write_text_file(path, "{\"authors\": \"many\"}\n");
    CHECK_THROWS_AS(GeneratorConfig::from_json_file(path), std::runtime_error);
}
