#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "averify/features.hpp"
#include "averify/lexicon.hpp"
#include "averify/textproc.hpp"
#include "test_support.hpp"

using namespace averify;

namespace {

FeatureBag bag_of(const std::string& text, CategoryId id) {
    return extract(segment(text), id, testsup::bundled_lexicon());
}

}  // namespace

// The published sample sentence, all eleven categories. These bags are the
// primary extraction oracle; any change here is a behavior change.
TEST_CASE("golden sentence: every category bag matches the frozen oracle") {
    const std::string text = "So that's the way it goes.";

    CHECK_EQ(bag_of(text, CategoryId::F1), FeatureBag{{"'", 1}, {".", 1}});
    CHECK_EQ(bag_of(text, CategoryId::F2), FeatureBag{{"'.", 1}});
    CHECK_EQ(bag_of(text, CategoryId::F3), FeatureBag{});
    CHECK_EQ(bag_of(text, CategoryId::F4), FeatureBag{{"so", 1}});
    CHECK_EQ(bag_of(text, CategoryId::F5), FeatureBag{{"goes", 1}});
    CHECK_EQ(bag_of(text, CategoryId::F6),
             FeatureBag{{"so", 1}, {"that's", 1}, {"the", 1}, {"it", 1}, {"goes", 1}});
    CHECK_EQ(bag_of(text, CategoryId::F7),
             FeatureBag{{"so that's", 1}, {"that's the", 1}, {"it goes", 1}, {"goes .", 1}});
    CHECK_EQ(bag_of(text, CategoryId::F8),
             FeatureBag{{"so that's the", 1}, {"it goes .", 1}});
    CHECK_EQ(bag_of(text, CategoryId::F9), FeatureBag{});
    CHECK_EQ(bag_of(text, CategoryId::F10),
             FeatureBag{{"that's the #", 1}, {"the # it", 1}, {"# it goes", 1}});
    CHECK_EQ(bag_of(text, CategoryId::F11),
             FeatureBag{{"so that's the #", 1}, {"that's the # it", 1}, {"the # it goes", 1},
                        {"# it goes .", 1}});
}

TEST_CASE("punctuation n-grams skip non-punctuation characters") {
    CHECK_EQ(bag_of("a,b.c", CategoryId::F2), FeatureBag{{",.", 1}});
    CHECK_EQ(bag_of("?!?", CategoryId::F1), FeatureBag{{"?", 2}, {"!", 1}});
    CHECK_EQ(bag_of("?!?", CategoryId::F3), FeatureBag{{"?!?", 1}});
    CHECK_EQ(bag_of("no marks at all", CategoryId::F1), FeatureBag{});
}

TEST_CASE("sentence starters take the longest lexicon phrase") {
    CHECK_EQ(bag_of("As a matter of fact it works.", CategoryId::F4),
             FeatureBag{{"as a matter of fact", 1}});
    CHECK_EQ(bag_of("Dogs bark loudly.", CategoryId::F4), FeatureBag{});
}

TEST_CASE("clause starters after commas and semicolons keep the mark") {
    CHECK_EQ(bag_of("Dogs bark, but cats nap; so foxes win.", CategoryId::F4),
             FeatureBag{{", but", 1}, {"; so", 1}});
}

TEST_CASE("sentence endings ignore trailing punctuation and match backwards") {
    CHECK_EQ(bag_of("It was nothing of course.", CategoryId::F5),
             FeatureBag{{"of course", 1}});
    CHECK_EQ(bag_of("The dog barked.", CategoryId::F5), FeatureBag{});
    // A trailing number is not a lexicon ending.
    CHECK_EQ(bag_of("The total is 12.", CategoryId::F5), FeatureBag{});
}

TEST_CASE("token n-grams require every token to be topic-agnostic") {
    // "grapes" is a topic word; n-grams crossing it drop out.
    const std::string text = "I ate them, and the grapes were mine.";
    const FeatureBag f6 = bag_of(text, CategoryId::F6);
    CHECK_EQ(f6.count("grapes"), 0);
    CHECK_EQ(f6.count("and"), 1);
    CHECK_EQ(f6.count(","), 0);  // n = 1 drops punctuation tokens
    const FeatureBag f7 = bag_of(text, CategoryId::F7);
    CHECK_EQ(f7.count(", and"), 1);
    CHECK_EQ(f7.count("the grapes"), 0);
}

TEST_CASE("masked n-grams mask exactly one topic token") {
    const FeatureBag f10 = bag_of("I ate the grapes at home.", CategoryId::F10);
    CHECK_EQ(f10.count("the # at"), 1);
    CHECK_EQ(f10.count("i # the"), 1);
    // Windows with two topic tokens never appear, masked or otherwise.
    const FeatureBag two = bag_of("Fresh grapes taste like it.", CategoryId::F10);
    for (const auto& [feature, count] : two) {
        CHECK_EQ(std::count(feature.begin(), feature.end(), '#'), 1);
    }
}

TEST_CASE("numbers are never topic-agnostic and mask like topic words") {
    const FeatureBag f10 = bag_of("I have 42 of them.", CategoryId::F10);
    CHECK_EQ(f10.count("i have #"), 1);
    CHECK_EQ(f10.count("have # of"), 1);
    const FeatureBag f6 = bag_of("I have 42 of them.", CategoryId::F6);
    CHECK_EQ(f6.count("42"), 0);
}

TEST_CASE("greedy phrase marking makes multi-word lexicon hits topic-agnostic") {
    // "on the other hand" marks all four tokens, so 4-grams survive intact.
    const FeatureBag f9 = bag_of("On the other hand it works.", CategoryId::F9);
    CHECK_EQ(f9.count("on the other hand"), 1);
    CHECK_EQ(f9.count("the other hand it"), 1);
    // Without the phrase, "hand" is a topic word ("other" is a determiner).
    const FeatureBag lone = bag_of("The other hand hurts.", CategoryId::F6);
    CHECK_EQ(lone.count("hand"), 0);
    CHECK_EQ(lone.count("other"), 1);
    CHECK_EQ(lone.count("the"), 1);
}

TEST_CASE("counts accumulate across sentences") {
    const FeatureBag f4 = bag_of("So it goes. So it stays.", CategoryId::F4);
    CHECK_EQ(f4, FeatureBag{{"so", 2}});
    const FeatureBag f1 = bag_of("One. Two. Three!", CategoryId::F1);
    CHECK_EQ(f1, FeatureBag{{".", 2}, {"!", 1}});
}

TEST_CASE("category metadata round-trips") {
    CHECK_EQ(category_name(CategoryId::F10), "F10");
    CHECK_EQ(parse_category("F10"), CategoryId::F10);
    CHECK_THROWS_AS(parse_category("F12"), std::invalid_argument);
    CHECK_THROWS_AS(parse_category("f1"), std::invalid_argument);
    CHECK_EQ(all_categories().size(), 11);
    CHECK_EQ(category_gram_order(CategoryId::F3), 3);
    CHECK_EQ(category_gram_order(CategoryId::F9), 4);
    CHECK_EQ(category_gram_order(CategoryId::F4), 0);
    CHECK_EQ(category_kind(CategoryId::F11), CategoryKind::MaskedTokenNgram);
}

TEST_CASE("make_vector_pair aligns on the union and L1-normalizes") {
    const FeatureVectorPair pair =
        make_vector_pair(FeatureBag{{"a", 1}, {"b", 3}}, FeatureBag{{"b", 1}, {"c", 1}});
    CHECK_EQ(pair.vocab, std::vector<std::string>{"a", "b", "c"});
    CHECK_EQ(pair.x, std::vector<double>{0.25, 0.75, 0.0});
    CHECK_EQ(pair.y, std::vector<double>{0.0, 0.5, 0.5});
}

TEST_CASE("an empty bag maps to the all-zero vector") {
    const FeatureVectorPair pair = make_vector_pair(FeatureBag{}, FeatureBag{{"x", 2}});
    CHECK_EQ(pair.vocab, std::vector<std::string>{"x"});
    CHECK_EQ(pair.x, std::vector<double>{0.0});
    CHECK_EQ(pair.y, std::vector<double>{1.0});
}
