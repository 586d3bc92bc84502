#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "averify/interpret.hpp"
#include "averify/util.hpp"
#include "test_support.hpp"

using namespace averify;

TEST_CASE("features above the equilibrated threshold argue against the author") {
    // Elementwise distances 0.15, 0.15, 0.4 against theta' = 0.3 / 3 = 0.1:
    // everything lands on the N side, largest margin first, ties in input
    // order.
    const InterpretationResult r = interpret_vectors(
        {"v1", "v2", "v3"}, {0.15, 0.15, 0.4}, {0.0, 0.0, 0.0}, 0.3);
    CHECK_EQ(r.threshold, 0.3);
    CHECK_EQ(r.equilibrated_threshold, doctest::Approx(0.1).epsilon(1e-15));
    CHECK(r.y_list.empty());
    REQUIRE_EQ(r.n_list.size(), 3);
    CHECK_EQ(r.n_list[0].feature, "v3");
    CHECK_EQ(r.n_list[0].value, doctest::Approx(0.3).epsilon(1e-12));
    CHECK_EQ(r.n_list[1].feature, "v1");
    CHECK_EQ(r.n_list[1].value, doctest::Approx(0.05).epsilon(1e-12));
    CHECK_EQ(r.n_list[2].feature, "v2");

    REQUIRE_EQ(r.phi.size(), 3);
    CHECK_EQ(r.phi[0].feature, "v1");
    CHECK_EQ(r.phi[0].value, doctest::Approx(0.15).epsilon(1e-15));
}

TEST_CASE("a feature exactly at the equilibrated threshold counts as N with zero weight") {
    // Dyadic values keep theta / m and every margin exact: theta' = 0.25.
    const InterpretationResult r = interpret_vectors(
        {"v1", "v2", "v3"}, {0.125, 0.25, 0.5}, {0.0, 0.0, 0.0}, 0.75);
    REQUIRE_EQ(r.y_list.size(), 1);
    CHECK_EQ(r.y_list[0].feature, "v1");
    CHECK_EQ(r.y_list[0].value, 0.125);
    REQUIRE_EQ(r.n_list.size(), 2);
    CHECK_EQ(r.n_list[0].feature, "v3");
    CHECK_EQ(r.n_list[0].value, 0.25);
    CHECK_EQ(r.n_list[1].feature, "v2");
    CHECK_EQ(r.n_list[1].value, 0.0);
}

TEST_CASE("interpret_vectors rejects empty and mismatched input") {
    CHECK_THROWS_WITH_AS(interpret_vectors({}, {}, {}, 0.5),
                         doctest::Contains("no features for this category"),
                         std::invalid_argument);
    CHECK_THROWS_AS(interpret_vectors({"a"}, {0.1, 0.2}, {0.0}, 0.5), std::invalid_argument);
}

TEST_CASE("the signed importance sums reconstruct the decision margin") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + static_cast<std::size_t>(unit(rng) * 8);
        std::vector<std::string> vocab;
        std::vector<double> x(m), y(m);
        for (std::size_t i = 0; i < m; ++i) {
            vocab.push_back("f" + std::to_string(i));
            x[i] = unit(rng);
            y[i] = unit(rng);
        }
        const double theta = 0.05 + 1.95 * unit(rng);
        const InterpretationResult r = interpret_vectors(vocab, x, y, theta);

        double d = 0.0;
        for (std::size_t i = 0; i < m; ++i) d += std::abs(x[i] - y[i]);
        double sum_y = 0.0, sum_n = 0.0;
        for (const ScoredFeature& f : r.y_list) sum_y += f.value;
        for (const ScoredFeature& f : r.n_list) sum_n += f.value;
        CHECK_EQ(sum_y - sum_n, doctest::Approx(theta - d).epsilon(1e-9));
        CHECK_EQ(r.y_list.size() + r.n_list.size(), m);
    }
}

TEST_CASE("interpret_case explains a verification decision end to end") {
    // F1 vectors: known (2/3, 1/3) vs unknown (0, 1) over vocab {",", "."}.
    // Both elementwise distances are 2/3 and land above theta' = 0.5, but
    // rounding makes |1/3 - 1| one ulp larger than |2/3 - 0|, so the "."
    // row outranks the "," row.
    const VerificationCase c{"id", {"a, b, c."}, "d. e.", std::nullopt};
    const InterpretationResult r =
        interpret_case(c, {CategoryId::F1, 1.0}, testsup::bundled_lexicon());
    CHECK_EQ(r.threshold, 1.0);
    CHECK_EQ(r.equilibrated_threshold, 0.5);
    CHECK(r.y_list.empty());
    REQUIRE_EQ(r.n_list.size(), 2);
    CHECK_EQ(r.n_list[0].feature, ".");
    CHECK_EQ(r.n_list[0].value, doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK_EQ(r.n_list[1].feature, ",");
}

TEST_CASE("the importance report has CSV rows and a JSON summary") {
    testsup::TempDir dir;
    const VerificationCase c{"id", {"a, b, c."}, "d. e.", std::nullopt};
    const InterpretationResult r =
        interpret_case(c, {CategoryId::F1, 1.0}, testsup::bundled_lexicon());

    const std::string csv_path = dir.file("report.csv");
    emit_importance_report(r, csv_path);

    // Expected values rebuilt with the same arithmetic the pipeline uses:
    // |1/3 - 1| rounds one ulp above 2/3, so the "." row sorts first.
    const double el_dot = std::abs(1.0 / 3.0 - 1.0);
    const double el_comma = 2.0 / 3.0;
    const std::string expected_csv =
        "feature,elementwise_distance,side,importance\n"
        "\".\"," + format_double(el_dot) + ",N," + format_double(el_dot - 0.5) + "\n"
        "\",\"," + format_double(el_comma) + ",N," + format_double(el_comma - 0.5) + "\n";
    CHECK_EQ(read_text_file(csv_path), expected_csv);

    const nlohmann::json summary = nlohmann::json::parse(read_text_file(dir.file("report.json")));
    CHECK_EQ(summary["num_features"], 2);
    CHECK_EQ(summary["threshold"], 1.0);
    CHECK_EQ(summary["equilibrated_threshold"], 0.5);
    CHECK_EQ(summary["distance"].get<double>(), doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK_EQ(summary["sum_importance_y"], 0.0);
    CHECK_EQ(summary["sum_importance_n"].get<double>(),
             doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK_EQ(summary["prediction"], "N");
}

TEST_CASE("a .json report path gets a .summary.json sibling") {
    testsup::TempDir dir;
    const InterpretationResult r =
        interpret_vectors({"v"}, {0.2}, {0.0}, 1.0);
    emit_importance_report(r, dir.file("out.json"));
    CHECK_NOTHROW(read_text_file(dir.file("out.json.summary.json")));
    // The CSV still lands at the requested path.
    const std::string csv = read_text_file(dir.file("out.json"));
    CHECK_EQ(csv.substr(0, 8), "feature,");
}
