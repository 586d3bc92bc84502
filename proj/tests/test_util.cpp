#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "averify/util.hpp"
#include "test_support.hpp"

using namespace averify;

TEST_CASE("format_double emits the shortest round-trip form") {
    CHECK_EQ(format_double(0.5), "0.5");
    CHECK_EQ(format_double(1.0), "1");
    CHECK_EQ(format_double(0.0), "0");
    CHECK_EQ(format_double(-2.0), "-2");
    CHECK_EQ(format_double(0.1), "0.1");
    CHECK_EQ(format_double(2.0 / 3.0), "0.6666666666666666");
}

TEST_CASE("format_double output parses back to the exact same bits") {
    const std::vector<double> values = {0.1 + 0.2, 1.0 / 3.0, 1e-9, 123456.789, 1e300, -0.0};
    for (double v : values) {
        const std::string s = format_double(v);
        CHECK_EQ(std::strtod(s.c_str(), nullptr), v);
    }
}

TEST_CASE("median uses the mean-of-middle-two convention for even counts") {
    CHECK_EQ(median({1.0}), 1.0);
    CHECK_EQ(median({3.0, 1.0, 2.0}), 2.0);
    CHECK_EQ(median({1.0, 2.0, 3.0, 4.0}), 2.5);
    CHECK_EQ(median({5.0, 1.0}), 3.0);
    CHECK_EQ(median({2.0, 2.0, 2.0, 2.0}), 2.0);
}

TEST_CASE("median rejects empty input") {
    CHECK_THROWS_AS(median({}), std::invalid_argument);
}

TEST_CASE("csv_quote wraps every field and doubles embedded quotes") {
    CHECK_EQ(csv_quote("plain"), "\"plain\"");
    CHECK_EQ(csv_quote("a,b"), "\"a,b\"");
    CHECK_EQ(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
    CHECK_EQ(csv_quote(""), "\"\"");
    CHECK_EQ(csv_quote("line\nbreak"), "\"line\nbreak\"");
}

TEST_CASE("text files round-trip bytes exactly") {
    testsup::TempDir dir;
    const std::string path = dir.file("blob.txt");
    const std::string content = "first line\nsecond \xE2\x80\x99 line\n";
    write_text_file(path, content);
    CHECK_EQ(read_text_file(path), content);
}

TEST_CASE("reading a missing file names the path in the error") {
    testsup::TempDir dir;
    const std::string path = dir.file("absent.txt");
    CHECK_THROWS_WITH_AS(read_text_file(path),
                         doctest::Contains("absent.txt"), std::runtime_error);
}
