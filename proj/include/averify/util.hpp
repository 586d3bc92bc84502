// Small shared helpers: numeric formatting, medians, file and CSV plumbing.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace averify {

// Shortest decimal representation that round-trips the exact double value.
std::string format_double(double value);

// Median with the even-count convention: arithmetic mean of the two middle
// values. Throws std::invalid_argument on an empty input.
double median(std::vector<double> values);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

// RFC 4180 quoting; the field is always wrapped in double quotes.
std::string csv_quote(std::string_view field);

}  // namespace averify
