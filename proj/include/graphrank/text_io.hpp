#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace graphrank::text {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

/// Whole-field parse; throws ParseError mentioning `where`.
double parse_double(std::string_view field, const std::string& where);
std::size_t parse_index(std::string_view field, const std::string& where);
long long parse_int(std::string_view field, const std::string& where);

std::vector<std::string_view> split(std::string_view line, char delimiter);

/// Non-empty, non-comment lines with their 1-based line numbers.
struct Line {
  std::size_t number;
  std::string text;
};
std::vector<Line> read_lines(const std::filesystem::path& path, bool skip_comments = true);

std::string read_file(const std::filesystem::path& path);
/// Writes atomically enough for a single-process harness: temp file + rename.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace graphrank::text
