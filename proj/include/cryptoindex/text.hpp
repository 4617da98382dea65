#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cryptoindex {

// Small parsing/formatting helpers shared by the CSV and config readers.

std::vector<std::string> split(std::string_view line, char delimiter);

std::string trim(std::string_view value);

// Strict full-string numeric parses; return false on any leftover input.
bool parse_double(std::string_view text, double& out);
bool parse_long(std::string_view text, long& out);

// Fixed 8-decimal output used by every exported file.
std::string fixed8(double value);

// Shortest representation that round-trips the exact double.
std::string shortest(double value);

}  // namespace cryptoindex
