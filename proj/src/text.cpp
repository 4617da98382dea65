#include "cryptoindex/text.hpp"

#include <charconv>
#include <cstdio>

namespace cryptoindex {

std::vector<std::string> split(std::string_view line, char delimiter) {
    std::vector<std::string> fields;
    std::string token;
    for (char ch : line) {
        if (ch == delimiter) {
            fields.push_back(std::move(token));
            token.clear();
        } else {
            token.push_back(ch);
        }
    }
    fields.push_back(std::move(token));
    return fields;
}

std::string trim(std::string_view value) {
    const auto first = value.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = value.find_last_not_of(" \t\r\n");
    return std::string(value.substr(first, last - first + 1));
}

bool parse_double(std::string_view text, double& out) {
    if (text.empty()) return false;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc{} && result.ptr == end;
}

bool parse_long(std::string_view text, long& out) {
    if (text.empty()) return false;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc{} && result.ptr == end;
}

std::string fixed8(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.8f", value);
    return buf;
}

std::string shortest(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

}  // namespace cryptoindex
