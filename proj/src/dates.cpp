#include "cryptoindex/dates.hpp"

#include "cryptoindex/errors.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>

namespace cryptoindex {

namespace {

std::chrono::year_month_day to_ymd(std::int32_t serial) {
    return std::chrono::year_month_day{
        std::chrono::sys_days{std::chrono::days{serial}}};
}

}  // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "invalid calendar day %04d-%02u-%02u", year, month, day);
        throw UsageError(buf);
    }
    return Date(static_cast<std::int32_t>(
        std::chrono::sys_days{ymd}.time_since_epoch().count()));
}

Date Date::parse(std::string_view text) {
    const auto bad = [&] {
        return UsageError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw bad();
    }
    const int year = (text[0] - '0') * 1000 + (text[1] - '0') * 100 + (text[2] - '0') * 10 +
                     (text[3] - '0');
    const unsigned month = static_cast<unsigned>((text[5] - '0') * 10 + (text[6] - '0'));
    const unsigned day = static_cast<unsigned>((text[8] - '0') * 10 + (text[9] - '0'));
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) throw bad();
    return Date(static_cast<std::int32_t>(
        std::chrono::sys_days{ymd}.time_since_epoch().count()));
}

int Date::year() const { return static_cast<int>(to_ymd(days_).year()); }

unsigned Date::month() const { return static_cast<unsigned>(to_ymd(days_).month()); }

unsigned Date::day() const { return static_cast<unsigned>(to_ymd(days_).day()); }

bool Date::is_quarter_start() const {
    const auto ymd = to_ymd(days_);
    const unsigned m = static_cast<unsigned>(ymd.month());
    return static_cast<unsigned>(ymd.day()) == 1 && (m == 1 || m == 4 || m == 7 || m == 10);
}

Date Date::month_start_after(int months_ahead) const {
    const auto ymd = to_ymd(days_);
    const int total = static_cast<int>(ymd.year()) * 12 +
                      static_cast<int>(static_cast<unsigned>(ymd.month())) - 1 + months_ahead;
    const int y = total / 12;
    const unsigned m = static_cast<unsigned>(total % 12 + 1);
    return from_ymd(y, m, 1);
}

std::string Date::iso() const {
    const auto ymd = to_ymd(days_);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

}  // namespace cryptoindex
