#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cryptoindex {

// A calendar day (UTC), stored as days since 1970-01-01.
class Date {
public:
    Date() = default;

    // Throws UsageError if the triple is not a valid calendar day.
    static Date from_ymd(int year, unsigned month, unsigned day);
    static Date from_serial(std::int32_t days_since_epoch) { return Date(days_since_epoch); }

    // Strict ISO-8601 YYYY-MM-DD. Throws UsageError on anything else.
    static Date parse(std::string_view text);

    int year() const;
    unsigned month() const;
    unsigned day() const;
    std::int32_t serial() const { return days_; }

    bool is_month_start() const { return day() == 1; }
    // Jan 1, Apr 1, Jul 1, Oct 1.
    bool is_quarter_start() const;

    // First day of the month @p months_ahead months after this one.
    Date month_start_after(int months_ahead) const;

    std::string iso() const;

    Date plus_days(int n) const { return Date(days_ + n); }
    friend int operator-(Date a, Date b) { return a.days_ - b.days_; }
    friend auto operator<=>(Date, Date) = default;

private:
    explicit Date(std::int32_t d) : days_(d) {}
    std::int32_t days_ = 0;
};

}  // namespace cryptoindex
