#pragma once

#include "cryptoindex/dates.hpp"
#include "cryptoindex/errors.hpp"

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cryptoindex {

// Ticker identifier: non-empty, uppercase alphanumeric.
class CoinId {
public:
    explicit CoinId(std::string ticker);
    const std::string& str() const { return ticker_; }
    friend auto operator<=>(const CoinId&, const CoinId&) = default;

private:
    std::string ticker_;
};

// One coin's price and market cap on one date. Both strictly positive.
struct MarketSnapshot {
    Date date;
    CoinId coin;
    double price;
    double market_cap;
};

// Result of a carry-forward lookup. lag_days == 0 means an exact hit.
struct Quote {
    double price;
    double market_cap;
    int lag_days;
};

// Immutable, date-indexed collection of snapshots for all coins.
// Safe for concurrent reads once constructed.
class MarketHistory {
public:
    // Validates every snapshot and the (coin, date) uniqueness invariant.
    explicit MarketHistory(std::vector<MarketSnapshot> snapshots, int carry_forward_days = 7);

    Date first_date() const { return first_; }
    Date last_date() const { return last_; }
    bool contains(Date d) const { return first_ <= d && d <= last_; }
    int carry_forward_days() const { return carry_forward_days_; }

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_coins() const { return by_coin_.size(); }
    std::size_t n_dates() const;
    std::vector<CoinId> coins() const;

    // Most recent observation at or before `date` within the carry-forward
    // window. No range precondition: dates before the first observation
    // simply fail to resolve.
    std::optional<Quote> resolve(const CoinId& coin, Date date) const;

    // Price / market cap on `date` per the carry-forward rule.
    // Throws DataError if `date` lies outside [first_date, last_date].
    std::optional<double> price_at(const CoinId& coin, Date date) const;
    std::optional<double> cap_at(const CoinId& coin, Date date) const;

    // Coins whose price and cap both resolve on `date`. Sorted ascending.
    // Throws DataError if `date` lies outside the history range.
    std::vector<CoinId> coins_active_on(Date date) const;

    // All snapshots sorted by (date, coin).
    std::vector<MarketSnapshot> to_rows() const;

private:
    struct Observation {
        Date date;
        double price;
        double market_cap;
    };

    void check_in_range(Date date) const;

    std::map<CoinId, std::vector<Observation>> by_coin_;
    Date first_;
    Date last_;
    std::size_t n_rows_ = 0;
    int carry_forward_days_ = 7;
};

// Loads the `date,coin,price,market_cap` CSV defined in the README.
// Throws UsageError if the file cannot be opened and CsvError (with one
// RowError per offending row) on validation failures.
MarketHistory load_history(const std::string& path, int carry_forward_days = 7);

// Writes the identical CSV format, rows sorted by (date, coin). Values are
// printed with shortest-round-trip precision so load(write(h)) == h.
void write_history_csv(const MarketHistory& history, std::ostream& out);

}  // namespace cryptoindex
