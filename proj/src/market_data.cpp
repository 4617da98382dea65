#include "cryptoindex/market_data.hpp"

#include "cryptoindex/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace cryptoindex {

CoinId::CoinId(std::string ticker) : ticker_(std::move(ticker)) {
    if (ticker_.empty()) throw DataError("empty coin ticker");
    for (char ch : ticker_) {
        const auto uch = static_cast<unsigned char>(ch);
        if (!std::isupper(uch) && !std::isdigit(uch)) {
            throw DataError("invalid coin ticker '" + ticker_ +
                            "': must be uppercase alphanumeric");
        }
    }
}

MarketHistory::MarketHistory(std::vector<MarketSnapshot> snapshots, int carry_forward_days)
    : carry_forward_days_(carry_forward_days) {
    if (carry_forward_days < 0) {
        throw std::invalid_argument("carry_forward_days must be >= 0");
    }
    if (snapshots.empty()) throw DataError("empty history");

    for (const auto& snap : snapshots) {
        if (!(snap.price > 0.0) || !std::isfinite(snap.price)) {
            throw DataError("non-positive price for " + snap.coin.str() + " on " +
                            snap.date.iso());
        }
        if (!(snap.market_cap > 0.0) || !std::isfinite(snap.market_cap)) {
            throw DataError("non-positive market cap for " + snap.coin.str() + " on " +
                            snap.date.iso());
        }
        by_coin_[snap.coin].push_back({snap.date, snap.price, snap.market_cap});
    }

    first_ = snapshots.front().date;
    last_ = snapshots.front().date;
    for (auto& [coin, obs] : by_coin_) {
        std::sort(obs.begin(), obs.end(),
                  [](const Observation& a, const Observation& b) { return a.date < b.date; });
        for (std::size_t i = 1; i < obs.size(); ++i) {
            if (obs[i].date == obs[i - 1].date) {
                throw DataError("duplicate snapshot for " + coin.str() + " on " +
                                obs[i].date.iso());
            }
        }
        first_ = std::min(first_, obs.front().date);
        last_ = std::max(last_, obs.back().date);
        n_rows_ += obs.size();
    }
}

std::size_t MarketHistory::n_dates() const {
    std::set<Date> dates;
    for (const auto& [coin, obs] : by_coin_) {
        for (const auto& o : obs) dates.insert(o.date);
    }
    return dates.size();
}

std::vector<CoinId> MarketHistory::coins() const {
    std::vector<CoinId> out;
    out.reserve(by_coin_.size());
    for (const auto& [coin, obs] : by_coin_) out.push_back(coin);
    return out;
}

std::optional<Quote> MarketHistory::resolve(const CoinId& coin, Date date) const {
    const auto it = by_coin_.find(coin);
    if (it == by_coin_.end()) return std::nullopt;
    const auto& obs = it->second;
    // Last observation at or before `date`.
    auto pos = std::upper_bound(obs.begin(), obs.end(), date,
                                [](Date d, const Observation& o) { return d < o.date; });
    if (pos == obs.begin()) return std::nullopt;
    --pos;
    const int lag = date - pos->date;
    if (lag > carry_forward_days_) return std::nullopt;
    return Quote{pos->price, pos->market_cap, lag};
}

void MarketHistory::check_in_range(Date date) const {
    if (!contains(date)) {
        throw DataError("date " + date.iso() + " outside history range [" + first_.iso() +
                        ", " + last_.iso() + "]");
    }
}

std::optional<double> MarketHistory::price_at(const CoinId& coin, Date date) const {
    check_in_range(date);
    const auto quote = resolve(coin, date);
    if (!quote) return std::nullopt;
    return quote->price;
}

std::optional<double> MarketHistory::cap_at(const CoinId& coin, Date date) const {
    check_in_range(date);
    const auto quote = resolve(coin, date);
    if (!quote) return std::nullopt;
    return quote->market_cap;
}

std::vector<CoinId> MarketHistory::coins_active_on(Date date) const {
    check_in_range(date);
    std::vector<CoinId> active;
    for (const auto& [coin, obs] : by_coin_) {
        if (resolve(coin, date)) active.push_back(coin);
    }
    return active;
}

std::vector<MarketSnapshot> MarketHistory::to_rows() const {
    std::vector<MarketSnapshot> rows;
    rows.reserve(n_rows_);
    for (const auto& [coin, obs] : by_coin_) {
        for (const auto& o : obs) rows.push_back({o.date, coin, o.price, o.market_cap});
    }
    std::sort(rows.begin(), rows.end(), [](const MarketSnapshot& a, const MarketSnapshot& b) {
        if (a.date != b.date) return a.date < b.date;
        return a.coin < b.coin;
    });
    return rows;
}

namespace {

constexpr std::string_view kHistoryHeader = "date,coin,price,market_cap";

struct ParsedRow {
    std::optional<MarketSnapshot> snapshot;
    std::optional<std::string> error;
};

ParsedRow parse_history_row(const std::string& line) {
    const auto fields = split(line, ',');
    if (fields.size() != 4) {
        return {std::nullopt,
                "expected 4 columns (date,coin,price,market_cap), got " +
                    std::to_string(fields.size())};
    }
    Date date;
    try {
        date = Date::parse(trim(fields[0]));
    } catch (const UsageError& e) {
        return {std::nullopt, e.what()};
    }
    std::optional<CoinId> coin;
    try {
        coin.emplace(trim(fields[1]));
    } catch (const DataError& e) {
        return {std::nullopt, e.what()};
    }
    double price = 0.0;
    double cap = 0.0;
    if (!parse_double(trim(fields[2]), price)) {
        return {std::nullopt, "unparseable price '" + trim(fields[2]) + "'"};
    }
    if (!parse_double(trim(fields[3]), cap)) {
        return {std::nullopt, "unparseable market_cap '" + trim(fields[3]) + "'"};
    }
    if (!(price > 0.0) || !std::isfinite(price)) {
        return {std::nullopt, "price must be a positive finite number"};
    }
    if (!(cap > 0.0) || !std::isfinite(cap)) {
        return {std::nullopt, "market_cap must be a positive finite number"};
    }
    return {MarketSnapshot{date, *coin, price, cap}, std::nullopt};
}

}  // namespace

MarketHistory load_history(const std::string& path, int carry_forward_days) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open data file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) {
        throw CsvError("empty history: '" + path + "' has no header row", {});
    }
    if (trim(line) != kHistoryHeader) {
        throw CsvError("bad header in '" + path + "': expected '" +
                           std::string(kHistoryHeader) + "'",
                       {{1, "bad header: '" + trim(line) + "'"}});
    }

    std::vector<MarketSnapshot> snapshots;
    std::vector<RowError> errors;
    std::set<std::pair<CoinId, Date>> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        auto [snapshot, error] = parse_history_row(line);
        if (error) {
            errors.push_back({line_no, *error});
            continue;
        }
        if (!seen.insert({snapshot->coin, snapshot->date}).second) {
            errors.push_back({line_no, "duplicate (coin, date): " + snapshot->coin.str() +
                                           ", " + snapshot->date.iso()});
            continue;
        }
        snapshots.push_back(std::move(*snapshot));
    }

    if (!errors.empty()) {
        throw CsvError("invalid data in '" + path + "': " + std::to_string(errors.size()) +
                           " bad row(s)",
                       std::move(errors));
    }
    if (snapshots.empty()) {
        throw CsvError("empty history: '" + path + "' has a header but no data rows", {});
    }
    return MarketHistory(std::move(snapshots), carry_forward_days);
}

void write_history_csv(const MarketHistory& history, std::ostream& out) {
    out << kHistoryHeader << '\n';
    for (const auto& row : history.to_rows()) {
        out << row.date.iso() << ',' << row.coin.str() << ',' << shortest(row.price) << ','
            << shortest(row.market_cap) << '\n';
    }
}

}  // namespace cryptoindex
