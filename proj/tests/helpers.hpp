#pragma once

#include "cryptoindex/dates.hpp"
#include "cryptoindex/market_data.hpp"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace testutil {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0;; ++i) {
            path_ = base / ("cryptoindex_test_" + std::to_string(::getpid()) + "_" +
                            std::to_string(counter()++) + "_" + std::to_string(i));
            std::error_code ec;
            if (std::filesystem::create_directory(path_, ec)) break;
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    static int& counter() {
        static int n = 0;
        return n;
    }
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Bar {
    const char* date;
    const char* coin;
    double price;
    double cap;
};

inline cryptoindex::MarketHistory make_history(const std::vector<Bar>& bars, int window = 7) {
    std::vector<cryptoindex::MarketSnapshot> snapshots;
    snapshots.reserve(bars.size());
    for (const auto& bar : bars) {
        snapshots.push_back({cryptoindex::Date::parse(bar.date), cryptoindex::CoinId(bar.coin),
                             bar.price, bar.cap});
    }
    return cryptoindex::MarketHistory(std::move(snapshots), window);
}

struct ConstantCoin {
    std::string ticker;
    double price;
    double cap;
};

// Daily bars for `days` days starting at `start`, constant price/cap per coin.
inline cryptoindex::MarketHistory constant_universe(cryptoindex::Date start, int days,
                                                    const std::vector<ConstantCoin>& coins,
                                                    int window = 7) {
    std::vector<cryptoindex::MarketSnapshot> snapshots;
    snapshots.reserve(coins.size() * static_cast<std::size_t>(days));
    for (int i = 0; i < days; ++i) {
        for (const auto& coin : coins) {
            snapshots.push_back({start.plus_days(i), cryptoindex::CoinId(coin.ticker),
                                 coin.price, coin.cap});
        }
    }
    return cryptoindex::MarketHistory(std::move(snapshots), window);
}

// Ticker pool for generated universes.
inline std::string nth_ticker(int i) {
    std::string t;
    t.push_back(static_cast<char>('A' + i / 26 % 26));
    t.push_back(static_cast<char>('A' + i % 26));
    t.push_back(static_cast<char>('0' + i % 10));
    return t;
}

// Random-walk universe: every coin has data from its birth through the last
// day, with occasional holes short enough that carry-forward always bridges
// them (no mid-segment resolution failures by construction).
inline std::vector<cryptoindex::MarketSnapshot> random_universe_rows(
    std::mt19937_64& rng, cryptoindex::Date start, int days, int n_coins,
    int max_birth_offset = 0, double hole_probability = 0.05) {
    using cryptoindex::CoinId;
    std::uniform_real_distribution<double> price0(0.01, 5000.0);
    std::uniform_real_distribution<double> cap0(1e3, 1e12);
    std::normal_distribution<double> step(0.0, 0.03);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    std::vector<cryptoindex::MarketSnapshot> rows;
    for (int c = 0; c < n_coins; ++c) {
        const CoinId coin(nth_ticker(c));
        int birth = 0;
        if (max_birth_offset > 0) {
            birth = std::uniform_int_distribution<int>(0, max_birth_offset)(rng);
            if (c == 0) birth = 0;  // keep at least one coin alive from day one
        }
        double price = price0(rng);
        double cap = cap0(rng);
        int hole_left = 0;
        for (int i = birth; i < days; ++i) {
            price *= std::exp(step(rng));
            cap *= std::exp(step(rng));
            if (hole_left > 0) {
                --hole_left;
            } else if (i > birth && i < days - 1 && uniform(rng) < hole_probability) {
                hole_left = std::uniform_int_distribution<int>(0, 2)(rng);
            } else {
                rows.push_back({start.plus_days(i), coin, price, cap});
            }
        }
    }
    return rows;
}

}  // namespace testutil
