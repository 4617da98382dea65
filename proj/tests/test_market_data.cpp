#include "doctest.h"

#include "cryptoindex/market_data.hpp"

#include "helpers.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace cryptoindex;
using testutil::Bar;
using testutil::make_history;

TEST_CASE("CoinId accepts uppercase alphanumeric tickers only") {
    CHECK(CoinId("BTC").str() == "BTC");
    CHECK(CoinId("X2Y").str() == "X2Y");
    for (const char* bad : {"", "btc", "B-C", "BTC ", "B.C", "bTC"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS((void)CoinId(bad), DataError);
    }
}

TEST_CASE("history rejects invalid snapshots") {
    CHECK_THROWS_AS(make_history({{"2015-01-01", "BTC", -1.0, 1e9}}), DataError);
    CHECK_THROWS_AS(make_history({{"2015-01-01", "BTC", 0.0, 1e9}}), DataError);
    CHECK_THROWS_AS(make_history({{"2015-01-01", "BTC", 10.0, 0.0}}), DataError);
    CHECK_THROWS_AS(
        make_history({{"2015-01-01", "BTC", std::numeric_limits<double>::infinity(), 1e9}}),
        DataError);
    CHECK_THROWS_AS(
        make_history({{"2015-01-01", "BTC", std::numeric_limits<double>::quiet_NaN(), 1e9}}),
        DataError);
    // duplicate (coin, date)
    CHECK_THROWS_AS(
        make_history({{"2015-01-01", "BTC", 10.0, 1e9}, {"2015-01-01", "BTC", 11.0, 1e9}}),
        DataError);
    // bad carry-forward window: a parameter problem, not a data problem
    CHECK_THROWS_AS(make_history({{"2015-01-01", "BTC", 10.0, 1e9}}, -1), std::invalid_argument);
    // empty history
    CHECK_THROWS_AS(MarketHistory({}), DataError);
}

TEST_CASE("history counts rows, coins and dates") {
    const auto h = make_history({
        {"2015-01-01", "BTC", 300.0, 4e9},
        {"2015-01-01", "ETH", 10.0, 1e9},
        {"2015-01-02", "BTC", 310.0, 4.1e9},
    });
    CHECK(h.n_rows() == 3);
    CHECK(h.n_coins() == 2);
    CHECK(h.n_dates() == 2);
    CHECK(h.first_date() == Date::parse("2015-01-01"));
    CHECK(h.last_date() == Date::parse("2015-01-02"));
    const auto coins = h.coins();
    REQUIRE(coins.size() == 2);
    CHECK(coins[0].str() == "BTC");
    CHECK(coins[1].str() == "ETH");
}

TEST_CASE("exact observations win over carried ones") {
    const auto h = make_history({
        {"2015-01-01", "BTC", 300.0, 4e9},
        {"2015-01-03", "BTC", 320.0, 4.2e9},
    });
    const auto q = h.resolve(CoinId("BTC"), Date::parse("2015-01-03"));
    REQUIRE(q.has_value());
    CHECK(q->price == 320.0);
    CHECK(q->market_cap == 4.2e9);
    CHECK(q->lag_days == 0);
}

TEST_CASE("carry-forward bridges short gaps") {
    const auto h = make_history({
        {"2015-01-01", "BTC", 300.0, 4e9},
        {"2015-01-10", "BTC", 350.0, 4.5e9},
    });
    SUBCASE("gap of 2 days resolves to the stale value") {
        const auto q = h.resolve(CoinId("BTC"), Date::parse("2015-01-03"));
        REQUIRE(q.has_value());
        CHECK(q->price == 300.0);
        CHECK(q->lag_days == 2);
        CHECK(h.price_at(CoinId("BTC"), Date::parse("2015-01-03")) == 300.0);
        CHECK(h.cap_at(CoinId("BTC"), Date::parse("2015-01-03")) == 4e9);
    }
    SUBCASE("lag equal to the window still resolves") {
        const auto q = h.resolve(CoinId("BTC"), Date::parse("2015-01-08"));
        REQUIRE(q.has_value());
        CHECK(q->lag_days == 7);
    }
    SUBCASE("lag beyond the window does not") {
        CHECK_FALSE(h.resolve(CoinId("BTC"), Date::parse("2015-01-09")).has_value());
        CHECK_FALSE(h.price_at(CoinId("BTC"), Date::parse("2015-01-09")).has_value());
    }
    SUBCASE("a smaller window tightens the rule") {
        const auto tight = make_history(
            {{"2015-01-01", "BTC", 300.0, 4e9}, {"2015-01-10", "BTC", 350.0, 4.5e9}}, 1);
        CHECK(tight.resolve(CoinId("BTC"), Date::parse("2015-01-02")).has_value());
        CHECK_FALSE(tight.resolve(CoinId("BTC"), Date::parse("2015-01-03")).has_value());
    }
    SUBCASE("window zero means exact hits only") {
        const auto exact = make_history(
            {{"2015-01-01", "BTC", 300.0, 4e9}, {"2015-01-10", "BTC", 350.0, 4.5e9}}, 0);
        CHECK(exact.resolve(CoinId("BTC"), Date::parse("2015-01-01")).has_value());
        CHECK_FALSE(exact.resolve(CoinId("BTC"), Date::parse("2015-01-02")).has_value());
    }
}

TEST_CASE("resolve before a coin's first observation is absent") {
    const auto h = make_history({
        {"2015-01-01", "BTC", 300.0, 4e9},
        {"2015-01-05", "ETH", 10.0, 1e9},
    });
    CHECK_FALSE(h.resolve(CoinId("ETH"), Date::parse("2015-01-04")).has_value());
    CHECK_FALSE(h.resolve(CoinId("DOGE"), Date::parse("2015-01-03")).has_value());
}

TEST_CASE("price_at rejects dates outside the history range") {
    const auto h = make_history({{"2015-01-05", "BTC", 300.0, 4e9}});
    CHECK_THROWS_AS((void)h.price_at(CoinId("BTC"), Date::parse("2015-01-04")), DataError);
    CHECK_THROWS_AS((void)h.cap_at(CoinId("BTC"), Date::parse("2015-01-06")), DataError);
    CHECK_THROWS_AS((void)h.coins_active_on(Date::parse("2015-01-06")), DataError);
}

TEST_CASE("coins_active_on lists every coin that resolves, sorted") {
    const auto h = make_history({
        {"2015-01-01", "ETH", 10.0, 1e9},
        {"2015-01-01", "BTC", 300.0, 4e9},
        {"2015-01-01", "XRP", 0.02, 5e8},
        {"2015-01-20", "BTC", 310.0, 4.1e9},
    });
    const auto on_first = h.coins_active_on(Date::parse("2015-01-01"));
    REQUIRE(on_first.size() == 3);
    CHECK(on_first[0].str() == "BTC");
    CHECK(on_first[1].str() == "ETH");
    CHECK(on_first[2].str() == "XRP");

    // 19 days later only BTC has data within the 7-day window
    const auto on_late = h.coins_active_on(Date::parse("2015-01-20"));
    REQUIRE(on_late.size() == 1);
    CHECK(on_late[0].str() == "BTC");
}

TEST_CASE("load_history reads a minimal file") {
    testutil::TempDir dir;
    const auto path = dir.file("two_rows.csv");
    testutil::write_file(path,
                         "date,coin,price,market_cap\n"
                         "2015-01-01,BTC,300.0,4.0e9\n"
                         "2015-01-01,ETH,10.0,1.0e9\n");
    const auto h = load_history(path);
    CHECK(h.n_rows() == 2);
    CHECK(h.n_coins() == 2);
    CHECK(h.first_date() == Date::parse("2015-01-01"));
    CHECK(h.last_date() == Date::parse("2015-01-01"));
    CHECK(h.price_at(CoinId("BTC"), Date::parse("2015-01-01")) == 300.0);
    CHECK(h.cap_at(CoinId("ETH"), Date::parse("2015-01-01")) == 1.0e9);
}

TEST_CASE("load_history reports every bad row with its line number") {
    testutil::TempDir dir;
    const auto path = dir.file("bad.csv");
    testutil::write_file(path,
                         "date,coin,price,market_cap\n"
                         "2015-01-01,BTC,300.0,4.0e9\n"
                         "2015-01-02,BTC,-1,4.0e9\n"
                         "2015-13-01,ETH,10.0,1.0e9\n"
                         "2015-01-02,ETH,10.0\n"
                         "2015-01-03,eth,10.0,1.0e9\n");
    try {
        (void)load_history(path);
        FAIL("expected CsvError");
    } catch (const CsvError& e) {
        REQUIRE(e.rows().size() == 4);
        CHECK(e.rows()[0].line == 3);
        CHECK(e.rows()[0].message.find("price") != std::string::npos);
        CHECK(e.rows()[1].line == 4);
        CHECK(e.rows()[2].line == 5);
        CHECK(e.rows()[3].line == 6);
    }
}

TEST_CASE("load_history rejects duplicate rows") {
    testutil::TempDir dir;
    const auto path = dir.file("dup.csv");
    testutil::write_file(path,
                         "date,coin,price,market_cap\n"
                         "2015-01-01,BTC,300.0,4.0e9\n"
                         "2015-01-01,BTC,301.0,4.0e9\n");
    CHECK_THROWS_AS((void)load_history(path), CsvError);
}

TEST_CASE("load_history rejects empty and header-only files") {
    testutil::TempDir dir;
    const auto empty = dir.file("empty.csv");
    testutil::write_file(empty, "");
    CHECK_THROWS_WITH_AS((void)load_history(empty), doctest::Contains("empty history"), CsvError);

    const auto header_only = dir.file("header_only.csv");
    testutil::write_file(header_only, "date,coin,price,market_cap\n");
    CHECK_THROWS_WITH_AS((void)load_history(header_only), doctest::Contains("empty history"),
                         CsvError);
}

TEST_CASE("load_history rejects a wrong header and a missing file") {
    testutil::TempDir dir;
    const auto path = dir.file("header.csv");
    testutil::write_file(path, "date,ticker,price,market_cap\n2015-01-01,BTC,300.0,4.0e9\n");
    CHECK_THROWS_AS((void)load_history(path), CsvError);
    CHECK_THROWS_AS((void)load_history(dir.file("nonexistent.csv")), UsageError);
}

TEST_CASE("history CSV round-trips exactly") {
    std::mt19937_64 rng(77);
    for (int iteration = 0; iteration < 20; ++iteration) {
        auto rows = testutil::random_universe_rows(rng, Date::parse("2015-01-01"), 40,
                                                   3 + static_cast<int>(rng() % 4),
                                                   /*max_birth_offset=*/10);
        const MarketHistory h(rows);

        std::ostringstream out;
        write_history_csv(h, out);
        testutil::TempDir dir;
        const auto path = dir.file("roundtrip.csv");
        testutil::write_file(path, out.str());
        const auto reloaded = load_history(path, h.carry_forward_days());

        const auto a = h.to_rows();
        const auto b = reloaded.to_rows();
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].date == b[i].date);
            CHECK(a[i].coin == b[i].coin);
            CHECK(a[i].price == b[i].price);
            CHECK(a[i].market_cap == b[i].market_cap);
        }
    }
}

TEST_CASE("to_rows is sorted by date then coin") {
    const auto h = make_history({
        {"2015-01-02", "BTC", 310.0, 4.1e9},
        {"2015-01-01", "ETH", 10.0, 1e9},
        {"2015-01-01", "BTC", 300.0, 4e9},
    });
    const auto rows = h.to_rows();
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].coin.str() == "BTC");
    CHECK(rows[0].date == Date::parse("2015-01-01"));
    CHECK(rows[1].coin.str() == "ETH");
    CHECK(rows[2].date == Date::parse("2015-01-02"));
}
