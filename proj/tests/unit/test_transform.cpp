#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "expect.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "taylor/ingest.hpp"
#include "taylor/transform.hpp"

using namespace taylor;
using doctest::Approx;
using fixtures::kind_of;

namespace {

Series from(const char* name, const std::vector<double>& v, Quarter start = Quarter(1990, 1)) {
    return Series(name, start, v);
}

Series exp_of(const Series& s) {
    std::vector<double> v(s.values().begin(), s.values().end());
    for (auto& x : v) x = std::exp(x);
    return Series(s.name(), s.start(), v);
}

std::vector<double> random_walk(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> z(0.0, 0.01);
    std::vector<double> v(static_cast<std::size_t>(n));
    double level = 9.0;
    for (auto& x : v) x = level += 0.005 + z(rng);
    return v;
}

}  // namespace

TEST_CASE("natural log and year-over-year change on the US data") {
    const Dataset us = embedded_dataset(Country::us);
    const Quarter q90(1990, 1), q91(1991, 1);
    CHECK(natural_log(us.get("real_gdp")).at(q90) == Approx(oracle::log_change_percent(9358.289, 1.0) / 100).epsilon(1e-12));
    CHECK(natural_log(us.get("real_gdp")).at(q90) == Approx(9.1440178).epsilon(1e-7));
    CHECK(lag(us.get("cpi"), 4).at(q91) == 128.033);

    const Series infl = yoy_change(natural_log(us.get("cpi")), 4);
    CHECK(infl.start() == q91);
    const double expected = oracle::log_change_percent(134.767, 128.033);
    CHECK(infl.at(q91) == Approx(expected).epsilon(1e-12));
    CHECK(std::abs(infl.at(q91) - 5.1258) <= 5e-4);
    CHECK(inflation_gap(us.get("cpi")).at(q91) == Approx(expected - 2.0).epsilon(1e-12));

    TransformConfig zero_target;
    zero_target.inflation_target = 0.0;
    CHECK(inflation_gap(us.get("cpi"), zero_target).at(q91) == Approx(expected).epsilon(1e-12));
}

TEST_CASE("inflation gap conditions") {
    const Series flat = from("cpi", std::vector<double>(10, 100.0));
    const Series flat_gap = inflation_gap(flat);
    for (double g : flat_gap.values()) CHECK(g == Approx(-2.0).epsilon(1e-14));

    std::mt19937_64 rng(11);
    const Series cpi = exp_of(from("cpi", random_walk(rng, 30)));
    std::vector<double> scaled(cpi.values().begin(), cpi.values().end());
    for (auto& x : scaled) x *= 37.5;
    const Series a = inflation_gap(cpi), b = inflation_gap(from("cpi", scaled));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.values()[i] == Approx(b.values()[i]).epsilon(1e-9));

    CHECK(kind_of([&] { yoy_change(cpi, 0); }) == ErrorKind::domain);
    CHECK(kind_of([&] { yoy_change(from("x", {1, 2, 3}), 4); }) == ErrorKind::sample);
    CHECK(kind_of([] { inflation_gap(from("cpi", {1, 2, 0, 4, 5, 6})); }) == ErrorKind::domain);
}

TEST_CASE("linear trend gap") {
    const Series g = linear_trend_gap(exp_of(from("gdp", {0.0, 1.0, 3.0})));
    REQUIRE(g.size() == 3);
    CHECK(g.values()[0] == Approx(100.0 / 6).epsilon(1e-12));
    CHECK(g.values()[1] == Approx(-100.0 / 3).epsilon(1e-12));
    CHECK(g.values()[2] == Approx(100.0 / 6).epsilon(1e-12));

    std::vector<double> loglin(20);
    for (int t = 0; t < 20; ++t) loglin[t] = 8.0 + 0.01 * t;
    const Series loglin_gap = linear_trend_gap(exp_of(from("gdp", loglin)));
    for (double x : loglin_gap.values()) CHECK(std::abs(x) < 1e-9);

    std::mt19937_64 rng(3);
    const auto walk = random_walk(rng, 60);
    const Series gdp = exp_of(from("gdp", walk));
    const Series gap = linear_trend_gap(gdp);
    double sum = 0, dot = 0;
    for (std::size_t t = 0; t < gap.size(); ++t) {
        sum += gap.values()[t];
        dot += static_cast<double>(t) * gap.values()[t];
    }
    CHECK(std::abs(sum) < 1e-9 * 100 * 60);
    CHECK(std::abs(dot) < 1e-9 * 100 * 60 * 60);

    std::vector<double> scaled(gdp.values().begin(), gdp.values().end());
    for (auto& x : scaled) x *= 0.001;
    const Series gs = linear_trend_gap(from("gdp", scaled));
    for (std::size_t t = 0; t < gap.size(); ++t) CHECK(gs.values()[t] == Approx(gap.values()[t]).epsilon(1e-8).scale(1));

    CHECK(kind_of([] { linear_trend_gap(from("gdp", {1.0, 2.0})); }) == ErrorKind::sample);
}

TEST_CASE("HP trend matches a dense solve") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(8);
        for (auto& v : x) v = u(rng);
        const auto fast = hp_trend(x, 1600.0);
        const auto dense = oracle::dense_hp_trend(x, 1600.0);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(fast[i] - dense[i]) < 1e-8);
    }
    std::vector<double> long_x = random_walk(rng, 121);
    const auto fast = hp_trend(long_x, 1600.0);
    const auto dense = oracle::dense_hp_trend(long_x, 1600.0);
    for (std::size_t i = 0; i < long_x.size(); ++i) CHECK(std::abs(fast[i] - dense[i]) < 1e-8);
}

TEST_CASE("HP filter gap properties") {
    std::vector<double> lin(25), flat(25, 7.0);
    for (int t = 0; t < 25; ++t) lin[t] = 2.0 - 0.3 * t;
    const Series lin_gap = hp_filter_gap(exp_of(from("gdp", lin)), 1600.0);
    const Series flat_gap = hp_filter_gap(exp_of(from("gdp", flat)), 1600.0);
    for (double g : lin_gap.values()) CHECK(std::abs(g) < 1e-8);
    for (double g : flat_gap.values()) CHECK(std::abs(g) < 1e-8);

    std::mt19937_64 rng(9);
    const Series gdp = exp_of(from("gdp", random_walk(rng, 80)));
    const Series gap = hp_filter_gap(gdp, 1600.0);
    double sum = 0, dot = 0;
    for (std::size_t t = 0; t < gap.size(); ++t) {
        sum += gap.values()[t];
        dot += static_cast<double>(t) * gap.values()[t];
    }
    CHECK(std::abs(sum) < 1e-8);
    CHECK(std::abs(dot) < 1e-8 * 80);

    const Series loose = hp_filter_gap(gdp, 1e-8);
    for (double g : loose.values()) CHECK(std::abs(g) < 1e-6);
    const Series stiff = hp_filter_gap(gdp, 1e12);
    const Series linear = linear_trend_gap(gdp);
    for (std::size_t t = 0; t < gap.size(); ++t) CHECK(std::abs(stiff.values()[t] - linear.values()[t]) < 1e-4);

    CHECK(kind_of([&] { hp_filter_gap(gdp, 0.0); }) == ErrorKind::domain);
    CHECK(kind_of([&] { hp_filter_gap(gdp, -5.0); }) == ErrorKind::domain);
    CHECK(kind_of([] { hp_filter_gap(from("gdp", {1, 2, 3}), 1600.0); }) == ErrorKind::sample);
}

TEST_CASE("build_taylor_dataset adds the model series over the adjusted sample") {
    for (Country c : {Country::us, Country::uk}) {
        const Dataset raw = embedded_dataset(c);
        for (Detrend method : {Detrend::hp_filter, Detrend::linear_trend}) {
            TransformConfig cfg;
            cfg.detrend = method;
            const Dataset d = build_taylor_dataset(raw, cfg);
            for (const char* name : {"inflation_gap", "output_gap", "s", "real_gdp", "cpi"}) CHECK(d.has(name));
            REQUIRE(d.adjusted_sample());
            CHECK(*d.adjusted_sample() == QuarterRange::parse("1991Q1:2020Q1"));
            CHECK(d.adjusted_sample()->size() == 117);
        }
    }
    const Dataset us = embedded_dataset(Country::us);
    std::vector<Series> partial;
    for (const auto& [name, s] : us.series())
        if (name != "cpi") partial.push_back(s);
    const std::string msg = fixtures::message_of([&] { build_taylor_dataset(Dataset("us", partial)); });
    CHECK(msg.find("cpi") != std::string::npos);

    TransformConfig bad;
    bad.hp_lambda = -1;
    CHECK(kind_of([&] { build_taylor_dataset(us, bad); }) == ErrorKind::domain);
}
