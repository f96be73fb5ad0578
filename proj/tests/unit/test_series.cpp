#include <doctest.h>

#include <random>
#include <string>

#include "taylor/error.hpp"
#include "taylor/series.hpp"
#include "expect.hpp"

using namespace taylor;
using fixtures::kind_of;

namespace {

Series ramp(const char* name, Quarter start, int n, double base = 1.0) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = base + i;
    return Series(name, start, v);
}

}  // namespace

TEST_CASE("quarter arithmetic and formatting") {
    const Quarter q(1990, 1);
    CHECK(q.str() == "1990Q1");
    CHECK(q.advanced(3) == Quarter(1990, 4));
    CHECK(q.advanced(4) == Quarter(1991, 1));
    CHECK(q.advanced(-1) == Quarter(1989, 4));
    CHECK(Quarter(2020, 1).minus(q) == 120);
    CHECK(q < q.next());
    CHECK(Quarter::parse("1991-Q2") == Quarter(1991, 2));
    CHECK(Quarter::parse("1991q3") == Quarter(1991, 3));
    CHECK(kind_of([] { Quarter(2000, 5); }) == ErrorKind::domain);
    CHECK(kind_of([] { Quarter::parse("1991Q7"); }) != ErrorKind::config);
    CHECK(kind_of([] { Quarter::parse("nonsense"); }) == ErrorKind::parse);
}

TEST_CASE("quarter ranges") {
    const auto r = QuarterRange::parse("1991Q1:2020Q1");
    CHECK(r.size() == 117);
    CHECK(r.str() == "1991Q1 2020Q1");
    CHECK(QuarterRange::parse("1991Q1 2020Q1") == r);
    CHECK(QuarterRange::parse("1991Q1-2020Q1") == r);
    const QuarterRange other{Quarter(2000, 1), Quarter(2030, 4)};
    CHECK(r.intersect(other) == QuarterRange{Quarter(2000, 1), Quarter(2020, 1)});
    const QuarterRange disjoint{Quarter(2021, 1), Quarter(2022, 1)};
    CHECK(r.intersect(disjoint).empty());
    CHECK(r.intersect(disjoint).size() == 0);
}

TEST_CASE("series construction rejects empty and non-finite data") {
    CHECK(kind_of([] { Series("x", Quarter(1990, 1), {}); }) == ErrorKind::sample);
    CHECK(kind_of([] { Series("x", Quarter(1990, 1), {1.0, std::nan("")}); }) == ErrorKind::domain);
    const Series s = ramp("x", Quarter(1990, 1), 8);
    CHECK(s.end() == Quarter(1991, 4));
    CHECK(s.at(Quarter(1990, 3)) == 3.0);
    CHECK(kind_of([&] { (void)s.at(Quarter(1992, 1)); }) == ErrorKind::sample);
}

TEST_CASE("lag shifts the calendar and drops the tail") {
    const Series s = ramp("x", Quarter(1990, 1), 6);
    const Series l2 = lag(s, 2);
    CHECK(l2.name() == "x(-2)");
    CHECK(l2.start() == Quarter(1990, 3));
    CHECK(l2.size() == 4);
    CHECK(l2.at(Quarter(1990, 3)) == s.at(Quarter(1990, 1)));
    CHECK(lag(s, 0) == s);
    CHECK(kind_of([&] { lag(s, 6); }) == ErrorKind::sample);
    CHECK(kind_of([&] { lag(s, -1); }) == ErrorKind::domain);
}

TEST_CASE("lag property: value at t equals source at t-k") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(5, 40);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = len(rng);
        const int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
        const Series s = ramp("v", Quarter(1985, 2), n, 10.0);
        const Series l = lag(s, k);
        for (Quarter q = l.start(); q <= l.end(); q = q.next()) CHECK(l.at(q) == s.at(q.advanced(-k)));
    }
}

TEST_CASE("natural log reports the offending quarter") {
    const Series bad("cpi", Quarter(1990, 1), {1.0, 2.0, 0.0});
    try {
        natural_log(bad);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::domain);
        CHECK(std::string(e.what()).find("1990Q3") != std::string::npos);
    }
}

TEST_CASE("term syntax") {
    const Term t = Term::parse("inflation_gap(-2)");
    CHECK(t.name == "inflation_gap");
    CHECK(t.lag == 2);
    CHECK(Term::parse("s").lag == 0);
    CHECK(Term::parse("s(-1)").label() == "S(-1)");
    CHECK(Term::parse("output_gap").label() == "OUTPUT_GAP");
    CHECK(kind_of([] { Term::parse("s(+1)"); }) == ErrorKind::parse);
    CHECK(kind_of([] { Term::parse("s(-x)"); }) == ErrorKind::parse);
}

TEST_CASE("dataset lookup and aliases") {
    const Dataset d("us", {ramp("interest_rate", Quarter(1990, 1), 10), ramp("stock_index", Quarter(1990, 2), 10)});
    CHECK(d.get("IT").name() == "interest_rate");
    CHECK(d.get("sp500").name() == "stock_index");
    CHECK(d.get("ftse100").name() == "stock_index");
    CHECK(d.span() == QuarterRange{Quarter(1990, 2), Quarter(1992, 2)});
    try {
        (void)d.get("foo");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::config);
        CHECK(std::string(e.what()).find("foo") != std::string::npos);
    }
    CHECK(kind_of([&] { require_raw_series(d); }) == ErrorKind::config);
}

TEST_CASE("align_sample builds a rectangular block over the feasible range") {
    const Dataset d("us", {ramp("a", Quarter(1990, 1), 12), ramp("b", Quarter(1990, 3), 8)});
    const std::vector<Term> terms{{"a", 0}, {"b", 1}};
    const auto m = align_sample(d, terms);
    CHECK(m.sample == QuarterRange{Quarter(1990, 4), Quarter(1992, 3)});
    CHECK(m.rows() == m.sample.size());
    CHECK(m.data.cols() == 2);
    CHECK(m.data(0, 0) == d.get("a").at(Quarter(1990, 4)));
    CHECK(m.data(0, 1) == d.get("b").at(Quarter(1990, 3)));
    CHECK(m.data.allFinite());

    const auto sub = align_sample(d, terms, QuarterRange{Quarter(1991, 1), Quarter(1991, 4)});
    CHECK(sub.rows() == 4);

    try {
        align_sample(d, terms, QuarterRange{Quarter(1990, 1), Quarter(1991, 4)});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::sample);
        CHECK(std::string(e.what()).find("maximal feasible range is 1990Q4 1992Q3") != std::string::npos);
    }
}
