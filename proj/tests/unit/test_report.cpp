#include <doctest.h>

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "expect.hpp"
#include "taylor/reproduce.hpp"

using namespace taylor;
using fixtures::kind_of;
using nlohmann::json;

namespace {

const Dataset& us() {
    static const Dataset d = reproduction_dataset(Country::us);
    return d;
}

FitResult baseline() { return fit_ols(us(), baseline_spec(Country::us)); }

}  // namespace

TEST_CASE("text rendering of a fit") {
    const FitResult f = baseline();
    const std::string text = render_text(f);
    CHECK(text.find("INFLATION_GAP") != std::string::npos);
    CHECK(text.find(fmt::format("{:.6f}", f.coefficients[0])) != std::string::npos);
    CHECK(text.find("Included observations: 117") != std::string::npos);
    CHECK(text.find("-0.000000") == std::string::npos);
    CHECK(render_text(baseline()) == text);
    CHECK(render_json(baseline()) == render_json(f));
}

TEST_CASE("small p-values print as zero in text and stay exact in JSON") {
    const TestReport chow = chow_breakpoint_test(us(), baseline_spec(Country::us), Quarter(2003, 1));
    CHECK(chow.stat("f").p.value() > 0.0);
    CHECK(chow.stat("f").p.value() < 5e-5);
    CHECK(render_text(chow).find("0.0000") != std::string::npos);
    const json doc = json::parse(render_json(chow));
    bool found = false;
    for (const auto& s : doc["statistics"])
        if (s["key"] == "f") {
            CHECK(s["p"].get<double>() == chow.stat("f").p.value());
            found = true;
        }
    CHECK(found);
}

TEST_CASE("JSON rendering keeps full precision") {
    const FitResult f = baseline();
    const json doc = json::parse(render_json(f));
    CHECK(doc["coefficients"].size() == 3);
    CHECK(doc["labels"][0] == "INFLATION_GAP");
    CHECK(doc["coefficients"][0].get<double>() == f.coefficients[0]);
    CHECK(doc["p_values"][2].get<double>() == f.p_values[2]);
    CHECK(doc["summary"]["r2"].get<double>() == f.r2);
    CHECK(doc["sample"]["n_obs"].get<int>() == 117);

    const GmmResult g = fit_linear_gmm(us(), gmm_spec(Country::us));
    const json gd = json::parse(render_json(g));
    CHECK(gd["summary"]["j_statistic"].get<double>() == g.j_statistic);
    CHECK(render_text(g).find("J-statistic") != std::string::npos);
}

TEST_CASE("report lists") {
    const std::string empty = render_json(std::span<const TestReport>{});
    CHECK(empty.substr(0, empty.find_last_not_of('\n') + 1) == "[]");
    const FitResult f = fit_ols(us(), augmented_spec(Country::us, false));
    const std::vector<TestReport> reports{white_test(f), breusch_godfrey_test(f, 1)};
    const json doc = json::parse(render_json(reports));
    CHECK(doc.is_array());
    CHECK(doc.size() == 2);
}

TEST_CASE("output formats") {
    CHECK(parse_output_format("json") == OutputFormat::json);
    CHECK(parse_output_format("TEXT") == OutputFormat::text);
    CHECK(kind_of([] { parse_output_format("xml"); }) == ErrorKind::config);
}

TEST_CASE("flattened labels") {
    const FieldMap f = flatten(baseline());
    for (const char* label : {"coef.INFLATION_GAP", "se.C", "t.OUTPUT_GAP", "p.C", "r2", "adj_r2", "durbin_watson",
                              "aic", "schwarz", "hannan_quinn", "log_likelihood", "f_statistic", "f_prob", "n_obs"})
        CHECK_MESSAGE(f.count(label) == 1, std::string(label));
    CHECK(f.count("hac_bandwidth") == 0);
    CHECK(flatten(fit_ols(us(), augmented_spec(Country::us, true))).at("hac_bandwidth") == 5.0);

    const FieldMap w = flatten(chow_breakpoint_test(us(), baseline_spec(Country::us), Quarter(2006, 1)));
    for (const char* label : {"stat.f", "p.f", "df1.f", "df2.f", "stat.lr", "stat.wald"})
        CHECK_MESSAGE(w.count(label) == 1, std::string(label));
}

TEST_CASE("golden comparison") {
    const GoldenTable golden = load_golden(golden_path(default_golden_dir(), 1));
    CHECK(golden.table_id == 1);
    CHECK(golden.country == "us");
    const FieldMap fields = flatten(baseline());
    const GoldenDiff clean = compare_golden(fields, golden);
    CHECK(clean.passed());
    CHECK(clean.failures() == 0);
    CHECK(clean.cells.size() == golden.cells.size());

    for (std::size_t i = 0; i < golden.cells.size(); ++i) {
        GoldenTable bent = golden;
        GoldenCell& cell = bent.cells[i];
        const double tol = std::max(cell.abs_tol.value_or(0.0), cell.rel_tol.value_or(0.0) * std::abs(cell.expected));
        cell.expected += 10.0 * tol + 1e-9;
        const GoldenDiff diff = compare_golden(fields, bent);
        CHECK(diff.failures() == 1);
        CHECK_FALSE(diff.cells[i].pass);
        CHECK(render_text(diff).find(cell.label) != std::string::npos);
    }

    GoldenTable unknown = golden;
    unknown.cells.push_back({"coef.NOPE", 1.0, 0.1, std::nullopt});
    CHECK(kind_of([&] { compare_golden(fields, unknown); }) == ErrorKind::schema);
    const json diff_doc = json::parse(render_json(clean));
    CHECK(diff_doc["pass"].get<bool>());
}

TEST_CASE("tolerance rule") {
    CHECK(within_tolerance(1.004, 1.0, 0.005, std::nullopt));
    CHECK_FALSE(within_tolerance(1.006, 1.0, 0.005, std::nullopt));
    CHECK(within_tolerance(101.0, 100.0, 0.005, 0.01));
    CHECK_FALSE(within_tolerance(101.5, 100.0, 0.005, 0.01));
    CHECK_FALSE(within_tolerance(std::nan(""), 1.0, 0.1, 0.1));
}

TEST_CASE("golden schema errors") {
    CHECK_NOTHROW(parse_golden(R"({"table_id": 3, "country": "us", "title": "t",
                                   "cells": [{"label": "stat.f", "expected": 1, "rel_tol": 0.1}]})"));
    for (const char* bad : {
             "[]",
             "not json",
             R"({"country": "us", "title": "t", "cells": []})",
             R"({"table_id": 3, "country": "us", "title": "t"})",
             R"({"table_id": 30, "country": "us", "title": "t", "cells": []})",
             R"({"table_id": 3, "country": "us", "title": "t", "cells": [{"label": "x", "expected": 1}]})",
             R"({"table_id": 3, "country": "us", "title": "t", "cells": [{"expected": 1, "abs_tol": 1}]})",
             R"({"table_id": 3, "country": "us", "title": "t", "cells": [{"label": "x", "abs_tol": 1}]})",
         })
        CHECK_MESSAGE(kind_of([&] { parse_golden(bad); }) == ErrorKind::schema, std::string(bad));
    CHECK(golden_path("/g", 7).filename() == "table07.json");
}

TEST_CASE("actual and fitted export") {
    const FitResult f = baseline();
    const std::string csv = actual_fitted_csv(f);
    CHECK(csv.rfind("date,actual,fitted,residual\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 118);
    CHECK(csv.find("1991-Q1,") != std::string::npos);
}
