#include "taylor/reproduce.hpp"

#include <fmt/format.h>

#include "taylor/error.hpp"

namespace taylor {

namespace {

Term t(const char* name, int lag = 0) { return {name, lag}; }

const Term kConst{"c", 0};

RegressionSpec model(std::vector<Term> regressors) {
    RegressionSpec s;
    s.dependent = t("interest_rate");
    s.regressors = std::move(regressors);
    return s;
}

CovarianceSpec newey_west_5() {
    CovarianceSpec c;
    c.kind = CovarianceKind::hac;
    c.hac.bandwidth = 5;
    return c;
}

}  // namespace

RegressionSpec baseline_spec(Country c) {
    if (c == Country::uk) return model({kConst, t("inflation_gap"), t("output_gap")});
    return model({t("inflation_gap"), t("output_gap"), kConst});
}

RegressionSpec lagged_stock_spec(Country) {
    return model({kConst, t("inflation_gap"), t("output_gap"), t("s", 1)});
}

RegressionSpec augmented_spec(Country, bool hac) {
    RegressionSpec s = model({t("inflation_gap"), t("output_gap"), t("s"), kConst});
    s.sample = QuarterRange{Quarter(1991, 1), Quarter(2020, 1)};
    if (hac) s.covariance = newey_west_5();
    return s;
}

GmmSpec gmm_spec(Country) {
    GmmSpec g;
    g.base = model({kConst, t("inflation_gap"), t("output_gap"), t("s")});
    g.instruments = {t("inflation_gap", 1), t("inflation_gap", 2), t("output_gap", 1), t("output_gap", 2)};
    g.add_constant_instrument = true;
    g.weighting = GmmWeighting::hac;
    g.hac.bandwidth = 5;
    g.weight_updates = 1;
    return g;
}

Dataset reproduction_dataset(Country c, const TransformConfig& cfg) {
    return build_taylor_dataset(embedded_dataset(c), cfg);
}

std::vector<int> tables_for(Country c) {
    std::vector<int> ids;
    const int lo = c == Country::us ? 1 : 10;
    const int hi = c == Country::us ? 9 : 17;
    for (int i = lo; i <= hi; ++i) ids.push_back(i);
    return ids;
}

bool table_belongs(Country c, int id) { return c == Country::us ? (id >= 1 && id <= 9) : (id >= 10 && id <= 17); }

std::string table_title(int id) {
    switch (id) {
        case 1: return "US least squares: IT on INFLATION_GAP, OUTPUT_GAP, C";
        case 2: return "US Wald test: C(1)=0.5, C(2)=0.5";
        case 3: return "US Chow breakpoint test: 2003Q1";
        case 4: return "US Chow breakpoint test: 2006Q1";
        case 5: return "US least squares with S(-1)";
        case 6: return "US White heteroskedasticity test";
        case 7: return "US Breusch-Godfrey LM test, 1 lag";
        case 8: return "US least squares with Newey-West HAC errors";
        case 9: return "US GMM with lagged-gap instruments";
        case 10: return "UK least squares: IT on C, INFLATION_GAP, OUTPUT_GAP";
        case 11: return "UK Wald test: C(1)=0.5, C(2)=0.5";
        case 12: return "UK Chow breakpoint test: 2006Q1";
        case 13: return "UK least squares with S(-1)";
        case 14: return "UK White heteroskedasticity test";
        case 15: return "UK Breusch-Godfrey LM test, 1 lag";
        case 16: return "UK least squares with Newey-West HAC errors";
        case 17: return "UK GMM with lagged-gap instruments";
        default: fail(ErrorKind::config, fmt::format("no table {}", id));
    }
}

TableRun run_table(const Dataset& d, Country c, int id) {
    if (!table_belongs(c, id))
        fail(ErrorKind::config, fmt::format("table {} is not a {} table (US: 1-9, UK: 10-17)", id, to_string(c)));
    // Position of the table within the US sequence; the UK has no second Chow table.
    static constexpr int kUkLayout[] = {1, 2, 3, 5, 6, 7, 8, 9};
    const int kind = c == Country::us ? id : kUkLayout[id - 10];
    TableRun run{id, c, table_title(id), TableOutput{}};
    switch (kind) {
        case 1: run.output = fit_ols(d, baseline_spec(c)); break;
        case 2: {
            const FitResult fit = fit_ols(d, baseline_spec(c));
            run.output = wald_test(fit, parse_restrictions("c(1)=0.5, c(2)=0.5", fit.labels));
            break;
        }
        case 3:
            run.output = chow_breakpoint_test(d, baseline_spec(c), c == Country::us ? Quarter(2003, 1) : Quarter(2006, 1));
            break;
        case 4: run.output = chow_breakpoint_test(d, baseline_spec(c), Quarter(2006, 1)); break;
        case 5: run.output = fit_ols(d, lagged_stock_spec(c)); break;
        case 6: run.output = white_test(fit_ols(d, augmented_spec(c, false))); break;
        case 7: run.output = breusch_godfrey_test(fit_ols(d, augmented_spec(c, false)), 1); break;
        case 8: run.output = fit_ols(d, augmented_spec(c, true)); break;
        default: run.output = fit_linear_gmm(d, gmm_spec(c)); break;
    }
    return run;
}

FieldMap flatten(const TableOutput& out) {
    return std::visit([](const auto& r) { return flatten(r); }, out);
}

std::string render(const TableOutput& out, OutputFormat format) {
    return std::visit(
        [format](const auto& r) { return format == OutputFormat::json ? render_json(r) : render_text(r); }, out);
}

}  // namespace taylor
