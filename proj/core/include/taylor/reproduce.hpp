#pragma once

#include <string>
#include <variant>
#include <vector>

#include "taylor/diagnostics.hpp"
#include "taylor/gmm.hpp"
#include "taylor/ingest.hpp"
#include "taylor/ols.hpp"
#include "taylor/report.hpp"
#include "taylor/transform.hpp"

namespace taylor {

// Reference models estimated on the embedded quarterly data. US tables are 1..9, UK tables 10..17.

/// IT on INFLATION_GAP, OUTPUT_GAP and C (C first for the UK, last for the US).
RegressionSpec baseline_spec(Country c);
/// IT on C, INFLATION_GAP, OUTPUT_GAP, S(-1).
RegressionSpec lagged_stock_spec(Country c);
/// IT on INFLATION_GAP, OUTPUT_GAP, S and C over 1991Q1..2020Q1; classical or Newey-West with bandwidth 5.
RegressionSpec augmented_spec(Country c, bool hac);
/// The augmented model instrumented by two lags of each gap plus a constant.
GmmSpec gmm_spec(Country c);

/// Embedded data with the standard transforms applied.
Dataset reproduction_dataset(Country c, const TransformConfig& cfg = {});

[[nodiscard]] std::vector<int> tables_for(Country c);
[[nodiscard]] bool table_belongs(Country c, int table_id);
[[nodiscard]] std::string table_title(int table_id);

using TableOutput = std::variant<FitResult, TestReport, GmmResult>;

struct TableRun {
    int table_id = 0;
    Country country = Country::us;
    std::string title;
    TableOutput output;
};

/// Runs the estimation or test behind one table. Throws a config error when the id does not belong to `c`.
TableRun run_table(const Dataset& prepared, Country c, int table_id);

FieldMap flatten(const TableOutput& out);
std::string render(const TableOutput& out, OutputFormat format);

}  // namespace taylor
