#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taylor/diagnostics.hpp"
#include "taylor/gmm.hpp"
#include "taylor/ols.hpp"

namespace taylor {

enum class OutputFormat { text, json };

OutputFormat parse_output_format(std::string_view text);

// Fixed-width tables in the layout of the estimation printouts. Byte-identical across runs.
std::string render_text(const FitResult& fit);
std::string render_text(const TestReport& report);
std::string render_text(const GmmResult& gmm);

// JSON documents at full precision. Non-finite numbers become null.
std::string render_json(const FitResult& fit);
std::string render_json(const TestReport& report);
std::string render_json(const GmmResult& gmm);
/// JSON array of reports; "[]" when empty.
std::string render_json(std::span<const TestReport> reports);

/// Result fields addressed by label, e.g. "coef.INFLATION_GAP", "se.C", "r2", "stat.f", "p.f",
/// "detail.-0.5 + C(1)", "j_statistic".
using FieldMap = std::map<std::string, double>;

FieldMap flatten(const FitResult& fit);
FieldMap flatten(const TestReport& report);
FieldMap flatten(const GmmResult& gmm);

struct GoldenCell {
    std::string label;
    double expected = 0.0;
    std::optional<double> abs_tol;
    std::optional<double> rel_tol;
};

struct GoldenTable {
    int table_id = 0;
    std::string country;
    std::string title;
    std::vector<GoldenCell> cells;
};

/// Parses a golden document; throws a schema error for missing fields or a cell without tolerance.
GoldenTable parse_golden(std::string_view json_text);
GoldenTable load_golden(const std::filesystem::path& path);
/// "<dir>/tableNN.json"
std::filesystem::path golden_path(const std::filesystem::path& dir, int table_id);
/// Golden directory from the source tree, overridden by TAYLOR_GOLDEN_DIR when set.
std::filesystem::path default_golden_dir();

struct CellOutcome {
    std::string label;
    double observed = 0.0;
    double expected = 0.0;
    std::optional<double> abs_tol;
    std::optional<double> rel_tol;
    bool pass = false;
};

struct GoldenDiff {
    int table_id = 0;
    std::string country;
    std::vector<CellOutcome> cells;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::size_t failures() const;
};

/// A cell passes iff |obs - exp| <= abs_tol or |obs - exp| <= rel_tol * |exp|.
[[nodiscard]] bool within_tolerance(double observed, double expected, std::optional<double> abs_tol,
                                    std::optional<double> rel_tol);

/// Throws a schema error when a golden label is not among `fields`.
GoldenDiff compare_golden(const FieldMap& fields, const GoldenTable& golden);

std::string render_text(const GoldenDiff& diff);
std::string render_json(const GoldenDiff& diff);

/// "date,actual,fitted,residual" rows over the fit sample.
std::string actual_fitted_csv(const FitResult& fit);

}  // namespace taylor
