#include "taylor/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "taylor/error.hpp"

#ifndef TAYLOR_GOLDEN_DIR
#define TAYLOR_GOLDEN_DIR "data/golden"
#endif

namespace taylor {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json vec(const Eigen::VectorXd& v) {
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
    return a;
}

ordered_json mat(const Eigen::MatrixXd& m) {
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i).transpose()));
    return a;
}

std::string fixed(double v, int digits = 6) {
    if (!std::isfinite(v)) return "NA";
    std::string s = fmt::format("{:.{}f}", v, digits);
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
    return s;
}

std::string prob(double p) { return fixed(p, 4); }

std::string coefficient_block(const std::vector<std::string>& labels, const Eigen::VectorXd& b,
                              const Eigen::VectorXd& se, const Eigen::VectorXd& t, const Eigen::VectorXd& p) {
    std::size_t w = 8;
    for (const auto& l : labels) w = std::max(w, l.size());
    std::string out = fmt::format("{:<{}}  {:>14}  {:>14}  {:>14}  {:>8}\n", "Variable", w, "Coefficient",
                                  "Std. Error", "t-Statistic", "Prob.");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto j = static_cast<Eigen::Index>(i);
        out += fmt::format("{:<{}}  {:>14}  {:>14}  {:>14}  {:>8}\n", labels[i], w, fixed(b[j]), fixed(se[j]),
                           fixed(t[j]), prob(p[j]));
    }
    return out;
}

std::string pair_row(std::string_view l1, const std::string& v1, std::string_view l2 = {}, const std::string& v2 = {}) {
    if (l2.empty()) return fmt::format("{:<22}{:>14}\n", l1, v1);
    return fmt::format("{:<22}{:>14}    {:<22}{:>14}\n", l1, v1, l2, v2);
}

ordered_json sample_json(const QuarterRange& s, std::size_t n) {
    return {{"first", s.first.str()}, {"last", s.last.str()}, {"n_obs", n}};
}

ordered_json fit_json(const FitResult& f) {
    ordered_json j;
    j["type"] = "least_squares";
    j["dependent"] = f.dependent;
    j["sample"] = sample_json(f.sample, f.n_obs);
    j["covariance"] = f.covariance_kind == CovarianceKind::hac ? "hac" : "classical";
    if (f.covariance_kind == CovarianceKind::hac) {
        j["hac_bandwidth"] = f.hac_bandwidth;
        j["hac_small_sample"] = f.hac_small_sample;
    }
    j["labels"] = f.labels;
    j["coefficients"] = vec(f.coefficients);
    j["std_errors"] = vec(f.std_errors);
    j["t_stats"] = vec(f.t_stats);
    j["p_values"] = vec(f.p_values);
    j["covariance_matrix"] = mat(f.covariance);
    j["summary"] = {{"r2", num(f.r2)},
                    {"adj_r2", num(f.adj_r2)},
                    {"se_regression", num(f.se_regression)},
                    {"ssr", num(f.ssr)},
                    {"log_likelihood", num(f.log_likelihood)},
                    {"f_statistic", num(f.f_statistic)},
                    {"f_prob", num(f.f_prob)},
                    {"durbin_watson", num(f.durbin_watson)},
                    {"aic", num(f.aic)},
                    {"schwarz", num(f.schwarz)},
                    {"hannan_quinn", num(f.hannan_quinn)},
                    {"mean_dep", num(f.mean_dep)},
                    {"sd_dep", num(f.sd_dep)}};
    j["n_params"] = f.n_params;
    return j;
}

ordered_json report_json(const TestReport& r) {
    ordered_json j;
    j["type"] = "test";
    j["name"] = r.name;
    j["null_hypothesis"] = r.null_hypothesis;
    if (r.n_obs > 0) j["sample"] = sample_json(r.sample, r.n_obs);
    ordered_json stats = ordered_json::array();
    for (const auto& s : r.statistics)
        stats.push_back({{"key", s.key}, {"label", s.label}, {"value", num(s.value)}, {"df", s.df}, {"p", num(s.p.value())}});
    j["statistics"] = stats;
    ordered_json details = ordered_json::array();
    for (const auto& d : r.details) {
        ordered_json row{{"label", d.label}, {"value", num(d.value)}};
        if (d.std_error) row["std_error"] = num(*d.std_error);
        details.push_back(row);
    }
    j["details"] = details;
    j["notes"] = r.notes;
    return j;
}

ordered_json gmm_json(const GmmResult& g) {
    ordered_json j;
    j["type"] = "gmm";
    j["dependent"] = g.dependent;
    j["sample"] = sample_json(g.sample, g.n_obs);
    j["weighting"] = g.weighting == GmmWeighting::hac ? "hac" : "classical";
    j["bandwidth"] = g.bandwidth;
    j["weight_updates"] = g.weight_updates;
    j["instruments"] = g.instrument_labels;
    j["labels"] = g.labels;
    j["coefficients"] = vec(g.coefficients);
    j["std_errors"] = vec(g.std_errors);
    j["t_stats"] = vec(g.t_stats);
    j["p_values"] = vec(g.p_values);
    j["covariance_matrix"] = mat(g.covariance);
    j["summary"] = {{"r2", num(g.r2)},
                    {"adj_r2", num(g.adj_r2)},
                    {"se_regression", num(g.se_regression)},
                    {"ssr", num(g.ssr)},
                    {"durbin_watson", num(g.durbin_watson)},
                    {"mean_dep", num(g.mean_dep)},
                    {"sd_dep", num(g.sd_dep)},
                    {"j_statistic", num(g.j_statistic)},
                    {"j_prob", num(g.j_prob)},
                    {"j_df", g.j_df},
                    {"instrument_rank", g.instrument_rank}};
    j["n_params"] = g.n_params;
    return j;
}

void add_coefficients(FieldMap& m, const std::vector<std::string>& labels, const Eigen::VectorXd& b,
                      const Eigen::VectorXd& se, const Eigen::VectorXd& t, const Eigen::VectorXd& p) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto j = static_cast<Eigen::Index>(i);
        m["coef." + labels[i]] = b[j];
        m["se." + labels[i]] = se[j];
        m["t." + labels[i]] = t[j];
        m["p." + labels[i]] = p[j];
    }
}

ordered_json diff_json(const GoldenDiff& d) {
    ordered_json cells = ordered_json::array();
    for (const auto& c : d.cells) {
        ordered_json row{{"label", c.label}, {"observed", num(c.observed)}, {"expected", num(c.expected)}};
        row["abs_tol"] = c.abs_tol ? num(*c.abs_tol) : ordered_json(nullptr);
        row["rel_tol"] = c.rel_tol ? num(*c.rel_tol) : ordered_json(nullptr);
        row["pass"] = c.pass;
        cells.push_back(row);
    }
    return {{"table_id", d.table_id}, {"country", d.country}, {"pass", d.passed()}, {"cells", cells}};
}

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
    std::string t(text);
    for (auto& ch : t) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (t == "text") return OutputFormat::text;
    if (t == "json") return OutputFormat::json;
    fail(ErrorKind::config, fmt::format("unknown output format '{}' (expected text or json)", text));
}

std::string render_text(const FitResult& f) {
    std::string out = fmt::format("Dependent Variable: {}\nMethod: Least Squares\n", upper(f.dependent));
    out += fmt::format("Sample (adjusted): {}\nIncluded observations: {}\n", f.sample.str(), f.n_obs);
    if (f.covariance_kind == CovarianceKind::hac)
        out += fmt::format("HAC standard errors & covariance (Bartlett kernel, fixed bandwidth = {}{})\n",
                           f.hac_bandwidth, f.hac_small_sample ? ", d.f. adjusted" : "");
    out += "\n" + coefficient_block(f.labels, f.coefficients, f.std_errors, f.t_stats, f.p_values) + "\n";
    out += pair_row("R-squared", fixed(f.r2), "Mean dependent var", fixed(f.mean_dep));
    out += pair_row("Adjusted R-squared", fixed(f.adj_r2), "S.D. dependent var", fixed(f.sd_dep));
    out += pair_row("S.E. of regression", fixed(f.se_regression), "Akaike info criterion", fixed(f.aic));
    out += pair_row("Sum squared resid", fixed(f.ssr), "Schwarz criterion", fixed(f.schwarz));
    out += pair_row("Log likelihood", fixed(f.log_likelihood), "Hannan-Quinn criter.", fixed(f.hannan_quinn));
    out += pair_row("F-statistic", fixed(f.f_statistic), "Durbin-Watson stat", fixed(f.durbin_watson));
    out += pair_row("Prob(F-statistic)", fixed(f.f_prob));
    return out;
}

std::string render_text(const TestReport& r) {
    std::string out = r.name + "\n";
    if (!r.null_hypothesis.empty()) out += "Null hypothesis: " + r.null_hypothesis + "\n";
    if (r.n_obs > 0) out += fmt::format("Sample: {}\nIncluded observations: {}\n", r.sample.str(), r.n_obs);
    out += "\n";
    std::size_t w = 14;
    for (const auto& s : r.statistics) w = std::max(w, s.label.size());
    out += fmt::format("{:<{}}  {:>14}  {:>12}  {:>11}\n", "Test Statistic", w, "Value", "df", "Probability");
    for (const auto& s : r.statistics) {
        std::string df;
        for (std::size_t i = 0; i < s.df.size(); ++i) df += (i ? ", " : "") + fmt::format("{}", s.df[i]);
        if (s.df.size() > 1) df = "(" + df + ")";
        out += fmt::format("{:<{}}  {:>14}  {:>12}  {:>11}\n", s.label, w, fixed(s.value), df, prob(s.p.value()));
    }
    if (!r.details.empty()) {
        const bool with_se = std::any_of(r.details.begin(), r.details.end(), [](const DetailRow& d) { return d.std_error.has_value(); });
        std::size_t dw = 14;
        for (const auto& d : r.details) dw = std::max(dw, d.label.size());
        out += "\n";
        if (with_se)
            out += fmt::format("{:<{}}  {:>14}  {:>14}\n", "Normalized Restriction (= 0)", dw, "Value", "Std. Err.");
        for (const auto& d : r.details) {
            out += fmt::format("{:<{}}  {:>14}", d.label, dw, fixed(d.value));
            if (d.std_error) out += fmt::format("  {:>14}", fixed(*d.std_error));
            out += "\n";
        }
    }
    for (const auto& n : r.notes) out += "Note: " + n + "\n";
    return out;
}

std::string render_text(const GmmResult& g) {
    std::string out = fmt::format("Dependent Variable: {}\nMethod: Generalized Method of Moments\n", upper(g.dependent));
    out += fmt::format("Sample (adjusted): {}\nIncluded observations: {}\n", g.sample.str(), g.n_obs);
    out += fmt::format("Linear estimation with {} weight update{}\n", g.weight_updates, g.weight_updates == 1 ? "" : "s");
    out += g.weighting == GmmWeighting::hac
               ? fmt::format("Estimation weighting matrix: HAC (Bartlett kernel, fixed bandwidth = {})\n", g.bandwidth)
               : std::string("Estimation weighting matrix: classical\n");
    std::string instruments;
    for (const auto& l : g.instrument_labels) instruments += (instruments.empty() ? "" : " ") + l;
    out += "Instrument specification: " + instruments + "\n";
    out += "\n" + coefficient_block(g.labels, g.coefficients, g.std_errors, g.t_stats, g.p_values) + "\n";
    out += pair_row("R-squared", fixed(g.r2), "Mean dependent var", fixed(g.mean_dep));
    out += pair_row("Adjusted R-squared", fixed(g.adj_r2), "S.D. dependent var", fixed(g.sd_dep));
    out += pair_row("S.E. of regression", fixed(g.se_regression), "Sum squared resid", fixed(g.ssr));
    out += pair_row("Durbin-Watson stat", fixed(g.durbin_watson), "J-statistic", fixed(g.j_statistic));
    out += pair_row("Instrument rank", fmt::format("{}", g.instrument_rank), "Prob(J-statistic)", fixed(g.j_prob));
    return out;
}

std::string render_json(const FitResult& fit) { return fit_json(fit).dump(2) + "\n"; }
std::string render_json(const TestReport& report) { return report_json(report).dump(2) + "\n"; }
std::string render_json(const GmmResult& gmm) { return gmm_json(gmm).dump(2) + "\n"; }

std::string render_json(std::span<const TestReport> reports) {
    ordered_json a = ordered_json::array();
    for (const auto& r : reports) a.push_back(report_json(r));
    return a.dump(2) + "\n";
}

FieldMap flatten(const FitResult& f) {
    FieldMap m;
    add_coefficients(m, f.labels, f.coefficients, f.std_errors, f.t_stats, f.p_values);
    m["r2"] = f.r2;
    m["adj_r2"] = f.adj_r2;
    m["se_regression"] = f.se_regression;
    m["ssr"] = f.ssr;
    m["log_likelihood"] = f.log_likelihood;
    m["f_statistic"] = f.f_statistic;
    m["f_prob"] = f.f_prob;
    m["durbin_watson"] = f.durbin_watson;
    m["aic"] = f.aic;
    m["schwarz"] = f.schwarz;
    m["hannan_quinn"] = f.hannan_quinn;
    m["mean_dep"] = f.mean_dep;
    m["sd_dep"] = f.sd_dep;
    m["n_obs"] = static_cast<double>(f.n_obs);
    m["n_params"] = static_cast<double>(f.n_params);
    if (f.covariance_kind == CovarianceKind::hac) m["hac_bandwidth"] = f.hac_bandwidth;
    return m;
}

FieldMap flatten(const TestReport& r) {
    FieldMap m;
    for (const auto& s : r.statistics) {
        m["stat." + s.key] = s.value;
        m["p." + s.key] = s.p.value();
        for (std::size_t i = 0; i < s.df.size(); ++i) m[fmt::format("df{}.{}", i + 1, s.key)] = s.df[i];
    }
    for (const auto& d : r.details) {
        m["detail." + d.label] = d.value;
        if (d.std_error) m["detail_se." + d.label] = *d.std_error;
    }
    if (r.n_obs > 0) m["n_obs"] = static_cast<double>(r.n_obs);
    return m;
}

FieldMap flatten(const GmmResult& g) {
    FieldMap m;
    add_coefficients(m, g.labels, g.coefficients, g.std_errors, g.t_stats, g.p_values);
    m["r2"] = g.r2;
    m["adj_r2"] = g.adj_r2;
    m["se_regression"] = g.se_regression;
    m["ssr"] = g.ssr;
    m["durbin_watson"] = g.durbin_watson;
    m["mean_dep"] = g.mean_dep;
    m["sd_dep"] = g.sd_dep;
    m["j_statistic"] = g.j_statistic;
    m["j_prob"] = g.j_prob;
    m["j_df"] = g.j_df;
    m["instrument_rank"] = static_cast<double>(g.instrument_rank);
    m["n_obs"] = static_cast<double>(g.n_obs);
    m["n_params"] = static_cast<double>(g.n_params);
    m["bandwidth"] = g.bandwidth;
    return m;
}

GoldenTable parse_golden(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::schema, fmt::format("golden file is not valid JSON: {}", e.what()));
    }
    const auto need = [&](const json& obj, const char* key, const char* where) -> const json& {
        if (!obj.is_object() || !obj.contains(key)) fail(ErrorKind::schema, fmt::format("golden {} lacks '{}'", where, key));
        return obj[key];
    };
    GoldenTable g;
    try {
        g.table_id = need(doc, "table_id", "document").get<int>();
        g.country = need(doc, "country", "document").get<std::string>();
        if (doc.contains("title")) g.title = doc["title"].get<std::string>();
        const json& cells = need(doc, "cells", "document");
        if (!cells.is_array()) fail(ErrorKind::schema, "golden 'cells' must be an array");
        for (const auto& c : cells) {
            GoldenCell cell;
            cell.label = need(c, "label", "cell").get<std::string>();
            cell.expected = need(c, "expected", "cell").get<double>();
            if (c.contains("abs_tol") && !c["abs_tol"].is_null()) cell.abs_tol = c["abs_tol"].get<double>();
            if (c.contains("rel_tol") && !c["rel_tol"].is_null()) cell.rel_tol = c["rel_tol"].get<double>();
            const bool finite_abs = cell.abs_tol && std::isfinite(*cell.abs_tol);
            const bool finite_rel = cell.rel_tol && std::isfinite(*cell.rel_tol);
            if (!finite_abs && !finite_rel)
                fail(ErrorKind::schema, fmt::format("golden cell '{}' has no finite tolerance", cell.label));
            g.cells.push_back(std::move(cell));
        }
    } catch (const json::type_error& e) {
        fail(ErrorKind::schema, fmt::format("golden field has the wrong type: {}", e.what()));
    }
    if (g.table_id < 1 || g.table_id > 17) fail(ErrorKind::schema, fmt::format("golden table_id {} out of range", g.table_id));
    return g;
}

GoldenTable load_golden(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::config, fmt::format("cannot open golden file '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_golden(ss.str());
}

std::filesystem::path golden_path(const std::filesystem::path& dir, int table_id) {
    return dir / fmt::format("table{:02}.json", table_id);
}

std::filesystem::path default_golden_dir() {
    if (const char* env = std::getenv("TAYLOR_GOLDEN_DIR"); env && *env) return env;
    return TAYLOR_GOLDEN_DIR;
}

bool GoldenDiff::passed() const { return failures() == 0; }

std::size_t GoldenDiff::failures() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const CellOutcome& c) { return !c.pass; }));
}

bool within_tolerance(double observed, double expected, std::optional<double> abs_tol, std::optional<double> rel_tol) {
    if (!std::isfinite(observed)) return false;
    const double d = std::abs(observed - expected);
    return (abs_tol && d <= *abs_tol) || (rel_tol && d <= *rel_tol * std::abs(expected));
}

GoldenDiff compare_golden(const FieldMap& fields, const GoldenTable& golden) {
    GoldenDiff diff{golden.table_id, golden.country, {}};
    for (const auto& cell : golden.cells) {
        const auto it = fields.find(cell.label);
        if (it == fields.end())
            fail(ErrorKind::schema, fmt::format("golden table {} label '{}' does not match any result field",
                                                golden.table_id, cell.label));
        diff.cells.push_back({cell.label, it->second, cell.expected, cell.abs_tol, cell.rel_tol,
                              within_tolerance(it->second, cell.expected, cell.abs_tol, cell.rel_tol)});
    }
    return diff;
}

std::string render_text(const GoldenDiff& d) {
    std::string out;
    std::size_t w = 8;
    for (const auto& c : d.cells) w = std::max(w, c.label.size());
    for (const auto& c : d.cells) {
        std::string tol;
        if (c.abs_tol) tol += fmt::format("abs {:g}", *c.abs_tol);
        if (c.rel_tol) tol += fmt::format("{}rel {:g}", tol.empty() ? "" : " ", *c.rel_tol);
        out += fmt::format("  {} {:<{}} observed {:>14.6f} expected {:>14.6f} ({})\n", c.pass ? "ok  " : "FAIL", c.label,
                           w, c.observed, c.expected, tol);
    }
    return out;
}

std::string render_json(const GoldenDiff& diff) { return diff_json(diff).dump(2) + "\n"; }

std::string actual_fitted_csv(const FitResult& f) {
    std::string out = "date,actual,fitted,residual\n";
    for (Eigen::Index i = 0; i < f.fitted.size(); ++i) {
        const Quarter q = f.sample.first.advanced(i);
        out += fmt::format("{}-Q{},{},{},{}\n", q.year(), q.q(), f.design.y[i], f.fitted[i], f.residual_values[i]);
    }
    return out;
}

}  // namespace taylor
