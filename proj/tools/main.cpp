#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "taylor/diagnostics.hpp"
#include "taylor/error.hpp"
#include "taylor/gmm.hpp"
#include "taylor/ingest.hpp"
#include "taylor/ols.hpp"
#include "taylor/report.hpp"
#include "taylor/reproduce.hpp"
#include "taylor/transform.hpp"

namespace {

using namespace taylor;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string country = "us";
    std::string source = "embedded";
    std::string csv_path;
    std::map<std::string, std::string> series_ids;
    std::string cache_dir = ".taylor-cache";
    RemoteConfig remote;
    TransformConfig transform;
    std::string detrend = "hp";
    std::string format = "text";
    std::string out_path;
};

struct ModelFlags {
    std::string dependent = "interest_rate";
    std::vector<std::string> regressors;
    bool include_constant = true;
    std::string sample;
    std::string cov = "classical";
    std::optional<int> bandwidth;
    bool no_small_sample = false;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::config, fmt::format("cannot open '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Config file keys mirror the long flag names; flags given on the command line win.
void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        fail(ErrorKind::config, fmt::format("config '{}' is not valid JSON: {}", path, e.what()));
    }
    const auto given = [&](const char* flag) { return app.count(flag) > 0; };
    try {
        if (j.contains("country") && !given("--country")) cfg.country = j["country"].get<std::string>();
        if (j.contains("format") && !given("--format")) cfg.format = j["format"].get<std::string>();
        if (j.contains("out") && !given("--out")) cfg.out_path = j["out"].get<std::string>();
        if (j.contains("source")) {
            const json& s = j["source"];
            if (s.contains("kind") && !given("--source")) cfg.source = s["kind"].get<std::string>();
            if (s.contains("csv_path") && !given("--csv")) cfg.csv_path = s["csv_path"].get<std::string>();
            if (s.contains("series_ids")) cfg.series_ids = s["series_ids"].get<std::map<std::string, std::string>>();
            if (s.contains("cache_dir") && !given("--cache-dir")) cfg.cache_dir = s["cache_dir"].get<std::string>();
        }
        if (j.contains("transform")) {
            const json& t = j["transform"];
            if (t.contains("inflation_target") && !given("--target"))
                cfg.transform.inflation_target = t["inflation_target"].get<double>();
            if (t.contains("yoy_lag")) cfg.transform.yoy_lag = t["yoy_lag"].get<int>();
            if (t.contains("detrend") && !given("--detrend")) cfg.detrend = t["detrend"].get<std::string>();
            if (t.contains("hp_lambda") && !given("--lambda")) cfg.transform.hp_lambda = t["hp_lambda"].get<double>();
        }
        if (j.contains("remote")) {
            const json& r = j["remote"];
            if (r.contains("base_url")) cfg.remote.base_url = r["base_url"].get<std::string>();
            if (r.contains("id_param")) cfg.remote.id_param = r["id_param"].get<std::string>();
            if (r.contains("api_key_param")) cfg.remote.api_key_param = r["api_key_param"].get<std::string>();
            if (r.contains("api_key_env")) cfg.remote.api_key_env = r["api_key_env"].get<std::string>();
            if (r.contains("extra_params"))
                cfg.remote.extra_params = r["extra_params"].get<std::map<std::string, std::string>>();
            if (r.contains("allow_network")) cfg.remote.allow_network = r["allow_network"].get<bool>();
            if (r.contains("timeout_seconds")) cfg.remote.timeout_seconds = r["timeout_seconds"].get<int>();
        }
    } catch (const json::type_error& e) {
        fail(ErrorKind::config, fmt::format("config '{}': {}", path, e.what()));
    }
}

void finish_config(RunConfig& cfg) {
    if (cfg.detrend == "hp" || cfg.detrend == "hp_filter")
        cfg.transform.detrend = Detrend::hp_filter;
    else if (cfg.detrend == "linear" || cfg.detrend == "linear_trend")
        cfg.transform.detrend = Detrend::linear_trend;
    else
        fail(ErrorKind::config, fmt::format("unknown detrend '{}' (expected hp or linear)", cfg.detrend));
    cfg.transform.validate();
    parse_output_format(cfg.format);
    if (cfg.source != "csv") parse_country(cfg.country);
}

Dataset load_prepared(const RunConfig& cfg) {
    SourceDescriptor desc;
    desc.country = cfg.country;
    desc.cache_dir = cfg.cache_dir;
    desc.series_ids = cfg.series_ids;
    if (cfg.source == "embedded") {
        desc.kind = SourceKind::embedded;
    } else if (cfg.source == "csv") {
        if (cfg.csv_path.empty()) fail(ErrorKind::config, "--source csv needs --csv PATH");
        desc.kind = SourceKind::csv_path;
        desc.csv_path = cfg.csv_path;
    } else if (cfg.source == "remote") {
        desc.kind = SourceKind::remote;
    } else {
        fail(ErrorKind::config, fmt::format("unknown source '{}' (expected embedded, csv or remote)", cfg.source));
    }
    return build_taylor_dataset(load_dataset(desc, cfg.remote), cfg.transform);
}

std::vector<Term> parse_terms(const std::vector<std::string>& items) {
    std::vector<Term> out;
    for (const auto& s : items) out.push_back(Term::parse(s));
    return out;
}

RegressionSpec make_spec(const ModelFlags& m) {
    if (m.regressors.empty() && !m.include_constant) fail(ErrorKind::config, "the model has no regressors");
    RegressionSpec spec;
    spec.dependent = Term::parse(m.dependent);
    spec.regressors = parse_terms(m.regressors);
    spec.include_constant = m.include_constant;
    if (!m.sample.empty()) spec.sample = QuarterRange::parse(m.sample);
    if (m.cov == "hac") {
        spec.covariance.kind = CovarianceKind::hac;
    } else if (m.cov != "classical") {
        fail(ErrorKind::config, fmt::format("unknown covariance '{}' (expected classical or hac)", m.cov));
    }
    spec.covariance.hac.bandwidth = m.bandwidth;
    spec.covariance.hac.small_sample_correction = !m.no_small_sample;
    return spec;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::config, fmt::format("cannot write '{}'", cfg.out_path));
    out << text;
}

std::vector<int> parse_table_list(const std::string& text, Country c) {
    if (text.empty() || text == "all") return tables_for(c);
    std::vector<int> ids;
    std::stringstream ss(text);
    std::string item;
    const auto to_id = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        fail(ErrorKind::config, fmt::format("invalid table id '{}'", s));
    };
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto dash = item.find('-', 1);
        const int lo = to_id(item.substr(0, dash));
        const int hi = dash == std::string::npos ? lo : to_id(item.substr(dash + 1));
        for (int i = lo; i <= hi; ++i) {
            if (!table_belongs(c, i))
                fail(ErrorKind::config,
                     fmt::format("table {} is not a {} table (US: 1-9, UK: 10-17)", i, to_string(c)));
            ids.push_back(i);
        }
    }
    if (ids.empty()) fail(ErrorKind::config, "no tables selected");
    return ids;
}

int run_reproduce(const RunConfig& cfg, const std::string& tables, const std::string& golden_dir, bool quiet) {
    const Country c = parse_country(cfg.country);
    const auto ids = parse_table_list(tables, c);
    // Always the embedded data: reproduction never goes to the network.
    const Dataset d = reproduction_dataset(c, cfg.transform);
    const std::filesystem::path dir = golden_dir.empty() ? default_golden_dir() : std::filesystem::path(golden_dir);
    const OutputFormat format = parse_output_format(cfg.format);

    std::string out;
    json doc = json::array();
    bool all_pass = true;
    for (int id : ids) {
        const TableRun run = run_table(d, c, id);
        const GoldenDiff diff = compare_golden(flatten(run.output), load_golden(golden_path(dir, id)));
        all_pass = all_pass && diff.passed();
        if (format == OutputFormat::json) {
            json entry = json::parse(render(run.output, OutputFormat::json));
            doc.push_back({{"table_id", id}, {"title", run.title}, {"result", entry},
                           {"golden", json::parse(render_json(diff))}});
            continue;
        }
        if (!quiet) out += fmt::format("Table {}: {}\n\n{}\n", id, run.title, render(run.output, OutputFormat::text));
        out += fmt::format("{} table {:02} ({}): {}/{} cells within tolerance\n", diff.passed() ? "PASS" : "FAIL", id,
                           run.title, diff.cells.size() - diff.failures(), diff.cells.size());
        if (!diff.passed() || !quiet) out += render_text(diff);
        if (!quiet) out += "\n";
    }
    emit(cfg, format == OutputFormat::json ? doc.dump(2) + "\n" : out);
    return all_pass ? kExitOk : kExitNumeric;
}

void add_model_flags(CLI::App* cmd, ModelFlags& m, bool require_regressors) {
    auto* reg = cmd->add_option("--reg", m.regressors, "Regressors, comma separated; lags as name(-k)")->delimiter(',');
    if (require_regressors) reg->required();
    cmd->add_option("--dep", m.dependent, "Dependent variable")->capture_default_str();
    cmd->add_flag("--const,!--no-const", m.include_constant, "Include a constant (default on)");
    cmd->add_option("--sample", m.sample, "Estimation sample, e.g. 1991Q1:2020Q1");
    cmd->add_option("--cov", m.cov, "Coefficient covariance: classical or hac")->capture_default_str();
    cmd->add_option("--bandwidth", m.bandwidth, "Bartlett bandwidth (default floor(4(T/100)^(2/9))+1)");
    cmd->add_flag("--no-dof-correction", m.no_small_sample, "Drop the T/(T-k) factor from HAC covariances");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Taylor-rule estimation and diagnostics on quarterly macro data"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "taylor 0.1.0");

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--country", cfg.country, "us or uk")->capture_default_str();
    app.add_option("--source", cfg.source, "embedded, csv or remote")->capture_default_str();
    app.add_option("--csv", cfg.csv_path, "Quarterly CSV file (with --source csv)");
    app.add_option("--cache-dir", cfg.cache_dir, "Cache directory for remote series")->capture_default_str();
    app.add_option("--detrend", cfg.detrend, "Output-gap trend: hp or linear")->capture_default_str();
    app.add_option("--lambda", cfg.transform.hp_lambda, "HP smoothing parameter")->capture_default_str();
    app.add_option("--target", cfg.transform.inflation_target, "Inflation target, percent")->capture_default_str();
    app.add_option("--format", cfg.format, "text or json")->capture_default_str();
    app.add_option("--out", cfg.out_path, "Write the report to a file instead of stdout");

    auto* reproduce = app.add_subcommand("reproduce", "Re-estimate the reference tables and diff against golden values");
    std::string tables;
    std::string golden_dir;
    bool quiet = false;
    reproduce->add_option("--tables", tables, "Table ids, e.g. 1-9 or 10,12 (default: all for the country)");
    reproduce->add_option("--golden-dir", golden_dir, "Directory holding tableNN.json files");
    reproduce->add_flag("--quiet,-q", quiet, "Only print PASS/FAIL lines");

    ModelFlags fit_flags;
    auto* fit = app.add_subcommand("fit", "Least-squares estimation");
    add_model_flags(fit, fit_flags, true);

    ModelFlags test_flags;
    std::string restrict_text;
    std::string break_text;
    int lags = 1;
    bool no_cross = false;
    auto* test = app.add_subcommand("test", "Diagnostic test on a least-squares fit");
    test->require_subcommand(1);
    const char* kinds[] = {"wald", "chow", "white", "bg", "jb"};
    for (const char* k : kinds) {
        auto* sub = test->add_subcommand(k);
        add_model_flags(sub, test_flags, true);
        if (std::string(k) == "wald") sub->add_option("--restrict", restrict_text, "e.g. \"b1=0.5,b2=0.5\"")->required();
        if (std::string(k) == "chow") sub->add_option("--break", break_text, "First quarter of the second regime")->required();
        if (std::string(k) == "bg") sub->add_option("--lags", lags, "Lagged residuals")->capture_default_str();
        if (std::string(k) == "white") sub->add_flag("--no-cross", no_cross, "Omit cross products");
    }

    ModelFlags gmm_flags;
    std::vector<std::string> instruments;
    bool no_const_inst = false;
    std::string weighting = "hac";
    int updates = 1;
    auto* gmm = app.add_subcommand("gmm", "Linear GMM / instrumental variables");
    add_model_flags(gmm, gmm_flags, true);
    gmm->add_option("--inst", instruments, "Instruments, comma separated; lags as name(-k)")->delimiter(',')->required();
    gmm->add_flag("--no-const-inst", no_const_inst, "Do not add a constant to the instrument list");
    gmm->add_option("--weighting", weighting, "hac or classical")->capture_default_str();
    gmm->add_option("--updates", updates, "Weight updates after 2SLS")->capture_default_str();

    ModelFlags export_flags;
    std::string what = "data";
    auto* exp = app.add_subcommand("export", "Write the transformed dataset or actual/fitted/residual series as CSV");
    exp->add_option("--what", what, "data or fitted")->capture_default_str();
    add_model_flags(exp, export_flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!config_path.empty()) apply_config_file(config_path, cfg, app);
        finish_config(cfg);
        const OutputFormat format = parse_output_format(cfg.format);

        if (*reproduce) return run_reproduce(cfg, tables, golden_dir, quiet);

        if (*fit) {
            const FitResult r = fit_ols(load_prepared(cfg), make_spec(fit_flags));
            emit(cfg, format == OutputFormat::json ? render_json(r) : render_text(r));
            return kExitOk;
        }

        if (*test) {
            const Dataset d = load_prepared(cfg);
            const RegressionSpec spec = make_spec(test_flags);
            TestReport rep;
            if (test->got_subcommand("chow")) {
                rep = chow_breakpoint_test(d, spec, Quarter::parse(break_text));
            } else {
                const FitResult f = fit_ols(d, spec);
                if (test->got_subcommand("wald"))
                    rep = wald_test(f, parse_restrictions(restrict_text, f.labels));
                else if (test->got_subcommand("white"))
                    rep = white_test(f, !no_cross);
                else if (test->got_subcommand("bg"))
                    rep = breusch_godfrey_test(f, lags);
                else
                    rep = jarque_bera_test(f.residuals());
            }
            emit(cfg, format == OutputFormat::json ? render_json(rep) : render_text(rep));
            return kExitOk;
        }

        if (*gmm) {
            GmmSpec g;
            g.base = make_spec(gmm_flags);
            g.instruments = parse_terms(instruments);
            g.add_constant_instrument = !no_const_inst;
            if (weighting == "hac")
                g.weighting = GmmWeighting::hac;
            else if (weighting == "classical")
                g.weighting = GmmWeighting::classical;
            else
                fail(ErrorKind::config, fmt::format("unknown weighting '{}'", weighting));
            g.hac.bandwidth = gmm_flags.bandwidth;
            g.weight_updates = updates;
            const GmmResult r = fit_linear_gmm(load_prepared(cfg), g);
            emit(cfg, format == OutputFormat::json ? render_json(r) : render_text(r));
            return kExitOk;
        }

        if (*exp) {
            const Dataset d = load_prepared(cfg);
            if (what == "data") {
                emit(cfg, write_quarterly_csv(d));
            } else if (what == "fitted") {
                if (export_flags.regressors.empty()) fail(ErrorKind::config, "--what fitted needs --reg");
                emit(cfg, actual_fitted_csv(fit_ols(d, make_spec(export_flags))));
            } else {
                fail(ErrorKind::config, fmt::format("unknown export '{}' (expected data or fitted)", what));
            }
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::config:
            case ErrorKind::parse:
            case ErrorKind::restriction:
            case ErrorKind::schema:
                return kExitUsage;
            default:
                return kExitNumeric;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
