#include "taylor/diagnostics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "linalg.hpp"
#include "taylor/error.hpp"

namespace taylor {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

TestStatistic make_stat(StatForm form, std::string key, std::string label, double value, std::vector<double> df) {
    double p = 1.0;
    if (std::isinf(value))
        p = 0.0;
    else if (form == StatForm::F)
        p = f_sf(std::max(0.0, value), df.at(0), df.at(1)).value();
    else
        p = chi2_sf(std::max(0.0, value), df.at(0)).value();
    return {form, std::move(label), value, std::move(df), TailProbability(p), std::move(key)};
}

// ---- restriction parsing ---------------------------------------------------

class RestrictionParser {
public:
    RestrictionParser(std::string_view text, std::span<const std::string> labels) : text_(text), labels_(labels) {}

    // Parses one side into coefficients on b plus a constant.
    void side(Eigen::VectorXd& coef, double& constant, double sign) {
        skip();
        bool first = true;
        while (pos_ < text_.size()) {
            double term_sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                term_sign = peek() == '-' ? -1.0 : 1.0;
                ++pos_;
                skip();
            } else if (!first) {
                break;
            }
            first = false;
            double factor = 1.0;
            if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
                factor = number();
                skip();
                if (peek() == '*') {
                    ++pos_;
                    skip();
                } else {
                    constant += sign * term_sign * factor;
                    continue;
                }
            }
            const auto idx = coefficient();
            coef[static_cast<Eigen::Index>(idx)] += sign * term_sign * factor;
            skip();
        }
    }

    [[nodiscard]] bool done() {
        skip();
        return pos_ >= text_.size();
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void expect(char c) {
        skip();
        if (peek() != c) error(fmt::format("expected '{}'", c));
        ++pos_;
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void error(const std::string& why) const {
        fail(ErrorKind::restriction, fmt::format("malformed restriction '{}': {} at position {}", text_, why, pos_));
    }

    double number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == 'e' ||
                text_[pos_] == 'E' ||
                ((text_[pos_] == '-' || text_[pos_] == '+') && pos_ > start &&
                 (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
            ++pos_;
        double v = 0.0;
        const auto s = text_.substr(start, pos_ - start);
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) error("bad number");
        return v;
    }

    std::size_t coefficient() {
        const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(peek())));
        if (c != 'b' && c != 'c') error("expected coefficient reference");
        ++pos_;
        std::string_view ref;
        if (peek() == '(') {
            std::size_t close = pos_ + 1;
            for (int depth = 1; close < text_.size(); ++close) {
                if (text_[close] == '(') ++depth;
                if (text_[close] == ')' && --depth == 0) break;
            }
            if (close >= text_.size()) error("unclosed '('");
            ref = trim(text_.substr(pos_ + 1, close - pos_ - 1));
            pos_ = close + 1;
        } else {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            ref = text_.substr(start, pos_ - start);
            if (ref.empty()) error("expected coefficient index");
        }
        return resolve(ref);
    }

    std::size_t resolve(std::string_view ref) const {
        int idx = 0;
        auto [p, ec] = std::from_chars(ref.data(), ref.data() + ref.size(), idx);
        if (ec == std::errc{} && p == ref.data() + ref.size()) {
            if (idx < 1 || static_cast<std::size_t>(idx) > labels_.size())
                error(fmt::format("coefficient index {} outside 1..{}", idx, labels_.size()));
            return static_cast<std::size_t>(idx - 1);
        }
        const std::string want = lower(ref);
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (lower(labels_[i]) == want) return i;
        std::optional<std::size_t> hit;
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (lower(labels_[i]).rfind(want, 0) == 0) {
                if (hit) error(fmt::format("'{}' matches more than one coefficient", ref));
                hit = i;
            }
        if (!hit) error(fmt::format("unknown coefficient '{}'", ref));
        return *hit;
    }

    std::string_view text_;
    std::span<const std::string> labels_;
    std::size_t pos_ = 0;
};

std::vector<std::string_view> split_top_level(std::string_view text) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (text[i] == ',' && depth == 0) {
            out.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    out.push_back(text.substr(start));
    return out;
}

std::string format_number(double v) { return fmt::format("{:g}", v); }

// "-0.5 + C(1)" style label for row i of R b - r.
std::string restriction_label(const Eigen::RowVectorXd& row, double rhs) {
    std::string out;
    if (rhs != 0.0) out = format_number(-rhs);
    for (Eigen::Index j = 0; j < row.size(); ++j) {
        const double a = row[j];
        if (a == 0.0) continue;
        const std::string coef = fmt::format("C({})", j + 1);
        const std::string mag = std::fabs(a) == 1.0 ? coef : fmt::format("{}*{}", format_number(std::fabs(a)), coef);
        if (out.empty())
            out = a < 0 ? "-" + mag : mag;
        else
            out += (a < 0 ? " - " : " + ") + mag;
    }
    return out.empty() ? "0" : out;
}

struct AuxFit {
    double r2, ssr, ess;
    std::size_t n_params;
    std::vector<std::string> dropped;
};

// OLS of y on X, dropping linearly dependent columns. Returns centred R^2.
AuxFit aux_regression(const Eigen::VectorXd& y, Eigen::MatrixXd X, std::vector<std::string> labels) {
    std::vector<std::string> dropped;
    auto qr = detail::pivoted_qr(X);
    if (qr.rank() < X.cols()) {
        auto dep = detail::dependent_columns(qr);
        std::sort(dep.begin(), dep.end());
        Eigen::MatrixXd keep(X.rows(), X.cols() - static_cast<Eigen::Index>(dep.size()));
        Eigen::Index c = 0;
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            if (std::binary_search(dep.begin(), dep.end(), j))
                dropped.push_back(labels[static_cast<std::size_t>(j)]);
            else
                keep.col(c++) = X.col(j);
        }
        X = std::move(keep);
        qr = detail::pivoted_qr(X);
    }
    const Eigen::VectorXd b = qr.solve(y);
    const Eigen::VectorXd e = y - X * b;
    const double ssr = e.squaredNorm();
    const double tss = (y.array() - y.mean()).square().sum();
    const bool degenerate = tss <= 1e-24 * std::max(1.0, y.squaredNorm());
    const double r2 = degenerate ? 0.0 : std::clamp(1.0 - ssr / tss, 0.0, 1.0);
    return {r2, ssr, degenerate ? 0.0 : std::max(0.0, tss - ssr), static_cast<std::size_t>(X.cols()), std::move(dropped)};
}

}  // namespace

const TestStatistic& TestReport::stat(std::string_view key) const {
    for (const auto& s : statistics)
        if (s.key == key) return s;
    fail(ErrorKind::schema, fmt::format("test '{}' has no statistic '{}'", name, key));
}

const DetailRow& TestReport::detail(std::string_view label) const {
    for (const auto& d : details)
        if (d.label == label) return d;
    fail(ErrorKind::schema, fmt::format("test '{}' has no detail '{}'", name, label));
}

Restrictions parse_restrictions(std::string_view text, std::span<const std::string> labels) {
    const auto parts = split_top_level(text);
    const auto k = static_cast<Eigen::Index>(labels.size());
    Restrictions out{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(parts.size()), k),
                     Eigen::VectorXd::Zero(static_cast<Eigen::Index>(parts.size()))};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto part = trim(parts[i]);
        if (part.empty()) fail(ErrorKind::restriction, fmt::format("malformed restriction '{}': empty clause", text));
        const auto eq = part.find('=');
        if (eq == std::string_view::npos || part.find('=', eq + 1) != std::string_view::npos)
            fail(ErrorKind::restriction, fmt::format("malformed restriction '{}': each clause needs one '='", part));
        if (trim(part.substr(0, eq)).empty() || trim(part.substr(eq + 1)).empty())
            fail(ErrorKind::restriction, fmt::format("malformed restriction '{}': empty side of '='", part));
        Eigen::VectorXd coef = Eigen::VectorXd::Zero(k);
        double constant = 0.0;  // coef.b + constant = 0
        RestrictionParser lhs(part.substr(0, eq), labels);
        lhs.side(coef, constant, 1.0);
        if (!lhs.done()) fail(ErrorKind::restriction, fmt::format("malformed restriction '{}'", part));
        RestrictionParser rhs(part.substr(eq + 1), labels);
        rhs.side(coef, constant, -1.0);
        if (!rhs.done()) fail(ErrorKind::restriction, fmt::format("malformed restriction '{}'", part));
        if (coef.isZero(0.0)) fail(ErrorKind::restriction, fmt::format("restriction '{}' involves no coefficient", part));
        out.R.row(static_cast<Eigen::Index>(i)) = coef.transpose();
        out.r[static_cast<Eigen::Index>(i)] = -constant;
    }
    return out;
}

TestReport wald_test(const FitResult& fit, const Restrictions& rs) {
    const auto k = static_cast<Eigen::Index>(fit.n_params);
    const Eigen::Index q = rs.R.rows();
    if (rs.R.cols() != k) fail(ErrorKind::restriction, fmt::format("restriction matrix has {} columns for {} coefficients", rs.R.cols(), k));
    if (rs.r.size() != q) fail(ErrorKind::restriction, "restriction vector length differs from row count");
    if (q == 0 || q > k) fail(ErrorKind::restriction, fmt::format("{} restrictions for {} coefficients", q, k));
    if (detail::pivoted_qr(rs.R.transpose()).rank() < q) fail(ErrorKind::restriction, "restrictions are linearly dependent");

    const Eigen::VectorXd dev = rs.R * fit.coefficients - rs.r;
    const Eigen::MatrixXd middle = detail::symmetrized(rs.R * fit.covariance * rs.R.transpose());
    const double W = dev.dot(middle.ldlt().solve(dev));
    const double dof = static_cast<double>(fit.n_obs - fit.n_params);

    TestReport rep;
    rep.name = "Wald Test";
    rep.sample = fit.sample;
    rep.n_obs = fit.n_obs;
    std::string null;
    for (Eigen::Index i = 0; i < q; ++i) {
        std::string lhs;
        for (Eigen::Index j = 0; j < k; ++j) {
            const double a = rs.R(i, j);
            if (a == 0.0) continue;
            const std::string c = fmt::format("C({})", j + 1);
            const std::string t = a == 1.0 ? c : a == -1.0 ? "-" + c : fmt::format("{}*{}", format_number(a), c);
            lhs += lhs.empty() ? t : (t.front() == '-' ? t : "+" + t);
        }
        null += (null.empty() ? "" : ", ") + lhs + "=" + format_number(rs.r[i]);
        rep.details.push_back({restriction_label(rs.R.row(i), rs.r[i]), dev[i], std::sqrt(std::max(0.0, middle(i, i)))});
    }
    rep.null_hypothesis = null;
    rep.statistics.push_back(make_stat(StatForm::F, "f", "F-statistic", W / static_cast<double>(q), {static_cast<double>(q), dof}));
    rep.statistics.push_back(make_stat(StatForm::chi2, "chi2", "Chi-square", W, {static_cast<double>(q)}));
    return rep;
}

TestReport chow_breakpoint_test(const Design& design, const Quarter& break_at) {
    const Eigen::Index T = design.n_obs();
    const Eigen::Index k = design.n_params();
    const long split = break_at.minus(design.sample.first);
    if (split <= 0 || split >= T)
        fail(ErrorKind::sample, fmt::format("breakpoint {} outside the sample interior {}", break_at.str(), design.sample.str()));
    const auto n1 = static_cast<Eigen::Index>(split);
    const Eigen::Index n2 = T - n1;
    if (n1 <= k || n2 <= k)
        fail(ErrorKind::sample, fmt::format("breakpoint {} leaves {} and {} observations for {} parameters", break_at.str(), n1, n2, k));

    const double ssr_p = fit_ols(design).ssr;
    const double ssr_1 = fit_ols(design.rows(0, n1)).ssr;
    const double ssr_2 = fit_ols(design.rows(n1, n2)).ssr;
    const double ssr_u = ssr_1 + ssr_2;
    const double kd = static_cast<double>(k);
    const double dof = static_cast<double>(T - 2 * k);
    const double F = ((ssr_p - ssr_u) / kd) / (ssr_u / dof);
    const double LR = static_cast<double>(T) * std::log(ssr_p / ssr_u);

    TestReport rep;
    rep.name = fmt::format("Chow Breakpoint Test: {}", break_at.str());
    rep.null_hypothesis = "No breaks at specified breakpoints";
    rep.sample = design.sample;
    rep.n_obs = static_cast<std::size_t>(T);
    rep.statistics.push_back(make_stat(StatForm::F, "f", "F-statistic", F, {kd, dof}));
    rep.statistics.push_back(make_stat(StatForm::LR, "lr", "Log likelihood ratio", LR, {kd}));
    rep.statistics.push_back(make_stat(StatForm::chi2, "wald", "Wald Statistic", kd * F, {kd}));
    rep.details.push_back({"SSR pooled", ssr_p, std::nullopt});
    rep.details.push_back({"SSR first regime", ssr_1, std::nullopt});
    rep.details.push_back({"SSR second regime", ssr_2, std::nullopt});
    return rep;
}

TestReport chow_breakpoint_test(const Dataset& d, const RegressionSpec& spec, const Quarter& break_at) {
    return chow_breakpoint_test(build_design(d, spec), break_at);
}

TestReport white_test(const FitResult& fit, bool cross_terms) {
    const Design& ds = fit.design;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < ds.X.cols(); ++j)
        if (!ds.constant_col || *ds.constant_col != j) cols.push_back(j);
    if (cols.empty()) fail(ErrorKind::domain, "White test needs at least one non-constant regressor");

    std::vector<Eigen::VectorXd> columns{Eigen::VectorXd::Ones(ds.X.rows())};
    std::vector<std::string> labels{"C"};
    for (std::size_t a = 0; a < cols.size(); ++a) {
        const auto xa = ds.X.col(cols[a]);
        const std::string& la = ds.labels[static_cast<std::size_t>(cols[a])];
        columns.emplace_back(xa);
        labels.push_back(la);
        for (std::size_t b = a; b < cols.size(); ++b) {
            if (b != a && !cross_terms) continue;
            columns.emplace_back(xa.cwiseProduct(ds.X.col(cols[b])));
            labels.push_back(b == a ? la + "^2" : la + "*" + ds.labels[static_cast<std::size_t>(cols[b])]);
        }
    }
    Eigen::MatrixXd Z(ds.X.rows(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) Z.col(static_cast<Eigen::Index>(j)) = columns[j];

    const Eigen::VectorXd e2 = fit.residual_values.array().square();
    const AuxFit aux = aux_regression(e2, Z, labels);
    const double T = static_cast<double>(fit.n_obs);
    const double p = static_cast<double>(aux.n_params);
    if (T <= p) fail(ErrorKind::sample, "too few observations for the White auxiliary regression");
    const double F = (aux.r2 / (p - 1.0)) / ((1.0 - aux.r2) / (T - p));
    // Degrees-of-freedom corrected residual variance of the original fit.
    const double sigma2 = fit.ssr / (T - static_cast<double>(fit.n_params));

    TestReport rep;
    rep.name = "Heteroskedasticity Test: White";
    rep.null_hypothesis = "Homoskedasticity";
    rep.sample = fit.sample;
    rep.n_obs = fit.n_obs;
    rep.statistics.push_back(make_stat(StatForm::F, "f", "F-statistic", F, {p - 1.0, T - p}));
    rep.statistics.push_back(make_stat(StatForm::obs_r2, "obs_r2", "Obs*R-squared", T * aux.r2, {p - 1.0}));
    rep.statistics.push_back(
        make_stat(StatForm::chi2, "scaled_ess", "Scaled explained SS", aux.ess / (2.0 * sigma2 * sigma2), {p - 1.0}));
    rep.details.push_back({"aux R-squared", aux.r2, std::nullopt});
    for (const auto& d : aux.dropped) rep.notes.push_back(fmt::format("dropped collinear auxiliary term {}", d));
    return rep;
}

TestReport breusch_godfrey_test(const FitResult& fit, int lags) {
    if (lags < 1) fail(ErrorKind::domain, fmt::format("Breusch-Godfrey lags must be >= 1, got {}", lags));
    const Design& ds = fit.design;
    const Eigen::Index T = ds.n_obs();
    const Eigen::Index k = ds.n_params();
    if (T <= k + lags) fail(ErrorKind::sample, fmt::format("{} lags leave no degrees of freedom ({} obs, {} params)", lags, T, k));

    const Eigen::VectorXd& e = fit.residual_values;
    Eigen::MatrixXd Z(T, k + lags);
    Z.leftCols(k) = ds.X;
    std::vector<std::string> labels = ds.labels;
    for (int j = 1; j <= lags; ++j) {
        Eigen::VectorXd col = Eigen::VectorXd::Zero(T);
        col.tail(T - j) = e.head(T - j);
        Z.col(k + j - 1) = col;
        labels.push_back(fmt::format("RESID(-{})", j));
    }
    const AuxFit aux = aux_regression(e, Z, labels);
    const double dof = static_cast<double>(T - k - lags);
    const double F = ((fit.ssr - aux.ssr) / lags) / (aux.ssr / dof);

    TestReport rep;
    rep.name = "Breusch-Godfrey Serial Correlation LM Test";
    rep.null_hypothesis = fmt::format("No serial correlation at up to {} lag{}", lags, lags == 1 ? "" : "s");
    rep.sample = fit.sample;
    rep.n_obs = fit.n_obs;
    rep.statistics.push_back(make_stat(StatForm::F, "f", "F-statistic", std::max(0.0, F), {static_cast<double>(lags), dof}));
    rep.statistics.push_back(make_stat(StatForm::obs_r2, "obs_r2", "Obs*R-squared", static_cast<double>(T) * aux.r2,
                                       {static_cast<double>(lags)}));
    rep.details.push_back({"aux R-squared", aux.r2, std::nullopt});
    for (const auto& d : aux.dropped) rep.notes.push_back(fmt::format("dropped collinear auxiliary term {}", d));
    return rep;
}

Moments sample_moments(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    return {mean, std::sqrt(m2 * n / (n - 1.0)), m3 / std::pow(m2, 1.5), m4 / (m2 * m2)};
}

TestReport jarque_bera_test(std::span<const double> x) {
    if (x.size() < 4) fail(ErrorKind::sample, fmt::format("Jarque-Bera needs >= 4 observations, got {}", x.size()));
    double lo = x.front(), hi = x.front();
    for (double v : x) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) fail(ErrorKind::domain, "Jarque-Bera of a zero-variance sample");
    const Moments m = sample_moments(x);
    const double n = static_cast<double>(x.size());
    const double jb = n / 6.0 * (m.skewness * m.skewness + (m.kurtosis - 3.0) * (m.kurtosis - 3.0) / 4.0);

    TestReport rep;
    rep.name = "Jarque-Bera Normality Test";
    rep.null_hypothesis = "Residuals are normally distributed";
    rep.n_obs = x.size();
    rep.statistics.push_back(make_stat(StatForm::jb, "jb", "Jarque-Bera", jb, {2.0}));
    rep.details.push_back({"Mean", m.mean, std::nullopt});
    rep.details.push_back({"Std. Dev.", m.std_dev, std::nullopt});
    rep.details.push_back({"Skewness", m.skewness, std::nullopt});
    rep.details.push_back({"Kurtosis", m.kurtosis, std::nullopt});
    return rep;
}

TestReport jarque_bera_test(const Series& residuals) {
    TestReport rep = jarque_bera_test(residuals.values());
    rep.sample = residuals.range();
    return rep;
}

}  // namespace taylor
