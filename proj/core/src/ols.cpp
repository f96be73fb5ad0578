#include "taylor/ols.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "linalg.hpp"
#include "summary.hpp"
#include "taylor/dist.hpp"
#include "taylor/error.hpp"

namespace taylor {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

}  // namespace

bool is_constant_term(const Term& t) { return t.lag == 0 && (iequals(t.name, "c") || iequals(t.name, "const")); }

std::vector<Term> RegressionSpec::ordered_terms() const {
    std::vector<Term> out;
    bool have_constant = false;
    for (const Term& t : regressors) {
        const Term norm = is_constant_term(t) ? Term{"c", 0} : Term{Dataset::canonical_name(t.name), t.lag};
        if (std::find(out.begin(), out.end(), norm) != out.end())
            fail(ErrorKind::config, fmt::format("duplicate regressor '{}'", norm.label()));
        have_constant = have_constant || is_constant_term(norm);
        out.push_back(norm);
    }
    if (include_constant && !have_constant) out.push_back({"c", 0});
    if (out.empty()) fail(ErrorKind::config, "model has no regressors and no constant");
    return out;
}

Design Design::rows(Eigen::Index first, Eigen::Index count) const {
    Design d = *this;
    d.y = y.segment(first, count);
    d.X = X.middleRows(first, count);
    d.sample = {sample.first.advanced(first), sample.first.advanced(first + count - 1)};
    return d;
}

Design build_design(const Dataset& d, const RegressionSpec& spec, std::span<const Term> extra_terms) {
    const std::vector<Term> ordered = spec.ordered_terms();
    std::vector<Term> align{Term{Dataset::canonical_name(spec.dependent.name), spec.dependent.lag}};
    for (const Term& t : ordered)
        if (!is_constant_term(t)) align.push_back(t);
    for (const Term& t : extra_terms)
        if (!is_constant_term(t)) align.push_back(t);
    const ObservationMatrix obs = align_sample(d, align, spec.sample);

    Design out;
    out.dependent = spec.dependent.label();
    out.sample = obs.sample;
    out.y = obs.data.col(0);
    out.X.resize(obs.data.rows(), static_cast<Eigen::Index>(ordered.size()));
    Eigen::Index next = 1;
    for (std::size_t j = 0; j < ordered.size(); ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        if (is_constant_term(ordered[j])) {
            out.X.col(col).setOnes();
            out.constant_col = col;
            out.labels.push_back("C");
        } else {
            out.X.col(col) = obs.data.col(next++);
            out.labels.push_back(ordered[j].label());
        }
    }
    out.terms = ordered;
    return out;
}

Design make_design(Eigen::VectorXd y, Eigen::MatrixXd X, std::optional<Eigen::Index> constant_col,
                   std::vector<std::string> labels) {
    if (y.size() != X.rows()) fail(ErrorKind::domain, "y and X row counts differ");
    Design d;
    d.dependent = "Y";
    d.sample = {Quarter(), Quarter().advanced(std::max<Eigen::Index>(y.size(), 1) - 1)};
    d.y = std::move(y);
    d.X = std::move(X);
    d.constant_col = constant_col;
    if (labels.empty())
        for (Eigen::Index j = 0; j < d.X.cols(); ++j)
            labels.push_back(constant_col && *constant_col == j ? std::string("C") : fmt::format("X{}", j + 1));
    d.labels = std::move(labels);
    for (const auto& l : d.labels) d.terms.push_back(l == "C" ? Term{"c", 0} : Term{l, 0});
    return d;
}

std::size_t FitResult::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (iequals(labels[i], label)) return i;
    fail(ErrorKind::config, fmt::format("no coefficient labelled '{}'", label));
}

Series FitResult::residuals() const {
    return Series("resid", sample.first, std::vector<double>(residual_values.begin(), residual_values.end()));
}

InformationCriteria information_criteria(double ssr, std::size_t n_obs, std::size_t n_params) {
    const double T = static_cast<double>(n_obs);
    const double k = static_cast<double>(n_params);
    const double ll = -0.5 * T * (1.0 + std::log(2.0 * std::numbers::pi) + std::log(ssr / T));
    return {ll, (-2.0 * ll + 2.0 * k) / T, (-2.0 * ll + k * std::log(T)) / T,
            (-2.0 * ll + 2.0 * k * std::log(std::log(T))) / T};
}

FitResult fit_ols(const Design& design, const CovarianceSpec& cov) {
    const Eigen::Index T = design.n_obs();
    const Eigen::Index k = design.n_params();
    if (T == 0) fail(ErrorKind::sample, "empty estimation sample");
    if (T <= k) fail(ErrorKind::sample, fmt::format("{} observations for {} parameters", T, k));

    const auto qr = detail::pivoted_qr(design.X);
    if (qr.rank() < k) {
        std::string names;
        for (auto j : detail::dependent_columns(qr))
            names += (names.empty() ? "" : ", ") + design.labels[static_cast<std::size_t>(j)];
        fail(ErrorKind::collinearity, fmt::format("near singular design: {} linearly dependent on other regressors", names));
    }

    FitResult r;
    r.dependent = design.dependent;
    r.labels = design.labels;
    r.sample = design.sample;
    r.n_obs = static_cast<std::size_t>(T);
    r.n_params = static_cast<std::size_t>(k);
    r.coefficients = qr.solve(design.y);
    r.fitted = design.X * r.coefficients;
    r.residual_values = design.y - r.fitted;

    const auto s = detail::summarize(design.y, r.residual_values, k);
    r.r2 = s.r2;
    r.adj_r2 = s.adj_r2;
    r.se_regression = s.se_regression;
    r.ssr = s.ssr;
    r.durbin_watson = s.durbin_watson;
    r.mean_dep = s.mean_dep;
    r.sd_dep = s.sd_dep;
    const auto ic = information_criteria(r.ssr, r.n_obs, r.n_params);
    r.log_likelihood = ic.log_likelihood;
    r.aic = ic.aic;
    r.schwarz = ic.schwarz;
    r.hannan_quinn = ic.hannan_quinn;

    const double dof = static_cast<double>(T - k);
    if (design.constant_col && k > 1) {
        r.f_statistic = (r.r2 / static_cast<double>(k - 1)) / ((1.0 - r.r2) / dof);
        r.f_prob = std::isnan(r.f_statistic) ? r.f_statistic
                                               : f_sf(r.f_statistic, static_cast<double>(k - 1), dof).value();
    } else {
        r.f_statistic = r.f_prob = std::numeric_limits<double>::quiet_NaN();
    }

    r.covariance_kind = cov.kind;
    if (cov.kind == CovarianceKind::classical) {
        r.covariance = (r.ssr / dof) * detail::xtx_inverse(qr);
    } else {
        r.hac_bandwidth = cov.hac.resolve_bandwidth(r.n_obs);
        r.hac_small_sample = cov.hac.small_sample_correction;
        r.covariance = newey_west_cov(design.X, r.residual_values, r.hac_bandwidth, r.hac_small_sample);
    }
    r.std_errors = r.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
    r.t_stats = r.coefficients.cwiseQuotient(r.std_errors);
    r.p_values.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) r.p_values[j] = detail::t_pvalue(r.t_stats[j], dof);
    r.design = design;
    return r;
}

FitResult fit_ols(const Dataset& d, const RegressionSpec& spec) { return fit_ols(build_design(d, spec), spec.covariance); }

}  // namespace taylor
