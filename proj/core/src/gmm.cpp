#include "taylor/gmm.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include <fmt/format.h>

#include "linalg.hpp"
#include "summary.hpp"
#include "taylor/dist.hpp"
#include "taylor/error.hpp"

namespace taylor {

namespace {

// Moment long-run covariance S for residuals e.
Eigen::MatrixXd moment_covariance(const Eigen::MatrixXd& Z, const Eigen::VectorXd& e, GmmWeighting w, int m) {
    const double T = static_cast<double>(Z.rows());
    if (w == GmmWeighting::classical) return detail::symmetrized((e.squaredNorm() / T) * (Z.transpose() * Z) / T);
    const Eigen::MatrixXd U = Z.array().colwise() * e.array();
    return long_run_covariance(U, m);
}

Eigen::VectorXd weighted_estimate(const Eigen::MatrixXd& XZ, const Eigen::VectorXd& Zy, const Eigen::MatrixXd& W) {
    const Eigen::MatrixXd A = XZ * W * XZ.transpose();
    return A.ldlt().solve(XZ * W * Zy);
}

}  // namespace

GmmResult fit_linear_gmm(const Design& design, const Eigen::MatrixXd& Z, std::vector<std::string> instrument_labels,
                         GmmWeighting weighting, const HacConfig& hac, int weight_updates) {
    const Eigen::Index T = design.n_obs();
    const Eigen::Index k = design.n_params();
    const Eigen::Index q = Z.cols();
    if (Z.rows() != T) fail(ErrorKind::domain, "instrument and design row counts differ");
    if (T <= k) fail(ErrorKind::sample, fmt::format("{} observations for {} parameters", T, k));
    if (q < k)
        fail(ErrorKind::identification,
             fmt::format("under-identified: {} instruments for {} parameters (order condition)", q, k));
    if (weight_updates < 0) fail(ErrorKind::domain, "weight_updates must be >= 0");

    const auto zqr = detail::pivoted_qr(Z);
    if (zqr.rank() < q) {
        std::string names;
        for (auto j : detail::dependent_columns(zqr))
            names += (names.empty() ? "" : ", ") + instrument_labels.at(static_cast<std::size_t>(j));
        fail(ErrorKind::collinearity, fmt::format("instrument matrix is rank deficient: {} redundant", names));
    }
    if (detail::pivoted_qr(design.X).rank() < k) fail(ErrorKind::collinearity, "regressor matrix is rank deficient");

    const double Td = static_cast<double>(T);
    const int m = hac.resolve_bandwidth(static_cast<std::size_t>(T));
    const Eigen::MatrixXd XZ = design.X.transpose() * Z;
    const Eigen::VectorXd Zy = Z.transpose() * design.y;

    // 2SLS start: W0 = (Z'Z/T)^-1.
    Eigen::MatrixXd W = detail::spd_inverse(Z.transpose() * Z / Td);
    Eigen::VectorXd beta = weighted_estimate(XZ, Zy, W);
    Eigen::VectorXd e = design.y - design.X * beta;
    Eigen::MatrixXd S_weight = moment_covariance(Z, e, GmmWeighting::classical, m);
    for (int u = 0; u < weight_updates; ++u) {
        S_weight = moment_covariance(Z, e, weighting, m);
        W = detail::spd_inverse(S_weight);
        beta = weighted_estimate(XZ, Zy, W);
        e = design.y - design.X * beta;
    }
    if (weight_updates == 0) S_weight = moment_covariance(Z, e, GmmWeighting::classical, m);

    GmmResult r;
    r.dependent = design.dependent;
    r.labels = design.labels;
    r.instrument_labels = std::move(instrument_labels);
    r.coefficients = beta;
    r.residual_values = e;
    r.sample = design.sample;
    r.n_obs = static_cast<std::size_t>(T);
    r.n_params = static_cast<std::size_t>(k);
    r.bandwidth = weighting == GmmWeighting::hac ? m : 0;
    r.weight_updates = weight_updates;
    r.weighting = weighting;
    r.instrument_rank = static_cast<std::size_t>(zqr.rank());

    // J = T g' S^-1 g at the final estimate, S the weighting matrix used to obtain it.
    const Eigen::VectorXd g = Z.transpose() * e / Td;
    r.j_statistic = std::max(0.0, Td * g.dot(detail::spd_inverse(S_weight) * g));
    r.j_df = static_cast<int>(q - k);
    r.j_prob = r.j_df > 0 ? chi2_sf(r.j_statistic, r.j_df).value() : std::numeric_limits<double>::quiet_NaN();

    // Sandwich covariance with the moment covariance re-evaluated at the final residuals.
    const Eigen::MatrixXd G = Z.transpose() * design.X / Td;
    const Eigen::MatrixXd S_final = moment_covariance(Z, e, weighting, m);
    const Eigen::MatrixXd bread = detail::spd_inverse(G.transpose() * W * G);
    const Eigen::MatrixXd meat = G.transpose() * W * S_final * W * G;
    const double scale = hac.small_sample_correction ? Td - static_cast<double>(k) : Td;
    r.covariance = detail::symmetrized(bread * meat * bread / scale);
    r.std_errors = r.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
    r.t_stats = r.coefficients.cwiseQuotient(r.std_errors);
    r.p_values.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) r.p_values[j] = detail::t_pvalue(r.t_stats[j], Td - static_cast<double>(k));

    const auto s = detail::summarize(design.y, e, k);
    r.r2 = s.r2;
    r.adj_r2 = s.adj_r2;
    r.se_regression = s.se_regression;
    r.ssr = s.ssr;
    r.durbin_watson = s.durbin_watson;
    r.mean_dep = s.mean_dep;
    r.sd_dep = s.sd_dep;
    return r;
}

GmmResult fit_linear_gmm(const Dataset& d, const GmmSpec& spec) {
    std::vector<Term> inst;
    for (const Term& t : spec.instruments) {
        Term norm = is_constant_term(t) ? Term{"c", 0} : Term{Dataset::canonical_name(t.name), t.lag};
        if (std::find(inst.begin(), inst.end(), norm) != inst.end())
            fail(ErrorKind::config, fmt::format("duplicate instrument '{}'", norm.label()));
        inst.push_back(norm);
    }
    const bool listed_constant = std::any_of(inst.begin(), inst.end(), is_constant_term);
    if (spec.add_constant_instrument && !listed_constant) inst.insert(inst.begin(), Term{"c", 0});
    if (inst.empty()) fail(ErrorKind::config, "no instruments");

    const Design design = build_design(d, spec.base, inst);
    // Instrument block over the design's sample.
    std::vector<Term> non_constant;
    for (const Term& t : inst)
        if (!is_constant_term(t)) non_constant.push_back(t);
    Eigen::MatrixXd Z(design.n_obs(), static_cast<Eigen::Index>(inst.size()));
    std::optional<ObservationMatrix> obs;
    if (!non_constant.empty()) obs = align_sample(d, non_constant, design.sample);
    std::vector<std::string> labels;
    Eigen::Index next = 0;
    for (std::size_t j = 0; j < inst.size(); ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        if (is_constant_term(inst[j])) {
            Z.col(col).setOnes();
            labels.push_back("C");
        } else {
            Z.col(col) = obs->data.col(next++);
            labels.push_back(inst[j].label());
        }
    }
    return fit_linear_gmm(design, Z, std::move(labels), spec.weighting, spec.hac, spec.weight_updates);
}

}  // namespace taylor
