#include "taylor/transform.hpp"

#include <cmath>

#include <fmt/format.h>

#include "taylor/error.hpp"

namespace taylor {

void TransformConfig::validate() const {
    if (!std::isfinite(inflation_target)) fail(ErrorKind::domain, "inflation target must be finite");
    if (yoy_lag < 1) fail(ErrorKind::domain, fmt::format("yoy lag must be >= 1, got {}", yoy_lag));
    if (!(hp_lambda > 0.0) || !std::isfinite(hp_lambda))
        fail(ErrorKind::domain, fmt::format("HP lambda must be positive, got {}", hp_lambda));
}

Series yoy_change(const Series& log_series, int k) {
    if (k < 1) fail(ErrorKind::domain, fmt::format("yoy lag must be >= 1, got {}", k));
    if (static_cast<std::size_t>(k) >= log_series.size())
        fail(ErrorKind::sample,
             fmt::format("yoy lag {} leaves no observations of '{}'", k, log_series.name()));
    const auto v = log_series.values();
    std::vector<double> out(v.size() - static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 100.0 * (v[i + k] - v[i]);
    return Series(log_series.name(), log_series.start().advanced(k), std::move(out));
}

Series inflation_gap(const Series& cpi, const TransformConfig& cfg) {
    cfg.validate();
    const Series yoy = yoy_change(natural_log(cpi), cfg.yoy_lag);
    std::vector<double> out(yoy.values().begin(), yoy.values().end());
    for (double& x : out) x -= cfg.inflation_target;
    return Series("inflation_gap", yoy.start(), std::move(out));
}

Series linear_trend_gap(const Series& gdp) {
    if (gdp.size() < 3)
        fail(ErrorKind::sample, fmt::format("linear trend needs >= 3 observations, '{}' has {}", gdp.name(), gdp.size()));
    const Series lg = natural_log(gdp);
    const auto y = lg.values();
    const double n = static_cast<double>(y.size());
    const double tbar = (n - 1.0) / 2.0;
    double ybar = 0.0;
    for (double v : y) ybar += v;
    ybar /= n;
    double sty = 0.0;
    double stt = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dt = static_cast<double>(i) - tbar;
        sty += dt * (y[i] - ybar);
        stt += dt * dt;
    }
    const double slope = sty / stt;
    std::vector<double> gap(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        gap[i] = 100.0 * ((y[i] - ybar) - slope * (static_cast<double>(i) - tbar));
    return Series("output_gap", gdp.start(), std::move(gap));
}

namespace {

// Solves a symmetric pentadiagonal system by banded LDL'. a0, a1, a2 hold the main and first two
// super-diagonals; the solution overwrites rhs.
void solve_pentadiagonal(const std::vector<double>& a0, const std::vector<double>& a1, const std::vector<double>& a2,
                         std::vector<double>& rhs) {
    const std::size_t n = a0.size();
    std::vector<double> d(n), l1(n, 0.0), l2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double di = a0[i];
        if (i >= 1) di -= l1[i - 1] * l1[i - 1] * d[i - 1];
        if (i >= 2) di -= l2[i - 2] * l2[i - 2] * d[i - 2];
        d[i] = di;
        if (i + 1 < n) {
            double v = a1[i];
            if (i >= 1) v -= l2[i - 1] * l1[i - 1] * d[i - 1];
            l1[i] = v / di;
        }
        if (i + 2 < n) l2[i] = a2[i] / di;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= 1) rhs[i] -= l1[i - 1] * rhs[i - 1];
        if (i >= 2) rhs[i] -= l2[i - 2] * rhs[i - 2];
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= d[i];
    for (std::size_t k = n; k-- > 0;) {
        if (k + 1 < n) rhs[k] -= l1[k] * rhs[k + 1];
        if (k + 2 < n) rhs[k] -= l2[k] * rhs[k + 2];
    }
}

// Cycle x - tau written as D'w with (I/lambda + DD') w = D x. Unlike solving (I + lambda D'D) tau = x
// directly, this stays well conditioned for large lambda, and D'w is orthogonal to linear trends exactly.
std::vector<double> hp_cycle(std::span<const double> x, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        fail(ErrorKind::domain, fmt::format("HP lambda must be positive, got {}", lambda));
    const std::size_t n = x.size();
    if (n < 4) fail(ErrorKind::sample, fmt::format("HP filter needs >= 4 observations, got {}", n));

    const std::size_t m = n - 2;
    std::vector<double> a0(m, 6.0 + 1.0 / lambda), a1(m, -4.0), a2(m, 1.0);
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = x[i] - 2.0 * x[i + 1] + x[i + 2];
    solve_pentadiagonal(a0, a1, a2, w);

    std::vector<double> cycle(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        cycle[i] += w[i];
        cycle[i + 1] -= 2.0 * w[i];
        cycle[i + 2] += w[i];
    }
    return cycle;
}

}  // namespace

std::vector<double> hp_trend(std::span<const double> x, double lambda) {
    auto trend = hp_cycle(x, lambda);
    for (std::size_t i = 0; i < trend.size(); ++i) trend[i] = x[i] - trend[i];
    return trend;
}

Series hp_filter_gap(const Series& gdp, double lambda) {
    const Series lg = natural_log(gdp);
    auto gap = hp_cycle(lg.values(), lambda);
    for (auto& g : gap) g *= 100.0;
    return Series("output_gap", gdp.start(), std::move(gap));
}

Dataset build_taylor_dataset(const Dataset& raw, const TransformConfig& cfg) {
    cfg.validate();
    require_raw_series(raw);
    const Series& gdp = raw.get("real_gdp");
    Series gap = cfg.detrend == Detrend::hp_filter ? hp_filter_gap(gdp, cfg.hp_lambda) : linear_trend_gap(gdp);
    Series infl = inflation_gap(raw.get("cpi"), cfg);
    Series s = yoy_change(natural_log(raw.get("stock_index")), cfg.yoy_lag).renamed("s");

    Dataset out = raw.with(std::move(infl)).with(std::move(gap)).with(std::move(s));
    const Term model[] = {{"interest_rate", 0}, {"inflation_gap", 0}, {"output_gap", 0}, {"s", 0}};
    const QuarterRange adjusted = feasible_range(out, model);
    if (adjusted.empty()) fail(ErrorKind::sample, fmt::format("{} model variables have no common sample", raw.country()));
    return out.with_adjusted_sample(adjusted);
}

}  // namespace taylor
