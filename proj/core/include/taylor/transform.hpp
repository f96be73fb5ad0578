#pragma once

#include "taylor/series.hpp"

namespace taylor {

enum class Detrend { linear_trend, hp_filter };

struct TransformConfig {
    double inflation_target = 2.0;  ///< percent
    int yoy_lag = 4;                ///< quarters
    Detrend detrend = Detrend::hp_filter;
    double hp_lambda = 1600.0;

    /// Throws a domain error for a non-finite target, yoy_lag < 1 or lambda <= 0.
    void validate() const;
};

/// 100 * (s(t) - s(t-k)) for a series already in logs; the first k quarters are dropped.
Series yoy_change(const Series& log_series, int k);

/// Year-over-year log-CPI inflation minus the target.
Series inflation_gap(const Series& cpi, const TransformConfig& cfg = {});

/// 100 * residuals of log GDP regressed on {1, t} over the full span.
Series linear_trend_gap(const Series& gdp);

/// Hodrick-Prescott trend of `x`: minimises |x - tau|^2 + lambda * |D2 tau|^2.
std::vector<double> hp_trend(std::span<const double> x, double lambda);

/// 100 * (log GDP - HP trend of log GDP).
Series hp_filter_gap(const Series& gdp, double lambda);

/// Adds inflation_gap, output_gap and s (stock yoy change) and records the adjusted common sample.
Dataset build_taylor_dataset(const Dataset& raw, const TransformConfig& cfg = {});

}  // namespace taylor
