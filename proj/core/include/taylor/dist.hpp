#pragma once

namespace taylor {

/// A probability in [0, 1].
class TailProbability {
public:
    constexpr TailProbability() = default;
    explicit TailProbability(double p);

    [[nodiscard]] constexpr double value() const noexcept { return value_; }

    friend constexpr bool operator==(TailProbability, TailProbability) = default;

private:
    double value_ = 1.0;
};

namespace dist {

// Regularized incomplete gamma: P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b).
double beta_i(double a, double b, double x);

double normal_cdf(double x);
double normal_sf(double x);

double chi2_cdf(double x, double df);
double student_t_cdf(double t, double df);
double f_cdf(double x, double df1, double df2);

}  // namespace dist

/// P(X > x), X ~ chi-square(df).
TailProbability chi2_sf(double x, double df);

/// Two-sided p-value 2 P(T > |t|), T ~ Student-t(df).
TailProbability student_t_sf2(double t, double df);

/// P(F > x), F ~ Fisher(df1, df2).
TailProbability f_sf(double x, double df1, double df2);

}  // namespace taylor
