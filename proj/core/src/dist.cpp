#include "taylor/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "taylor/error.hpp"

namespace taylor {

TailProbability::TailProbability(double p) : value_(p) {
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::domain, fmt::format("probability {} outside [0,1]", p));
}

namespace dist {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 100000;

// exp(a ln x - x - lgamma(a))
double gamma_prefactor(double a, double x) { return std::exp(a * std::log(x) - x - std::lgamma(a)); }

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * gamma_prefactor(a, x);
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_q_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return gamma_prefactor(a, x) * h;
}

// Continued fraction for I_x(a, b), valid when x < (a + 1) / (a + b + 2).
double beta_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h;
}

// I_x(a, b) with y = 1 - x supplied separately so callers can avoid cancellation.
double beta_i_xy(double a, double b, double x, double y) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double front =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(y));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
    return 1.0 - front * beta_fraction(b, a, y) / b;
}

void check_df(double df, const char* what) {
    if (!(df > 0.0) || std::isnan(df)) fail(ErrorKind::domain, fmt::format("{} must be positive, got {}", what, df));
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0)) fail(ErrorKind::domain, fmt::format("gamma shape must be positive, got {}", a));
    if (x < 0.0 || std::isnan(x)) fail(ErrorKind::domain, fmt::format("gamma argument must be >= 0, got {}", x));
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return clamp01(x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x));
}

double gamma_q(double a, double x) {
    if (!(a > 0.0)) fail(ErrorKind::domain, fmt::format("gamma shape must be positive, got {}", a));
    if (x < 0.0 || std::isnan(x)) fail(ErrorKind::domain, fmt::format("gamma argument must be >= 0, got {}", x));
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return clamp01(x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x));
}

double beta_i(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) fail(ErrorKind::domain, "beta parameters must be positive");
    if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::domain, fmt::format("beta argument {} outside [0,1]", x));
    return clamp01(beta_i_xy(a, b, x, 1.0 - x));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double chi2_cdf(double x, double df) {
    check_df(df, "chi-square df");
    if (x < 0.0) fail(ErrorKind::domain, fmt::format("chi-square argument must be >= 0, got {}", x));
    return gamma_p(0.5 * df, 0.5 * x);
}

double student_t_cdf(double t, double df) {
    check_df(df, "t df");
    if (std::isnan(t)) fail(ErrorKind::domain, "t argument is NaN");
    const double t2 = t * t;
    // P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    const double tail2 = beta_i_xy(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2));
    return t >= 0.0 ? 1.0 - 0.5 * tail2 : 0.5 * tail2;
}

double f_cdf(double x, double df1, double df2) {
    check_df(df1, "F numerator df");
    check_df(df2, "F denominator df");
    if (x < 0.0 || std::isnan(x)) fail(ErrorKind::domain, fmt::format("F argument must be >= 0, got {}", x));
    const double u = df1 * x;
    return clamp01(beta_i_xy(0.5 * df1, 0.5 * df2, u / (u + df2), df2 / (u + df2)));
}

}  // namespace dist

TailProbability chi2_sf(double x, double df) {
    if (!(df > 0.0)) fail(ErrorKind::domain, fmt::format("chi-square df must be positive, got {}", df));
    if (x < 0.0 || std::isnan(x)) fail(ErrorKind::domain, fmt::format("chi-square argument must be >= 0, got {}", x));
    return TailProbability(dist::gamma_q(0.5 * df, 0.5 * x));
}

TailProbability student_t_sf2(double t, double df) {
    if (!(df > 0.0)) fail(ErrorKind::domain, fmt::format("t df must be positive, got {}", df));
    if (std::isnan(t)) fail(ErrorKind::domain, "t argument is NaN");
    if (t == 0.0) return TailProbability(1.0);
    const double t2 = t * t;
    return TailProbability(std::clamp(dist::beta_i_xy(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2)), 0.0, 1.0));
}

TailProbability f_sf(double x, double df1, double df2) {
    if (!(df1 > 0.0) || !(df2 > 0.0)) fail(ErrorKind::domain, "F degrees of freedom must be positive");
    if (x < 0.0 || std::isnan(x)) fail(ErrorKind::domain, fmt::format("F argument must be >= 0, got {}", x));
    if (x == 0.0) return TailProbability(1.0);
    const double u = df1 * x;
    // P(F > x) = I_{df2/(df2+u)}(df2/2, df1/2)
    return TailProbability(std::clamp(dist::beta_i_xy(0.5 * df2, 0.5 * df1, df2 / (df2 + u), u / (df2 + u)), 0.0, 1.0));
}

}  // namespace taylor
