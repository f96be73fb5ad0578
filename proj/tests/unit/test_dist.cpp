#include <doctest.h>

#include <cmath>
#include <random>

#include "expect.hpp"
#include "oracles.hpp"
#include "taylor/dist.hpp"

using namespace taylor;
using fixtures::kind_of;

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("tail probabilities at reference points") {
    CHECK(near(chi2_sf(6.285282, 2).value(), 0.0432, 5e-4));
    CHECK(near(chi2_sf(3.683003, 1).value(), 0.054970, 5e-5));
    CHECK(near(student_t_sf2(2.526311, 114).value(), 0.0129, 5e-4));
    CHECK(near(student_t_sf2(1.437320, 112).value(), 0.1534, 5e-4));
    CHECK(near(f_sf(3.142641, 2, 114).value(), 0.0469, 5e-4));
    CHECK(near(f_sf(4.178675, 9, 107).value(), 0.0001, 5e-5));
    for (double k : {1.0, 2.0, 7.0}) CHECK(chi2_sf(0, k).value() == 1.0);
    for (double v : {1.0, 30.0, 1e4}) CHECK(student_t_sf2(0, v).value() == 1.0);
    CHECK(f_sf(0, 3, 40).value() == 1.0);
    CHECK(chi2_sf(2000, 1).value() >= 0.0);
    CHECK(chi2_sf(2000, 1).value() < 1e-300);
}

TEST_CASE("CDFs agree with integrated densities") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> pos(0.05, 12.0), sym(-6.0, 6.0);
    std::uniform_int_distribution<int> dof(1, 40);
    CHECK(near(dist::chi2_cdf(1.23652, 1), oracle::integrate_cdf_sqrt([](double s) { return oracle::chi2_pdf(s, 1); }, 1.23652), 1e-8));
    for (int i = 0; i < 20; ++i) {
        const double x = pos(rng), t = sym(rng);
        const double k = dof(rng), v = dof(rng), d1 = dof(rng), d2 = dof(rng) + 2;
        const double chi = oracle::integrate_cdf_sqrt([k](double s) { return oracle::chi2_pdf(s, k); }, x);
        CHECK(near(dist::chi2_cdf(x, k), chi, 1e-8));
        const double tc = 0.5 + oracle::integrate_cdf([v](double s) { return oracle::t_pdf(s, v); }, 0.0, t);
        CHECK(near(dist::student_t_cdf(t, v), tc, 1e-8));
        const double fc = oracle::integrate_cdf_sqrt([d1, d2](double s) { return oracle::f_pdf(s, d1, d2); }, x);
        CHECK(near(dist::f_cdf(x, d1, d2), fc, 1e-8));
        const double nc = 0.5 + oracle::integrate_cdf(oracle::normal_pdf, 0.0, t);
        CHECK(near(dist::normal_cdf(t), nc, 1e-8));
    }
}

TEST_CASE("distribution identities") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double t = u(rng);
        CHECK(near(chi2_sf(t * t, 1).value(), 2.0 * (1.0 - dist::normal_cdf(t)), 1e-10));
        CHECK(near(chi2_sf(t * t, 1).value(), 2.0 * dist::normal_sf(t), 1e-10));
        CHECK(near(student_t_sf2(t, 1e6).value(), 2.0 * dist::normal_sf(t), 1e-6));
        for (double d : {3.0, 25.0, 114.0}) CHECK(near(f_sf(t * t, 1, d).value(), student_t_sf2(t, d).value(), 1e-10));
        CHECK(student_t_sf2(-t, 20).value() == student_t_sf2(t, 20).value());
        CHECK(near(dist::gamma_p(2.5, t) + dist::gamma_q(2.5, t), 1.0, 1e-14));
    }
    double prev = 1.0;
    for (double x = 0.0; x < 40.0; x += 0.25) {
        const double p = chi2_sf(x, 4).value();
        CHECK(p <= prev);
        prev = p;
    }
    CHECK(near(dist::beta_i(2.0, 3.0, 0.4), 0.5248, 1e-12));
}

TEST_CASE("domain errors") {
    CHECK(kind_of([] { chi2_sf(-1.0, 2); }) == ErrorKind::domain);
    CHECK(kind_of([] { chi2_sf(1.0, 0); }) == ErrorKind::domain);
    CHECK(kind_of([] { student_t_sf2(1.0, 0); }) == ErrorKind::domain);
    CHECK(kind_of([] { student_t_sf2(1.0, -3); }) == ErrorKind::domain);
    CHECK(kind_of([] { f_sf(-0.1, 1, 1); }) == ErrorKind::domain);
    CHECK(kind_of([] { f_sf(1.0, 0, 5); }) == ErrorKind::domain);
    CHECK(kind_of([] { f_sf(1.0, 2, 0); }) == ErrorKind::domain);
    CHECK(kind_of([] { TailProbability(1.5); }) == ErrorKind::domain);
    CHECK(kind_of([] { TailProbability(std::nan("")); }) == ErrorKind::domain);
}
