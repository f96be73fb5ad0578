#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "taylor/reproduce.hpp"

using namespace taylor;

namespace {

std::vector<double> random_walk(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z(0.0, 0.01);
    std::vector<double> v(n);
    double level = 9.0;
    for (auto& x : v) x = level += 0.005 + z(rng);
    return v;
}

void BM_HpTrend(benchmark::State& state) {
    const auto x = random_walk(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hp_trend(x, 1600.0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HpTrend)->RangeMultiplier(4)->Range(128, 32768)->Complexity(benchmark::oN);

void BM_OlsDesign(benchmark::State& state) {
    const auto n = state.range(0);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> z;
    Eigen::MatrixXd X(n, 6);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        for (Eigen::Index j = 1; j < 6; ++j) X(i, j) = z(rng);
        y[i] = X.row(i).sum() + z(rng);
    }
    const Design d = make_design(y, X, 0);
    for (auto _ : state) benchmark::DoNotOptimize(fit_ols(d));
}
BENCHMARK(BM_OlsDesign)->Arg(117)->Arg(1000)->Arg(10000);

void BM_NeweyWest(benchmark::State& state) {
    const auto n = state.range(0);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    Eigen::MatrixXd X(n, 4);
    Eigen::VectorXd e(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        for (Eigen::Index j = 1; j < 4; ++j) X(i, j) = z(rng);
        e[i] = z(rng);
    }
    for (auto _ : state) benchmark::DoNotOptimize(newey_west_cov(X, e, 5));
}
BENCHMARK(BM_NeweyWest)->Arg(117)->Arg(10000);

void BM_BaselineFit(benchmark::State& state) {
    const Dataset d = reproduction_dataset(Country::us);
    const RegressionSpec spec = baseline_spec(Country::us);
    for (auto _ : state) benchmark::DoNotOptimize(fit_ols(d, spec));
}
BENCHMARK(BM_BaselineFit);

void BM_Gmm(benchmark::State& state) {
    const Dataset d = reproduction_dataset(Country::us);
    const GmmSpec spec = gmm_spec(Country::us);
    for (auto _ : state) benchmark::DoNotOptimize(fit_linear_gmm(d, spec));
}
BENCHMARK(BM_Gmm);

void BM_ReproduceAll(benchmark::State& state) {
    for (auto _ : state) {
        for (Country c : {Country::us, Country::uk}) {
            const Dataset d = reproduction_dataset(c);
            for (int id : tables_for(c)) benchmark::DoNotOptimize(run_table(d, c, id));
        }
    }
}
BENCHMARK(BM_ReproduceAll)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
