#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "netbn/augment.hpp"
#include "netbn/factor.hpp"
#include "netbn/graph.hpp"
#include "netbn/infer.hpp"
#include "netbn/model.hpp"

namespace {

const char* kMatrixCsv =
    "failure,E1,E2,E3,E4,E5\n"
    "F1,1,1,0,1,1\n"
    "F2,1,1,1,0,1\n"
    "F3,0,1,0,1,1\n"
    "F4,1,0,1,1,0\n"
    "F5,1,0,1,0,1\n";

netbn::Model demo_model() {
    auto matrix = netbn::parse_matrix(kMatrixCsv, "bench_matrix.csv");
    netbn::AugmentOptions opts;
    opts.a = 0.7;
    opts.population = 10000;
    return netbn::augment_model(matrix, opts);
}

// Wide synthetic net: window-3 DAG over `n` events with arbitrary but
// fixed conditional probabilities.
netbn::BayesNet wide_net(int n) {
    std::vector<netbn::EventId> events;
    for (int i = 1; i <= n; ++i)
        events.push_back({i, "E" + std::to_string(i)});
    netbn::BayesNet net{netbn::window_dag(events, 3), {}};
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 1; i <= n; ++i) {
        netbn::CptTable table;
        table.node = i;
        table.parents = net.dag.parents(i);
        std::size_t rows = std::size_t{1} << table.parents.size();
        for (std::size_t r = 0; r < rows; ++r) {
            double p1 = unit(rng);
            table.rows.push_back({p1, 1.0 - p1, false});
        }
        net.cpts.push_back(std::move(table));
    }
    return net;
}

netbn::Assignment evidence_e1() {
    netbn::Assignment a;
    a.set(1, true);
    return a;
}

void BM_posterior_demo(benchmark::State& state) {
    auto model = demo_model();
    auto evidence = evidence_e1();
    for (auto _ : state) {
        auto f = netbn::posterior(model.net, {4, 5}, evidence);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_posterior_demo);

void BM_map_demo(benchmark::State& state) {
    auto model = demo_model();
    auto evidence = evidence_e1();
    for (auto _ : state) {
        auto r = netbn::map_query(model.net, {2, 3, 4, 5}, evidence);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_map_demo);

void BM_enumerate_demo(benchmark::State& state) {
    auto model = demo_model();
    auto evidence = evidence_e1();
    for (auto _ : state) {
        auto f = netbn::enumerate_posterior(model.net, {4, 5}, evidence);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_enumerate_demo);

void BM_posterior_wide(benchmark::State& state) {
    auto net = wide_net(static_cast<int>(state.range(0)));
    netbn::Assignment evidence;
    evidence.set(1, true);
    evidence.set(2, false);
    int n = net.dag.node_count();
    for (auto _ : state) {
        auto f = netbn::posterior(net, {n - 1, n}, evidence);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_posterior_wide)->Arg(8)->Arg(12)->Arg(16);

void BM_factor_product(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    std::vector<int> left, right;
    for (int i = 1; i <= n; ++i) left.push_back(i);
    for (int i = n / 2; i < n / 2 + n; ++i) right.push_back(i);
    std::mt19937_64 rng(6789);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto fill = [&](const std::vector<int>& scope) {
        std::vector<double> values(std::size_t{1} << scope.size());
        for (double& v : values) v = unit(rng);
        return netbn::Factor(scope, values);
    };
    auto a = fill(left);
    auto b = fill(right);
    for (auto _ : state) {
        auto c = netbn::product(a, b);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_factor_product)->Arg(6)->Arg(10)->Arg(14);

void BM_augment_demo(benchmark::State& state) {
    auto matrix = netbn::parse_matrix(kMatrixCsv, "bench_matrix.csv");
    netbn::AugmentOptions opts;
    opts.a = 0.7;
    opts.population = 10000;
    for (auto _ : state) {
        auto model = netbn::augment_model(matrix, opts);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_augment_demo);

}  // namespace

BENCHMARK_MAIN();
