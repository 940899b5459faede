#include <random>

#include <benchmark/benchmark.h>

#include "linesource/assembly.hpp"
#include "linesource/greens.hpp"
#include "linesource/manufactured.hpp"
#include "linesource/solver.hpp"
#include "linesource/splitting.hpp"

using namespace linesource;

namespace {

std::vector<Point> sample_points(int count)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    std::vector<Point> pts;
    for (int i = 0; i < count; ++i) {
        pts.emplace_back(d(rng), d(rng), d(rng));
    }
    return pts;
}

void BM_GreensNetwork(benchmark::State& state)
{
    const auto net = synthetic_network(kSyntheticNetworkSeed, kSyntheticNetworkSize);
    const auto pts = sample_points(1024);
    const KernelParams params{1.0, 1e-12};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(greens_network(pts[i++ % pts.size()], net, params));
    }
}
BENCHMARK(BM_GreensNetwork);

void BM_RemainderSource(benchmark::State& state)
{
    const auto c = network_case(synthetic_network(kSyntheticNetworkSeed, kSyntheticNetworkSize));
    const auto pts = sample_points(1024);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(remainder_source(pts[i++ % pts.size()], *c.split));
    }
}
BENCHMARK(BM_RemainderSource);

void BM_AssembleRemoval(benchmark::State& state)
{
    const auto c = vertical_line_case();
    const auto mesh = build_box_mesh(3, Point::Zero(), Point::Ones(), static_cast<int>(state.range(0)));
    const MixedSpace space(mesh);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_removal_system(space, *c.split, c.background));
    }
    state.counters["cells"] = mesh.num_cells();
}
BENCHMARK(BM_AssembleRemoval)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state)
{
    const auto c = vertical_line_case();
    const auto mesh = build_box_mesh(3, Point::Zero(), Point::Ones(), static_cast<int>(state.range(0)));
    const MixedSpace space(mesh);
    const auto sys = assemble_removal_system(space, *c.split, c.background);
    SolverOptions options;
    options.method = state.range(1) == 0 ? SolverMethod::direct : SolverMethod::minres;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_saddle(sys, options));
    }
    state.counters["unknowns"] = sys.num_flux() + sys.num_pressure();
}
BENCHMARK(BM_Solve)->Args({4, 0})->Args({4, 1})->Args({8, 0})->Args({8, 1})->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
