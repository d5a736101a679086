#include <benchmark/benchmark.h>

#include "upb/sweep.hpp"

namespace {

upb::ReducedParams case1_params(double Delta_over_kappa) {
    upb::PhysicalParams p;
    upb::DimensionlessOverrides ov;
    ov.g_over_kappa = 0.63;
    ov.omega_m_over_kappa = 10.0;
    ov.j_over_kappa = 3.0;
    ov.drive_over_kappa = 1e-3;
    ov.delta_over_kappa = Delta_over_kappa;
    return upb::reduce(p, ov);
}

void BM_LiouvillianAssembly(benchmark::State& state) {
    upb::ReducedParams rp = case1_params(-0.27);
    std::vector<int> dims{int(state.range(0)), int(state.range(0)), int(state.range(0)) + 1};
    for (auto _ : state) {
        upb::TensorOperator H = upb::build_hamiltonian(upb::HamiltonianKind::FullOM, rp, dims);
        benchmark::DoNotOptimize(upb::build_liouvillian(H, upb::standard_channels(rp, dims)));
    }
}
BENCHMARK(BM_LiouvillianAssembly)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_MasterSteadyState(benchmark::State& state) {
    upb::ReducedParams rp = case1_params(-0.27);
    std::vector<int> dims{int(state.range(0)), int(state.range(0)), int(state.range(0)) + 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(upb::solve_point(rp, dims).g2_L);
}
BENCHMARK(BM_MasterSteadyState)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SemiclassicalPoint(benchmark::State& state) {
    upb::ReducedParams rp = case1_params(-0.29);
    for (auto _ : state) benchmark::DoNotOptimize(upb::g2_semiclassical(rp));
}
BENCHMARK(BM_SemiclassicalPoint)->Unit(benchmark::kMillisecond);

void BM_WeakDrivePoint(benchmark::State& state) {
    upb::ReducedParams rp = case1_params(-0.29);
    for (auto _ : state) benchmark::DoNotOptimize(upb::g2_weakdrive(rp));
}
BENCHMARK(BM_WeakDrivePoint)->Unit(benchmark::kMicrosecond);

void BM_OptimalParams(benchmark::State& state) {
    upb::PhysicalParams p;
    upb::DimensionlessOverrides ov;
    ov.g_over_kappa = 0.1;
    ov.omega_m_over_kappa = 30.0;
    ov.j_over_kappa = 20.0;
    ov.drive_over_kappa = 1e-3;
    upb::ReducedParams rp = upb::reduce(p, ov);
    for (auto _ : state) benchmark::DoNotOptimize(upb::optimal_params(rp).Delta_opt);
}
BENCHMARK(BM_OptimalParams)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
