#include <benchmark/benchmark.h>

#include <Eigen/SparseCholesky>
#include <complex>

#include "fracpar/fem.hpp"
#include "fracpar/linsolve.hpp"
#include "fracpar/mesh.hpp"
#include "fracpar/sincprop.hpp"
#include "fracpar/spectral.hpp"

using namespace fracpar;

static void BM_AssembleSquare(benchmark::State& state) {
    const Mesh mesh = build_square_mesh(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        SparsePencil p = assemble(mesh);
        benchmark::DoNotOptimize(p.A.valuePtr());
    }
}
BENCHMARK(BM_AssembleSquare)->Arg(16)->Arg(64)->Arg(128);

static void BM_FactorizeShift2D(benchmark::State& state) {
    const Mesh mesh = build_square_mesh(static_cast<int>(state.range(0)));
    const SparsePencil p = assemble(mesh);
    const std::complex<double> z(2.5, 40.0);
    for (auto _ : state) {
        ShiftedFactor f = factorize(p, z);
        benchmark::DoNotOptimize(&f);
    }
}
BENCHMARK(BM_FactorizeShift2D)->Arg(32)->Arg(64)->Arg(80);

static void BM_SincPropagator1D(benchmark::State& state) {
    const Mesh mesh = build_interval_mesh(127);
    const SparsePencil p = assemble(mesh);
    Eigen::SimplicialLDLT<SpMat> mass(p.M);
    const Eigen::VectorXd cv = mass.solve(initial_data_load_vector(mesh, InitialData::Hat1D));
    const ContourSpec spec = ContourSpec::unit_interval();
    const SincRule rule = make_rule(static_cast<int>(state.range(0)), 0.5, SpacingPolicy::LogN, spec);
    for (auto _ : state) {
        PropagatorResult q = apply_propagator(p, cv, 0.5, 0.5, rule, spec);
        benchmark::DoNotOptimize(q.values.data());
    }
}
BENCHMARK(BM_SincPropagator1D)->Arg(25)->Arg(50)->Arg(100);

static void BM_DstPropagate(benchmark::State& state) {
    const int m = (1 << state.range(0)) - 1;
    const Mesh mesh = build_interval_mesh(m);
    const Eigen::VectorXd load = initial_data_load_vector(mesh, InitialData::Hat1D);
    for (auto _ : state) {
        Eigen::VectorXd u = dst_propagate_1d(mesh, load, 0.5, 0.5);
        benchmark::DoNotOptimize(u.data());
    }
}
BENCHMARK(BM_DstPropagate)->Arg(7)->Arg(10)->Arg(13);

BENCHMARK_MAIN();
