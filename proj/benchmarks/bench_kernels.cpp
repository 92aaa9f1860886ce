#include <benchmark/benchmark.h>

#include "recirc/assembly.hpp"
#include "recirc/mesh.hpp"
#include "recirc/solvers.hpp"
#include "recirc/transport.hpp"

using namespace recirc;

namespace {

struct Fixture {
    Mesh mesh;
    DofMap dm;
    Fixture()
        : mesh(build_rect_mesh(16.0, 19.0, 0.5, PumpLayout::symmetric4(16.0, 19.0))),
          dm(make_dof_map(mesh)) {}
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

}  // namespace

static void BM_BuildMesh(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            build_rect_mesh(16.0, 19.0, 0.5, PumpLayout::symmetric4(16.0, 19.0)));
}
BENCHMARK(BM_BuildMesh);

static void BM_AssembleScalarMass(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(assemble_scalar_mass(f.mesh, f.dm));
}
BENCHMARK(BM_AssembleScalarMass);

static void BM_AssembleStiffness(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(assemble_scalar_stiffness(f.mesh, f.dm, 1.4e-5));
}
BENCHMARK(BM_AssembleStiffness);

static void BM_AssembleHydroBlocks(benchmark::State& state) {
    const auto& f = fixture();
    PhysicalParams params;
    const Vector v(f.dm.vector_q2_count(), 0.0);
    const Vector theta(f.dm.scalar_q2_count(), 283.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            assemble_hydro_blocks(f.mesh, f.dm, params, v, theta, theta, v, 1800.0));
}
BENCHMARK(BM_AssembleHydroBlocks);

static void BM_LocatePoint(benchmark::State& state) {
    const auto& f = fixture();
    const std::vector<Vec2> pts = quadrature_points(f.mesh);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(locate_point(f.mesh, pts[i]));
        i = (i + 37) % pts.size();
    }
}
BENCHMARK(BM_LocatePoint);

static void BM_AdvectedRhs(benchmark::State& state) {
    const auto& f = fixture();
    const Vector theta(f.dm.scalar_q2_count(), 283.0);
    const Vector v = interpolate_velocity(f.dm, [](Vec2 p) {
        return Vec2{1e-3 * p.y / 19.0, -1e-3 * p.x / 16.0};
    });
    for (auto _ : state) benchmark::DoNotOptimize(advected_rhs(f.mesh, f.dm, theta, v, 1800.0));
}
BENCHMARK(BM_AdvectedRhs);

static void BM_CgThermalSystem(benchmark::State& state) {
    const auto& f = fixture();
    SparseMatrix A = assemble_scalar_stiffness(f.mesh, f.dm, 1.4e-5);
    {
        SparseMatrix M = assemble_scalar_mass(f.mesh, f.dm);
        for (double& v : M.values()) v /= 1800.0;
        A.add_scaled(1.0, M);
    }
    const Vector b(f.dm.scalar_q2_count(), 1.0);
    CgOptions opts;
    opts.tol = 1e-10;
    for (auto _ : state) benchmark::DoNotOptimize(cg_solve(A, b, opts));
}
BENCHMARK(BM_CgThermalSystem);

BENCHMARK_MAIN();
