#include <benchmark/benchmark.h>

#include "anisoest/estimator.hpp"
#include "anisoest/problems.hpp"

using namespace anisoest;

namespace {

struct Fixture {
  Mesh mesh;
  Topology topo;
  GeomTables geom;
  TestProblem pb;
  DiscreteField u_h;
  DiscreteField fI;
  EdgeJumps jumps;
  TriNorms tn;
  std::vector<std::uint8_t> shorts;

  explicit Fixture(int N, int M) {
    pb = make_problem(TestProblem::Id::sine, 1.0);
    mesh = build_tensor_mesh(build_grid_1d(GridKind::uniform, N, 1.0),
                             build_grid_1d(GridKind::uniform, M, 1.0));
    topo = compute_topology(mesh);
    geom = compute_geometry(mesh, topo);
    u_h = solve_poisson(mesh, pb).first;
    fI = nodal_interpolant(pb.f, mesh);
    jumps = jump_residuals(mesh, topo, u_h);
    tn = compute_tri_norms(mesh, topo, u_h, pb, fI);
    shorts = short_edge_flags(topo, geom);
  }
};

const Fixture& fixture() {
  static Fixture f(64, 256);
  return f;
}

}  // namespace

static void BM_topology(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(compute_topology(f.mesh));
}
BENCHMARK(BM_topology)->Unit(benchmark::kMillisecond);

static void BM_assemble_stiffness(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(assemble_stiffness(f.mesh));
}
BENCHMARK(BM_assemble_stiffness)->Unit(benchmark::kMillisecond);

static void BM_pcg_solve(benchmark::State& state) {
  const Fixture& f = fixture();
  const PoissonSolver solver(f.mesh);
  SolveOptions opts;
  opts.method = SolverMethod::pcg;
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(f.pb, opts));
}
BENCHMARK(BM_pcg_solve)->Unit(benchmark::kMillisecond);

static void BM_jump_residuals(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(jump_residuals(f.mesh, f.topo, f.u_h));
}
BENCHMARK(BM_jump_residuals)->Unit(benchmark::kMillisecond);

static void BM_tri_norms(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_tri_norms(f.mesh, f.topo, f.u_h, f.pb, f.fI));
}
BENCHMARK(BM_tri_norms)->Unit(benchmark::kMillisecond);

static void BM_estimator_report(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        estimator_report(f.mesh, f.topo, f.geom, f.jumps, f.tn, f.shorts));
}
BENCHMARK(BM_estimator_report)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
