#include "anisoest/experiments.hpp"

#include <cstdlib>
#include <future>
#include <stdexcept>
#include <thread>

namespace anisoest {

CaseReport run_case(const TestProblem& pb, int N, int M, const RunOptions& opts) {
  if (N < 1 || M < 1) throw std::invalid_argument("run_case: N and M must be >= 1");
  const Grid1D gx = build_grid_1d(GridKind::uniform, N, pb.Lx);
  const Grid1D gy = build_grid_1d(GridKind::scaled, M, pb.Ly);
  const Mesh mesh = build_tensor_mesh(gx, gy, opts.diagonal);
  const Topology topo = compute_topology(mesh);
  const GeomTables geom = compute_geometry(mesh, topo);

  const PoissonSolver solver(mesh);
  auto [u_h, stats] = solver.solve(pb, opts.solve);

  const DiscreteField fI = nodal_interpolant(pb.f, mesh);
  const TriNorms tn = compute_tri_norms(mesh, topo, u_h, pb, fI);
  const EdgeJumps jumps = jump_residuals(mesh, topo, u_h);
  const std::vector<std::uint8_t> shorts = short_edge_flags(topo, geom, opts.est.c_short);

  CaseReport rep;
  rep.problem = pb.name;
  rep.param = pb.id == TestProblem::Id::sine ? pb.a : pb.eps;
  rep.N = N;
  rep.M = M;
  rep.stats = stats;
  rep.global = estimator_report(mesh, topo, geom, jumps, tn, shorts, {}, "all", opts.est);
  rep.error = rep.global.error;
  rep.osc = weighted_norms(mesh, geom, tn);

  if (opts.with_strips && mesh.structured) {
    rep.strips.reserve(N + 1);
    for (int i = 0; i <= N; ++i)
      rep.strips.push_back(estimator_report(mesh, topo, geom, jumps, tn, shorts,
                                            strip_region(mesh, i), "strip_" + std::to_string(i),
                                            opts.est));
  }
  return rep;
}

const EstimatorReport& strip_report(const CaseReport& rep, int i) {
  if (i < 0 || i >= static_cast<int>(rep.strips.size()))
    throw std::invalid_argument("strip_report: strip index out of range");
  return rep.strips[i];
}

namespace {

int worker_count() {
  if (const char* env = std::getenv("ANISOBENCH_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

TableReport reproduce_table(int id, TableScale scale, const RunOptions& opts) {
  TableReport table;
  table.id = id;
  table.scale = scale;

  struct Job {
    TestProblem pb;
    int N, M;
  };
  std::vector<Job> jobs;
  switch (id) {
    case 1:
      for (int mn : {2, 8, 32, 128})
        for (double a : {1.0, 3.0})
          for (int N : {20, 40, 80}) {
            if (scale == TableScale::desk && mn == 128 && N == 80) continue;
            jobs.push_back({make_problem(TestProblem::Id::sine, a), N, mn * N});
          }
      break;
    case 2:
      for (double eps : {0.25, 0.125, 0.0625})
        for (int N : {320, 640})
          jobs.push_back({make_problem(TestProblem::Id::layer, eps), N, 2 * N});
      break;
    case 3:
      for (double eps : {1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0})
        for (int N : {160, 320, 640})
          jobs.push_back({make_problem(TestProblem::Id::oblique, eps), N, N});
      break;
    default:
      throw std::invalid_argument("reproduce_table: id must be 1, 2 or 3");
  }

  table.rows.resize(jobs.size());
  const int workers = worker_count();
  std::size_t next = 0;
  while (next < jobs.size()) {
    std::vector<std::pair<std::size_t, std::future<CaseReport>>> batch;
    for (int w = 0; w < workers && next < jobs.size(); ++w, ++next) {
      const std::size_t k = next;
      batch.emplace_back(k, std::async(std::launch::async, [&jobs, k, &opts] {
                           return run_case(jobs[k].pb, jobs[k].N, jobs[k].M, opts);
                         }));
    }
    for (auto& [k, fut] : batch) {
      TableRow& row = table.rows[k];
      row.rep = fut.get();
      row.problem = row.rep.problem;
      row.param = row.rep.param;
      row.N = row.rep.N;
      row.M = row.rep.M;
    }
  }
  return table;
}

}  // namespace anisoest
