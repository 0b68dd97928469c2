// Benchmark CLI: solve single cases, reproduce the benchmark tables, run the
// verification suites, dump meshes.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "anisoest/experiments.hpp"
#include "anisoest/format.hpp"

using namespace anisoest;

namespace {

constexpr int kExitBadUsage = 1;
constexpr int kExitNumerical = 2;

struct ProblemArgs {
  std::string problem = "sine";
  double a = 1.0;
  double eps = 0.25;

  TestProblem make() const { return make_problem(problem, problem == "sine" ? a : eps); }
};

SolverMethod parse_method(const std::string& s) {
  if (s == "pcg") return SolverMethod::pcg;
  if (s == "direct") return SolverMethod::direct;
  return SolverMethod::automatic;
}

int cmd_solve(const ProblemArgs& pa, int nx, int ny, const std::string& estimator,
              const std::string& solver, double tol, int maxit, double c_short,
              const std::string& volume_data, const std::string& format, const std::string& out,
              bool strips) {
  RunOptions opts;
  opts.solve.tol = tol;
  opts.solve.maxit = maxit;
  opts.solve.method = parse_method(solver);
  opts.est.c_short = c_short;
  opts.est.volume_data =
      volume_data == "avg" ? VolumeData::element_average : VolumeData::lagrange;
  opts.with_strips = strips;

  const TestProblem pb = pa.make();
  const CaseReport rep = run_case(pb, nx, ny, opts);

  std::ostringstream body;
  if (format == "csv") {
    std::vector<EstimatorReport> reports = {rep.global};
    for (const auto& s : rep.strips) reports.push_back(s);
    write_reports_csv(body, reports);
  } else {
    body << case_markdown(rep);
    if (estimator == "bubble")
      body << "error " << sci3(rep.error) << "  E " << sci3(rep.global.E_bubble) << "  eff "
           << fixed2(rep.global.eff_bubble) << "\n";
    else if (estimator == "uniform")
      body << "error " << sci3(rep.error) << "  E " << sci3(rep.global.E_uniform) << "  eff "
           << fixed2(rep.global.eff_uniform) << "\n";
    if (strips) {
      body << "strip reports:\n";
      std::ostringstream strip_csv;
      write_reports_csv(strip_csv, rep.strips);
      body << strip_csv.str();
    }
  }
  if (out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot open output file " << out << "\n";
      return kExitBadUsage;
    }
    f << body.str();
  }
  return 0;
}

int cmd_table(int id, const std::string& scale, const std::string& out_dir,
              const std::string& solver, double tol) {
  RunOptions opts;
  opts.solve.tol = tol;
  opts.solve.method = parse_method(solver);
  const TableScale ts = scale == "full" ? TableScale::full : TableScale::desk;
  const TableReport table = reproduce_table(id, ts, opts);

  const std::string path =
      out_dir + "/table" + std::to_string(id) + "_" + scale + ".csv";
  std::ofstream f(path);
  if (!f) {
    std::cerr << "cannot open output file " << path << "\n";
    return kExitBadUsage;
  }
  write_table_csv(f, table);
  std::cout << table_markdown(table);
  std::cout << "wrote " << path << "\n";
  return 0;
}

struct CaseData {
  Mesh mesh;
  Topology topo;
  GeomTables geom;
  DiscreteField u_h;
  EdgeJumps jumps;
  TriNorms tn;
};

CaseData prepare_case(const TestProblem& pb, int nx, int ny, SolveOptions sopts) {
  CaseData d;
  d.mesh = build_tensor_mesh(build_grid_1d(GridKind::uniform, nx, pb.Lx),
                             build_grid_1d(GridKind::scaled, ny, pb.Ly));
  d.topo = compute_topology(d.mesh);
  d.geom = compute_geometry(d.mesh, d.topo);
  d.u_h = PoissonSolver(d.mesh).solve(pb, sopts).first;
  d.jumps = jump_residuals(d.mesh, d.topo, d.u_h);
  d.tn = compute_tri_norms(d.mesh, d.topo, d.u_h, pb, nodal_interpolant(pb.f, d.mesh));
  return d;
}

int cmd_verify_identities(const ProblemArgs& pa, int nx, int ny, SolveOptions sopts) {
  const TestProblem pb = pa.make();
  const CaseData d = prepare_case(pb, nx, ny, sopts);
  const VertexIdentity v = vertex_identity_residual(d.mesh, d.topo, d.u_h);
  bool ok = v.max_residual < 1e-12 * v.grad_scale;
  std::cout << "solved field: max vertex residual " << sci3(v.max_residual) << " (scale "
            << sci3(v.grad_scale) << "): " << (ok ? "PASS" : "FAIL") << " (< 1e-12 * scale)\n";

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double worst = 0.0;
  for (int r = 0; r < 100; ++r) {
    DiscreteField f;
    f.mesh = &d.mesh;
    f.values.resize(d.mesh.node_count());
    for (double& x : f.values) x = uni(rng);
    const VertexIdentity vr = vertex_identity_residual(d.mesh, d.topo, f);
    worst = std::max(worst, vr.max_residual / vr.grad_scale);
  }
  const bool ok_r = worst < 1e-12;
  std::cout << "100 random fields: max vertex residual / scale " << sci3(worst) << ": "
            << (ok_r ? "PASS" : "FAIL") << " (< 1e-12)\n";
  return ok && ok_r ? 0 : kExitNumerical;
}

int cmd_verify_bubble(const ProblemArgs& pa, int nx, int ny, SolveOptions sopts) {
  const int mn = ny > 0 && nx > 0 ? std::max(1, ny / nx) : 2;
  std::vector<double> cf, cj;
  for (int N : {20, 40, 80}) {
    const TestProblem pb = pa.make();
    const CaseData d = prepare_case(pb, N, mn * N, sopts);
    const BubbleBoundReport r =
        bubble_bound_check(d.mesh, d.topo, d.geom, d.jumps, d.tn, Weight::bubble);
    cf.push_back(r.C_f);
    cj.push_back(r.C_J);
    std::cout << "N " << N << " M/N " << mn << ": C_f " << sci3(r.C_f) << "  C_J " << sci3(r.C_J)
              << (r.anomalies ? "  anomalies " + std::to_string(r.anomalies) : "") << "\n";
  }
  bool ok = true;
  for (std::size_t k = 1; k < cf.size(); ++k)
    ok = ok && cf[k] <= 1.05 * cf[k - 1] && cj[k] <= 1.05 * cj[k - 1];
  std::cout << "fitted constants non-increasing (5% slack): " << (ok ? "PASS" : "FAIL") << "\n";

  std::cout << "uniform-weight variant across M/N:\n";
  std::vector<double> cu;
  for (int m : {2, 8, 32}) {
    const TestProblem pb = pa.make();
    const CaseData d = prepare_case(pb, 20, m * 20, sopts);
    const BubbleBoundReport r =
        bubble_bound_check(d.mesh, d.topo, d.geom, d.jumps, d.tn, Weight::uniform);
    cu.push_back(r.C_J);
    std::cout << "N 20 M/N " << m << ": C_J(uniform) " << sci3(r.C_J) << "\n";
  }
  std::cout << "C_J(uniform) growth M/N 2 -> 32: " << fixed2(cu.back() / cu.front()) << "x\n";
  return ok ? 0 : kExitNumerical;
}

int cmd_verify_strips(const ProblemArgs& pa, int nx, int ny, SolveOptions sopts) {
  const int mn = ny > 0 && nx > 0 ? std::max(1, ny / nx) : 2;
  RunOptions opts;
  opts.solve = sopts;
  opts.with_strips = true;
  std::vector<double> maxima;
  for (int N : {20, 40, 80}) {
    const CaseReport rep = run_case(pa.make(), N, mn * N, opts);
    double mx = 0.0;
    for (int i = 1; i < N; ++i) {
      const EstimatorReport& s = strip_report(rep, i);
      if (s.Y > 0.0) mx = std::max(mx, s.E0_uniform / s.Y);
    }
    maxima.push_back(mx);
    std::cout << "N " << N << " M/N " << mn << ": max_i E0/Y " << sci3(mx)
              << "  (boundary strips E0 " << sci3(strip_report(rep, 0).E0_uniform) << ", "
              << sci3(strip_report(rep, N).E0_uniform) << ")\n";
  }
  const double lo = *std::min_element(maxima.begin(), maxima.end());
  const double hi = *std::max_element(maxima.begin(), maxima.end());
  const bool ok = lo > 0.0 && hi / lo < 1.2;
  std::cout << "max_i E0/Y spread across N: " << fixed2(hi / lo) << "x: " << (ok ? "PASS" : "FAIL")
            << " (< 1.2x)\n";
  return ok ? 0 : kExitNumerical;
}

int cmd_verify_paths(const ProblemArgs& pa, int nx, int ny, SolveOptions sopts) {
  const TestProblem pb = pa.make();
  const CaseData d = prepare_case(pb, nx, ny, sopts);
  const NodeClasses classes = classify_nodes(d.mesh, d.topo, d.geom);
  const auto shorts = short_edge_flags(d.topo, d.geom);
  const auto paths = extract_paths(d.mesh, d.topo, d.geom, classes, shorts);

  bool ok = static_cast<int>(paths.size()) == nx - 1;
  for (const auto& p : paths) {
    ok = ok && static_cast<int>(p.nodes.size()) == ny + 1 && p.end0_boundary && p.end1_boundary;
  }
  std::cout << "paths " << paths.size() << " (expected " << nx - 1 << "), interior nodes per path "
            << (paths.empty() ? 0 : static_cast<int>(paths[0].nodes.size()) - 2) << " (expected "
            << ny - 1 << "): " << (ok ? "PASS" : "FAIL") << "\n";

  double max_ratio = 0.0, max_zero = 0.0;
  for (const auto& p : paths) {
    const JumpDiffReport r = jump_difference_check(d.mesh, d.topo, d.geom, d.jumps, p);
    max_ratio = std::max(max_ratio, r.max_ratio);
    max_zero = std::max(max_zero, r.max_zero_numer);
  }
  std::cout << "jump-difference max ratio " << sci3(max_ratio)
            << "  max numerator at zero denominators " << sci3(max_zero) << " (scale "
            << sci3(d.jumps.grad_scale) << ")\n";
  return ok ? 0 : kExitNumerical;
}

int cmd_mesh(int nx, int ny, double eps, const std::string& dump) {
  const Mesh mesh = build_tensor_mesh(build_grid_1d(GridKind::uniform, nx, 1.0),
                                      build_grid_1d(GridKind::scaled, ny, eps));
  std::ofstream f(dump);
  if (!f) {
    std::cerr << "cannot open output file " << dump << "\n";
    return kExitBadUsage;
  }
  write_mesh_text(f, mesh);
  std::cout << "wrote " << dump << " (" << mesh.node_count() << " nodes, " << mesh.tri_count()
            << " triangles)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anisotropic lower-estimator benchmarks"};
  app.require_subcommand(1);

  ProblemArgs pa;
  int nx = 20, ny = 40;
  double tol = 1e-10, c_short = 0.5, eps_domain = 1.0;
  int maxit = 0;
  std::string estimator = "both", solver = "auto", format = "md", out, out_dir = ".";
  std::string volume_data = "lagrange", scale = "desk", suite = "identities", dump;
  int table_id = 1;
  bool strips = false;

  auto add_problem_flags = [&](CLI::App* c) {
    c->add_option("--problem", pa.problem, "sine|layer|oblique")
        ->check(CLI::IsMember({"sine", "layer", "oblique"}));
    c->add_option("--a", pa.a, "sine frequency parameter");
    c->add_option("--eps", pa.eps, "layer/oblique parameter");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one case and print its report");
  add_problem_flags(solve);
  solve->add_option("--nx", nx, "cells in x")->required();
  solve->add_option("--ny", ny, "cells in y")->required();
  solve->add_option("--estimator", estimator, "bubble|uniform|both")
      ->check(CLI::IsMember({"bubble", "uniform", "both"}));
  solve->add_option("--solver", solver, "auto|pcg|direct")
      ->check(CLI::IsMember({"auto", "pcg", "direct"}));
  solve->add_option("--tol", tol, "solver tolerance");
  solve->add_option("--maxit", maxit, "iteration cap for the pcg solver");
  solve->add_option("--c-short", c_short, "short-edge threshold");
  solve->add_option("--volume-data", volume_data, "lagrange|avg")
      ->check(CLI::IsMember({"lagrange", "avg"}));
  solve->add_option("--format", format, "md|csv")->check(CLI::IsMember({"md", "csv"}));
  solve->add_option("--out", out, "write the report to a file");
  solve->add_flag("--strips", strips, "include per-strip reports");

  CLI::App* table = app.add_subcommand("table", "reproduce a benchmark table");
  table->add_option("--id", table_id, "table id")->required()->check(CLI::Range(1, 3));
  table->add_option("--scale", scale, "desk|full")->check(CLI::IsMember({"desk", "full"}));
  table->add_option("--out-dir", out_dir, "directory for the CSV output");
  table->add_option("--solver", solver, "auto|pcg|direct")
      ->check(CLI::IsMember({"auto", "pcg", "direct"}));
  table->add_option("--tol", tol, "solver tolerance");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "identities|bubble|strips|paths")
      ->required()
      ->check(CLI::IsMember({"identities", "bubble", "strips", "paths"}));
  add_problem_flags(verify);
  verify->add_option("--nx", nx, "cells in x");
  verify->add_option("--ny", ny, "cells in y");
  verify->add_option("--tol", tol, "solver tolerance");

  CLI::App* meshc = app.add_subcommand("mesh", "build a tensor mesh and dump it");
  meshc->add_option("--nx", nx, "cells in x")->required();
  meshc->add_option("--ny", ny, "cells in y")->required();
  meshc->add_option("--eps", eps_domain, "domain height");
  meshc->add_option("--dump", dump, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadUsage;
  }

  SolveOptions sopts;
  sopts.tol = tol;
  sopts.method = parse_method(solver);

  try {
    if (solve->parsed())
      return cmd_solve(pa, nx, ny, estimator, solver, tol, maxit, c_short, volume_data, format,
                       out, strips);
    if (table->parsed()) return cmd_table(table_id, scale, out_dir, solver, tol);
    if (verify->parsed()) {
      if (suite == "identities") return cmd_verify_identities(pa, nx, ny, sopts);
      if (suite == "bubble") return cmd_verify_bubble(pa, nx, ny, sopts);
      if (suite == "strips") return cmd_verify_strips(pa, nx, ny, sopts);
      return cmd_verify_paths(pa, nx, ny, sopts);
    }
    if (meshc->parsed()) return cmd_mesh(nx, ny, eps_domain, dump);
  } catch (const SolveError& e) {
    std::cerr << "numerical failure: " << e.what() << " (iterations " << e.stats.iterations
              << ", rel residual " << e.stats.rel_residual << ")\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitBadUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitBadUsage;
}
