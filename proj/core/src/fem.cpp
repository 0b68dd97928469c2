#include "anisoest/fem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "anisoest/quadrature.hpp"

namespace anisoest {

DiscreteField nodal_interpolant(const std::function<double(double, double)>& g, const Mesh& mesh) {
  DiscreteField out;
  out.mesh = &mesh;
  out.values.resize(mesh.node_count());
  for (int z = 0; z < mesh.node_count(); ++z) out.values[z] = g(mesh.nodes[z].x, mesh.nodes[z].y);
  return out;
}

Vec2 tri_gradient(const Mesh& mesh, const DiscreteField& u, int t) {
  const auto& tri = mesh.tris[t];
  const Vec2 p0 = mesh.nodes[tri[0]], p1 = mesh.nodes[tri[1]], p2 = mesh.nodes[tri[2]];
  const double inv2A = 1.0 / ((p1 - p0).cross(p2 - p0));
  Vec2 g = rot90(p2 - p1) * u.values[tri[0]] + rot90(p0 - p2) * u.values[tri[1]] +
           rot90(p1 - p0) * u.values[tri[2]];
  return g * inv2A;
}

double P2Field::eval(int t, double l0, double l1, double l2) const {
  const auto& tri = mesh->tris[t];
  const auto& te = topo->tri_edges[t];
  const double l[3] = {l0, l1, l2};
  double v = 0.0;
  for (int k = 0; k < 3; ++k) v += node_vals[tri[k]] * l[k] * (2.0 * l[k] - 1.0);
  v += edge_vals[te[0]] * 4.0 * l0 * l1;
  v += edge_vals[te[1]] * 4.0 * l1 * l2;
  v += edge_vals[te[2]] * 4.0 * l2 * l0;
  return v;
}

P2Field quadratic_interpolant(const std::function<double(double, double)>& g, const Mesh& mesh,
                              const Topology& topo) {
  P2Field out;
  out.mesh = &mesh;
  out.topo = &topo;
  out.node_vals.resize(mesh.node_count());
  for (int z = 0; z < mesh.node_count(); ++z)
    out.node_vals[z] = g(mesh.nodes[z].x, mesh.nodes[z].y);
  out.edge_vals.resize(topo.edges.size());
  for (std::size_t e = 0; e < topo.edges.size(); ++e) {
    const Vec2 m = (mesh.nodes[topo.edges[e].a] + mesh.nodes[topo.edges[e].b]) * 0.5;
    out.edge_vals[e] = g(m.x, m.y);
  }
  return out;
}

std::array<std::array<double, 3>, 3> local_stiffness(const Mesh& mesh, int t) {
  const auto& tri = mesh.tris[t];
  const Vec2 p0 = mesh.nodes[tri[0]], p1 = mesh.nodes[tri[1]], p2 = mesh.nodes[tri[2]];
  const double twoA = (p1 - p0).cross(p2 - p0);
  if (!(twoA > 0.0)) throw GeometryError("local_stiffness: degenerate triangle");
  const Vec2 grad[3] = {rot90(p2 - p1) * (1.0 / twoA), rot90(p0 - p2) * (1.0 / twoA),
                        rot90(p1 - p0) * (1.0 / twoA)};
  std::array<std::array<double, 3>, 3> K;
  const double area = 0.5 * twoA;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) K[i][j] = area * grad[i].dot(grad[j]);
  return K;
}

std::array<std::array<double, 3>, 3> local_mass(const Mesh& mesh, int t) {
  const double s = mesh.signed_area(t) / 12.0;
  return {{{2.0 * s, s, s}, {s, 2.0 * s, s}, {s, s, 2.0 * s}}};
}

SparseSym assemble_stiffness(const Mesh& mesh) {
  struct Entry {
    int r, c;
    double v;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(mesh.tri_count()) * 9);
  for (int t = 0; t < mesh.tri_count(); ++t) {
    const auto K = local_stiffness(mesh, t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) entries.push_back({mesh.tris[t][i], mesh.tris[t][j], K[i][j]});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.r != b.r ? a.r < b.r : a.c < b.c;
  });

  SparseSym A;
  A.n = mesh.node_count();
  A.row_ptr.assign(A.n + 1, 0);
  A.col.reserve(entries.size());
  A.val.reserve(entries.size());
  std::size_t k = 0;
  for (int r = 0; r < A.n; ++r) {
    while (k < entries.size() && entries[k].r == r) {
      const int c = entries[k].c;
      double v = 0.0;
      while (k < entries.size() && entries[k].r == r && entries[k].c == c) v += entries[k++].v;
      A.col.push_back(c);
      A.val.push_back(v);
    }
    A.row_ptr[r + 1] = static_cast<int>(A.col.size());
  }
  return A;
}

std::vector<double> assemble_load(const Mesh& mesh, const DiscreteField& fI) {
  std::vector<double> load(mesh.node_count(), 0.0);
  for (int t = 0; t < mesh.tri_count(); ++t) {
    const auto M = local_mass(mesh, t);
    for (int i = 0; i < 3; ++i) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += M[i][j] * fI.values[mesh.tris[t][j]];
      load[mesh.tris[t][i]] += s;
    }
  }
  return load;
}

ReducedSystem reduce_system(const Mesh& mesh, const SparseSym& A_full,
                            const std::vector<double>& load,
                            const std::vector<double>& boundary_values) {
  ReducedSystem red;
  red.interior_of_global.assign(mesh.node_count(), -1);
  for (int z = 0; z < mesh.node_count(); ++z)
    if (!mesh.boundary[z]) {
      red.interior_of_global[z] = static_cast<int>(red.global_of_interior.size());
      red.global_of_interior.push_back(z);
    }
  const int n = static_cast<int>(red.global_of_interior.size());
  red.A.n = n;
  red.A.row_ptr.assign(n + 1, 0);
  red.b.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int g = red.global_of_interior[i];
    double b = load[g];
    for (int k = A_full.row_ptr[g]; k < A_full.row_ptr[g + 1]; ++k) {
      const int c = A_full.col[k];
      if (mesh.boundary[c])
        b -= A_full.val[k] * boundary_values[c];
      else {
        red.A.col.push_back(red.interior_of_global[c]);
        red.A.val.push_back(A_full.val[k]);
      }
    }
    red.b[i] = b;
    red.A.row_ptr[i + 1] = static_cast<int>(red.A.col.size());
  }
  return red;
}

Region strip_region(const Mesh& mesh, int i) {
  if (!mesh.structured) throw std::invalid_argument("strip_region: mesh is not structured");
  if (i < 0 || i > mesh.nx) throw std::invalid_argument("strip_region: index out of range");
  Region r;
  r.kind = Region::Kind::xstrip;
  r.x0 = mesh.grid_x[std::max(0, i - 1)];
  r.x1 = mesh.grid_x[std::min(mesh.nx, i + 1)];
  return r;
}

PoissonSolver::PoissonSolver(const Mesh& mesh) : mesh_(&mesh) {
  A_full_ = assemble_stiffness(mesh);
  // the reduction pattern and matrix do not depend on the data; build with
  // placeholder zeros
  std::vector<double> zeros(mesh.node_count(), 0.0);
  reduced_ = reduce_system(mesh, A_full_, zeros, zeros);
  for (int t = 0; t < mesh.tri_count(); ++t) {
    const double area = mesh.signed_area(t);
    double H = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Vec2 d = mesh.nodes[mesh.tris[t][(k + 1) % 3]] - mesh.nodes[mesh.tris[t][k]];
      H = std::max(H, d.norm());
    }
    max_aspect_ = std::max(max_aspect_, H * H / (2.0 * area));
  }
}

std::pair<DiscreteField, SolveStats> PoissonSolver::solve(const TestProblem& pb,
                                                          SolveOptions opts) const {
  const Mesh& mesh = *mesh_;
  DiscreteField fI = nodal_interpolant(pb.f, mesh);
  std::vector<double> load = assemble_load(mesh, fI);
  std::vector<double> g(mesh.node_count(), 0.0);
  for (int z = 0; z < mesh.node_count(); ++z)
    if (mesh.boundary[z]) g[z] = pb.u(mesh.nodes[z].x, mesh.nodes[z].y);

  const int n = unknowns();
  std::vector<double> b(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int gz = reduced_.global_of_interior[i];
    double bi = load[gz];
    for (int k = A_full_.row_ptr[gz]; k < A_full_.row_ptr[gz + 1]; ++k)
      if (mesh.boundary[A_full_.col[k]]) bi -= A_full_.val[k] * g[A_full_.col[k]];
    b[i] = bi;
  }

  SolverMethod method = opts.method;
  if (method == SolverMethod::automatic) {
    const bool big = n > 100000 || (max_aspect_ >= 32.0 && n > 10000);
    method = (big && direct_solver_available()) ? SolverMethod::direct : SolverMethod::pcg;
  }

  std::pair<std::vector<double>, SolveStats> sol;
  if (method == SolverMethod::direct) {
    if (!factor_) factor_ = std::make_unique<DirectFactor>(reduced_.A);
    sol = factor_->solve(b);
  } else {
    sol = pcg_solve(reduced_.A, b, opts.tol, opts.maxit);
  }

  DiscreteField u;
  u.mesh = &mesh;
  u.values = std::move(g);
  for (int i = 0; i < n; ++i) u.values[reduced_.global_of_interior[i]] = sol.first[i];
  return {std::move(u), sol.second};
}

std::pair<DiscreteField, SolveStats> solve_poisson(const Mesh& mesh, const TestProblem& pb,
                                                   SolveOptions opts) {
  return PoissonSolver(mesh).solve(pb, opts);
}

TriNorms compute_tri_norms(const Mesh& mesh, const Topology& topo, const DiscreteField& u_h,
                           const TestProblem& pb, const DiscreteField& fI) {
  const int nt = mesh.tri_count();
  TriNorms out;
  out.err2.resize(nt);
  out.f2.resize(nt);
  out.favg2.resize(nt);
  out.df2.resize(nt);
  out.osc_fI.resize(nt);
  out.osc_f.resize(nt);

  DiscreteField gx = nodal_interpolant(pb.ux, mesh);
  DiscreteField gy = nodal_interpolant(pb.uy, mesh);
  P2Field f2interp = quadratic_interpolant(pb.f, mesh, topo);

  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.tris[t];
    const double area = mesh.signed_area(t);
    const Vec2 gh = tri_gradient(mesh, u_h, t);

    // error against the interpolated exact gradient; integrand quadratic
    double err2 = 0.0;
    for (const auto& q : tri_midpoint_rule) {
      const double l[3] = {q.l0, q.l1, q.l2};
      double ex = -gh.x, ey = -gh.y;
      for (int k = 0; k < 3; ++k) {
        ex += l[k] * gx.values[tri[k]];
        ey += l[k] * gy.values[tri[k]];
      }
      err2 += q.w * (ex * ex + ey * ey);
    }
    out.err2[t] = err2 * area;

    // (f^I)^2 is quadratic as well
    double f2 = 0.0;
    for (const auto& q : tri_midpoint_rule) {
      const double v = q.l0 * fI.values[tri[0]] + q.l1 * fI.values[tri[1]] +
                       q.l2 * fI.values[tri[2]];
      f2 += q.w * v * v;
    }
    out.f2[t] = f2 * area;

    // data resolved through the quadratic interpolant; integrand quartic
    double df2 = 0.0, favg = 0.0;
    for (const auto& q : tri_degree4_rule) {
      const double vq = f2interp.eval(t, q.l0, q.l1, q.l2);
      const double vl = q.l0 * fI.values[tri[0]] + q.l1 * fI.values[tri[1]] +
                        q.l2 * fI.values[tri[2]];
      df2 += q.w * (vq - vl) * (vq - vl);
      favg += q.w * vq;
    }
    out.df2[t] = df2 * area;
    out.favg2[t] = favg * favg * area;

    const double fv[3] = {fI.values[tri[0]], fI.values[tri[1]], fI.values[tri[2]]};
    out.osc_fI[t] = std::max({fv[0], fv[1], fv[2]}) - std::min({fv[0], fv[1], fv[2]});

    // sample f at vertices, edge midpoints and the centroid
    double fmin = fv[0], fmax = fv[0];
    auto take = [&](double v) {
      fmin = std::min(fmin, v);
      fmax = std::max(fmax, v);
    };
    take(fv[1]);
    take(fv[2]);
    const Vec2 p0 = mesh.nodes[tri[0]], p1 = mesh.nodes[tri[1]], p2 = mesh.nodes[tri[2]];
    const Vec2 pts[4] = {(p0 + p1) * 0.5, (p1 + p2) * 0.5, (p2 + p0) * 0.5,
                         (p0 + p1 + p2) * (1.0 / 3.0)};
    for (const Vec2& p : pts) take(pb.f(p.x, p.y));
    out.osc_f[t] = fmax - fmin;
  }
  return out;
}

double energy_error(const Mesh& mesh, const DiscreteField& u_h, const TestProblem& pb,
                    Region region) {
  DiscreteField gx = nodal_interpolant(pb.ux, mesh);
  DiscreteField gy = nodal_interpolant(pb.uy, mesh);
  double total = 0.0;
  for (int t = 0; t < mesh.tri_count(); ++t) {
    const auto& tri = mesh.tris[t];
    if (region.kind != Region::Kind::all) {
      const double cx = (mesh.nodes[tri[0]].x + mesh.nodes[tri[1]].x + mesh.nodes[tri[2]].x) / 3.0;
      if (!region.contains_x(cx)) continue;
    }
    const Vec2 gh = tri_gradient(mesh, u_h, t);
    double err2 = 0.0;
    for (const auto& q : tri_midpoint_rule) {
      const double l[3] = {q.l0, q.l1, q.l2};
      double ex = -gh.x, ey = -gh.y;
      for (int k = 0; k < 3; ++k) {
        ex += l[k] * gx.values[tri[k]];
        ey += l[k] * gy.values[tri[k]];
      }
      err2 += q.w * (ex * ex + ey * ey);
    }
    total += err2 * mesh.signed_area(t);
  }
  return std::sqrt(total);
}

OscNorms weighted_norms(const Mesh& mesh, const GeomTables& geom, const TriNorms& tn,
                        Region region) {
  OscNorms out;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  for (int t = 0; t < mesh.tri_count(); ++t) {
    if (region.kind != Region::Kind::all) {
      const auto& tri = mesh.tris[t];
      const double cx = (mesh.nodes[tri[0]].x + mesh.nodes[tri[1]].x + mesh.nodes[tri[2]].x) / 3.0;
      if (!region.contains_x(cx)) continue;
    }
    const double h = geom.tri_width[t], H = geom.tri_diam[t], area = geom.tri_area[t];
    a += h * h * tn.df2[t];
    b += tn.df2[t];
    c += H * H * tn.osc_fI[t] * tn.osc_fI[t] * area;
    d += H * H * tn.osc_f[t] * tn.osc_f[t] * area;
  }
  out.hT_f_minus_fI = std::sqrt(a);
  out.f_minus_fI = std::sqrt(b);
  out.HT_osc_fI = std::sqrt(c);
  out.HT_osc_f = std::sqrt(d);
  return out;
}

OscNorms weighted_norms(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                        const TestProblem& pb, const DiscreteField& fI, Region region) {
  DiscreteField zero;
  zero.mesh = &mesh;
  zero.values.assign(mesh.node_count(), 0.0);
  return weighted_norms(mesh, geom, compute_tri_norms(mesh, topo, zero, pb, fI), region);
}

void write_field_text(std::ostream& os, const DiscreteField& field) {
  char buf[64];
  for (std::size_t z = 0; z < field.values.size(); ++z) {
    std::snprintf(buf, sizeof buf, "%zu %.17g\n", z, field.values[z]);
    os << buf;
  }
}

}  // namespace anisoest
