#include "anisoest/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace anisoest {

namespace {

std::vector<Vec2> tri_gradients(const Mesh& mesh, const DiscreteField& u) {
  std::vector<Vec2> g(mesh.tri_count());
  for (int t = 0; t < mesh.tri_count(); ++t) g[t] = tri_gradient(mesh, u, t);
  return g;
}

bool edge_in_region(const Mesh& mesh, const Topology& topo, int e, const Region& r) {
  if (r.kind == Region::Kind::all) return true;
  const auto& ed = topo.edges[e];
  return r.contains_x(0.5 * (mesh.nodes[ed.a].x + mesh.nodes[ed.b].x));
}

bool tri_in_region(const Mesh& mesh, int t, const Region& r) {
  if (r.kind == Region::Kind::all) return true;
  const auto& tri = mesh.tris[t];
  return r.contains_x((mesh.nodes[tri[0]].x + mesh.nodes[tri[1]].x + mesh.nodes[tri[2]].x) / 3.0);
}

}  // namespace

EdgeJumps jump_residuals(const Mesh& mesh, const Topology& topo, const DiscreteField& u_h) {
  const std::vector<Vec2> grad = tri_gradients(mesh, u_h);
  EdgeJumps out;
  out.jump.assign(topo.edges.size(), 0.0);
  for (const Vec2& g : grad) out.grad_scale = std::max(out.grad_scale, g.norm());
  for (std::size_t e = 0; e < topo.edges.size(); ++e) {
    const auto& ed = topo.edges[e];
    if (!ed.interior()) continue;
    const Vec2 nu = topo.normal(mesh, static_cast<int>(e));
    out.jump[e] = nu.dot(grad[ed.left] - grad[ed.right]);
  }
  return out;
}

double normalized_jump(const Mesh& mesh, const Topology& topo, const EdgeJumps& jumps, int e,
                       Vec2 xi) {
  return jumps.jump[e] * topo.normal(mesh, e).dot(xi);
}

double edge_weight(const Topology& topo, const GeomTables& geom, int e, Weight w) {
  if (!topo.edges[e].interior())
    throw std::invalid_argument("edge_weight: boundary edge has no weight");
  return w == Weight::uniform ? 1.0 : geom.edge_len[e] / geom.patch_diam[e];
}

std::vector<std::uint8_t> short_edge_flags(const Topology& topo, const GeomTables& geom,
                                           double c_short) {
  std::vector<std::uint8_t> flags(topo.edges.size(), 0);
  for (std::size_t e = 0; e < topo.edges.size(); ++e)
    if (topo.edges[e].interior() && geom.edge_len[e] < c_short * geom.patch_diam[e]) flags[e] = 1;
  return flags;
}

double LowerEstimate::value() const { return std::sqrt(jump2 + vol2); }
double UpperEstimate::value() const { return std::sqrt(jump2 + vol2 + df2 + osc2); }

LowerEstimate lower_estimator(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                              const EdgeJumps& jumps, const TriNorms& tn, Weight w, Region region,
                              VolumeData vd) {
  LowerEstimate out;
  for (std::size_t e = 0; e < topo.edges.size(); ++e) {
    if (!topo.edges[e].interior()) continue;
    if (!edge_in_region(mesh, topo, static_cast<int>(e), region)) continue;
    out.empty = false;
    const double rho = w == Weight::uniform ? 1.0 : geom.edge_len[e] / geom.patch_diam[e];
    out.jump2 += rho * geom.patch_area[e] * jumps.jump[e] * jumps.jump[e];
  }
  const std::vector<double>& f2 = vd == VolumeData::lagrange ? tn.f2 : tn.favg2;
  for (int t = 0; t < mesh.tri_count(); ++t) {
    if (!tri_in_region(mesh, t, region)) continue;
    out.empty = false;
    out.vol2 += geom.tri_width[t] * geom.tri_width[t] * f2[t];
  }
  return out;
}

double short_edge_estimator(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                            const EdgeJumps& jumps, const std::vector<std::uint8_t>& short_flags,
                            Weight w, Region region) {
  double sum = 0.0;
  for (std::size_t e = 0; e < topo.edges.size(); ++e) {
    if (!short_flags[e]) continue;
    if (!edge_in_region(mesh, topo, static_cast<int>(e), region)) continue;
    const double rho = w == Weight::uniform ? 1.0 : geom.edge_len[e] / geom.patch_diam[e];
    sum += rho * geom.patch_area[e] * jumps.jump[e] * jumps.jump[e];
  }
  return std::sqrt(sum);
}

UpperEstimate upper_estimator(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                              const EdgeJumps& jumps, const TriNorms& tn, UpperKind kind,
                              Region region) {
  UpperEstimate out;
  for (std::size_t e = 0; e < topo.edges.size(); ++e) {
    if (!topo.edges[e].interior()) continue;
    if (!edge_in_region(mesh, topo, static_cast<int>(e), region)) continue;
    out.jump2 += geom.patch_area[e] * jumps.jump[e] * jumps.jump[e];
  }
  for (int t = 0; t < mesh.tri_count(); ++t) {
    if (!tri_in_region(mesh, t, region)) continue;
    const double h = geom.tri_width[t], H = geom.tri_diam[t];
    out.df2 += tn.df2[t];
    if (kind == UpperKind::coarse) {
      out.vol2 += H * H * tn.f2[t];
    } else {
      out.vol2 += h * h * tn.f2[t];
      out.osc2 += H * H * tn.osc_fI[t] * tn.osc_fI[t] * geom.tri_area[t];
    }
  }
  return out;
}

NodeClasses classify_nodes(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                           double c0, double c_uni, double min_angle_deg) {
  const int nn = mesh.node_count();
  NodeClasses out;
  out.anisotropic.assign(nn, 0);
  out.regular.assign(nn, 0);
  out.width_ratio.assign(nn, 0.0);
  out.min_area_ratio.assign(nn, 0.0);

  std::vector<double> tri_min_angle(mesh.tri_count());
  for (int t = 0; t < mesh.tri_count(); ++t) {
    double amin = 4.0;
    for (int k = 0; k < 3; ++k) {
      const Vec2 p = mesh.nodes[mesh.tris[t][k]];
      const Vec2 u = mesh.nodes[mesh.tris[t][(k + 1) % 3]] - p;
      const Vec2 v = mesh.nodes[mesh.tris[t][(k + 2) % 3]] - p;
      amin = std::min(amin, std::atan2(std::abs(u.cross(v)), u.dot(v)));
    }
    tri_min_angle[t] = amin;
  }

  for (int z = 0; z < nn; ++z) {
    int fan = 0;
    for (int k = topo.star_offset[z]; k < topo.star_offset[z + 1]; ++k)
      if (topo.gap_tris[k] >= 0) ++fan;
    out.max_fan = std::max(out.max_fan, fan);
  }
  if (c_uni <= 0.0) c_uni = out.max_fan > 0 ? 1.0 / (2.0 * out.max_fan) : 0.0;
  const double min_angle = min_angle_deg * 3.14159265358979323846 / 180.0;

  for (int z = 0; z < nn; ++z) {
    double min_area = std::numeric_limits<double>::infinity(), min_ang = 4.0;
    bool any = false;
    for (int k = topo.star_offset[z]; k < topo.star_offset[z + 1]; ++k) {
      const int t = topo.gap_tris[k];
      if (t < 0) continue;
      any = true;
      min_area = std::min(min_area, geom.tri_area[t]);
      min_ang = std::min(min_ang, tri_min_angle[t]);
    }
    if (!any) continue;
    out.width_ratio[z] = geom.node_diam[z] > 0.0 ? geom.node_width[z] / geom.node_diam[z] : 0.0;
    out.min_area_ratio[z] = geom.star_area[z] > 0.0 ? min_area / geom.star_area[z] : 0.0;
    out.anisotropic[z] = out.width_ratio[z] < c0 && out.min_area_ratio[z] >= c_uni ? 1 : 0;
    out.regular[z] = min_ang >= min_angle ? 1 : 0;
  }
  return out;
}

namespace {

int other_node(const Topology::Edge& e, int z) { return e.a == z ? e.b : e.a; }

}  // namespace

std::vector<AnisoPath> extract_paths(const Mesh& mesh, const Topology& topo,
                                     const GeomTables& geom, const NodeClasses& classes,
                                     const std::vector<std::uint8_t>& short_flags,
                                     double kappa_H) {
  const int ne = static_cast<int>(topo.edges.size());
  std::vector<std::uint8_t> eligible(ne, 0);
  for (int e = 0; e < ne; ++e)
    eligible[e] = short_flags[e] && classes.anisotropic[topo.edges[e].a] &&
                  classes.anisotropic[topo.edges[e].b];

  std::vector<int> degree(mesh.node_count(), 0);
  for (int e = 0; e < ne; ++e)
    if (eligible[e]) {
      ++degree[topo.edges[e].a];
      ++degree[topo.edges[e].b];
    }

  auto scale_jump = [&](int za, int zb) {
    const double a = geom.node_diam[za], b = geom.node_diam[zb];
    return std::max(a, b) > kappa_H * std::min(a, b);
  };
  auto next_edge = [&](int z, int incoming) {
    if (degree[z] != 2) return -1;  // chain must pass straight through
    for (int k = topo.star_offset[z]; k < topo.star_offset[z + 1]; ++k) {
      const int e = topo.star_edges[k];
      if (e != incoming && eligible[e]) return e;
    }
    return -1;
  };

  std::vector<std::uint8_t> visited(ne, 0);
  std::vector<AnisoPath> paths;
  for (int seed = 0; seed < ne; ++seed) {
    if (!eligible[seed] || visited[seed]) continue;
    std::vector<int> chain_edges = {seed};
    visited[seed] = 1;
    int head = topo.edges[seed].a, tail = topo.edges[seed].b;
    // grow forward from tail, then backward from head
    for (int pass = 0; pass < 2; ++pass) {
      int z = pass == 0 ? tail : head;
      int via = pass == 0 ? chain_edges.back() : chain_edges.front();
      while (true) {
        const int e = next_edge(z, via);
        if (e < 0 || visited[e]) break;
        const int z2 = other_node(topo.edges[e], z);
        if (scale_jump(z, z2)) break;
        visited[e] = 1;
        if (pass == 0)
          chain_edges.push_back(e);
        else
          chain_edges.insert(chain_edges.begin(), e);
        via = e;
        z = z2;
        if (z == (pass == 0 ? head : tail)) break;  // closed loop
      }
      if (pass == 0) tail = z; else head = z;
    }

    AnisoPath p;
    p.edges = chain_edges;
    p.nodes.push_back(head);
    int z = head;
    for (int e : chain_edges) {
      z = other_node(topo.edges[e], z);
      p.nodes.push_back(z);
    }
    p.end0_boundary = mesh.boundary[p.nodes.front()] != 0;
    p.end1_boundary = mesh.boundary[p.nodes.back()] != 0;

    std::vector<double> H;
    H.reserve(p.nodes.size());
    for (int n : p.nodes) H.push_back(geom.node_diam[n]);
    std::sort(H.begin(), H.end());
    p.H_P = H[H.size() / 2];

    // fitted frame: eta along the chain (principal axis), xi across it
    double mx = 0.0, my = 0.0;
    for (int n : p.nodes) {
      mx += mesh.nodes[n].x;
      my += mesh.nodes[n].y;
    }
    mx /= p.nodes.size();
    my /= p.nodes.size();
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int n : p.nodes) {
      const double dx = mesh.nodes[n].x - mx, dy = mesh.nodes[n].y - my;
      sxx += dx * dx;
      sxy += dx * dy;
      syy += dy * dy;
    }
    const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    Vec2 eta{std::cos(theta), std::sin(theta)};
    if (eta.y < 0.0 || (eta.y == 0.0 && eta.x < 0.0)) eta = eta * -1.0;
    p.eta_axis = eta;
    p.xi_axis = rot90(eta);
    paths.push_back(std::move(p));
  }
  return paths;
}

VertexIdentity vertex_identity_residual(const Mesh& mesh, const Topology& topo,
                                        const DiscreteField& u_h, bool extended_by_zero) {
  const std::vector<Vec2> grad = tri_gradients(mesh, u_h);
  VertexIdentity out;
  for (const Vec2& g : grad) out.grad_scale = std::max(out.grad_scale, g.norm());

  for (int z = 0; z < mesh.node_count(); ++z) {
    if (mesh.boundary[z] && !extended_by_zero) continue;
    const int lo = topo.star_offset[z], m = topo.star_size(z);
    if (!mesh.boundary[z] && !topo.star_closed[z])
      throw TopologyError("vertex_identity_residual: open fan at interior node");
    Vec2 sum{0.0, 0.0};
    for (int k = 0; k < m; ++k) {
      const int t_after = topo.gap_tris[lo + k];
      const int t_before = topo.gap_tris[lo + (k + m - 1) % m];
      const Vec2 ga = t_after >= 0 ? grad[t_after] : Vec2{0.0, 0.0};
      const Vec2 gb = t_before >= 0 ? grad[t_before] : Vec2{0.0, 0.0};
      sum = sum + (ga - gb);
    }
    const double r = sum.norm();
    if (r > out.max_residual) {
      out.max_residual = r;
      out.argmax_node = z;
    }
  }
  return out;
}

namespace {

JumpDiffReport jump_diff_impl(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                              const EdgeJumps& jumps, const std::vector<int>& path_nodes,
                              const std::vector<int>& path_edges, Vec2 xi) {
  JumpDiffReport out;
  out.grad_scale = jumps.grad_scale;
  const double zero_thresh = 1e-12 * out.grad_scale;

  std::vector<std::uint8_t> on_path(topo.edges.size(), 0);
  for (int e : path_edges) on_path[e] = 1;

  for (std::size_t p = 0; p < path_nodes.size(); ++p) {
    const int z = path_nodes[p];
    const bool endpoint = p == 0 || p + 1 == path_nodes.size();
    const bool on_bdy = mesh.boundary[z] != 0;
    if (endpoint && !on_bdy) continue;  // interior chain endpoints are not covered

    // The gradient jump of a continuous P1 field across an interior edge is
    // J_S nu_S; the anticlockwise crossing about z fixes its sign.
    const int lo = topo.star_offset[z], m = topo.star_size(z);
    double numer = 0.0, denom_sum = 0.0;
    for (int k = 0; k < m; ++k) {
      const int e = topo.star_edges[lo + k];
      const auto& ed = topo.edges[e];
      if (!ed.interior()) continue;
      if (on_path[e]) {
        const int t_after = topo.gap_tris[lo + k];
        const double sign = t_after == ed.left ? 1.0 : -1.0;
        numer += sign * jumps.jump[e] * topo.normal(mesh, static_cast<int>(e)).dot(xi);
      } else {
        denom_sum += std::abs(jumps.jump[e]);
      }
    }

    JumpDiffEntry entry;
    entry.node = z;
    entry.boundary = on_bdy;
    entry.numer = std::abs(numer);
    entry.denom = geom.node_diam[z] > 0.0
                      ? geom.node_width[z] / geom.node_diam[z] * denom_sum
                      : 0.0;
    entry.denom_zero = entry.denom <= zero_thresh;
    if (entry.denom_zero) {
      ++out.zero_denom;
      out.max_zero_numer = std::max(out.max_zero_numer, entry.numer);
    } else {
      entry.ratio = entry.numer / entry.denom;
      ++out.healthy;
      if (!entry.boundary) out.max_ratio = std::max(out.max_ratio, entry.ratio);
    }
    out.entries.push_back(entry);
  }
  return out;
}

}  // namespace

JumpDiffReport jump_difference_check(const Mesh& mesh, const Topology& topo,
                                     const GeomTables& geom, const EdgeJumps& jumps,
                                     const AnisoPath& path) {
  return jump_diff_impl(mesh, topo, geom, jumps, path.nodes, path.edges, path.xi_axis);
}

JumpDiffReport jump_difference_check_line(const Mesh& mesh, const Topology& topo,
                                          const GeomTables& geom, const EdgeJumps& jumps, int i) {
  if (!mesh.structured)
    throw std::invalid_argument("jump_difference_check_line: mesh is not structured");
  if (i < 0 || i > mesh.nx)
    throw std::invalid_argument("jump_difference_check_line: line index out of range");
  std::vector<int> nodes, edges;
  for (int j = 0; j <= mesh.ny; ++j) nodes.push_back(mesh.structured_node(i, j));
  for (int j = 0; j < mesh.ny; ++j) {
    const int a = nodes[j], b = nodes[j + 1];
    int found = -1;
    for (int k = topo.star_offset[a]; k < topo.star_offset[a + 1]; ++k) {
      const int e = topo.star_edges[k];
      if (other_node(topo.edges[e], a) == b) found = e;
    }
    if (found < 0) throw TopologyError("jump_difference_check_line: broken grid line");
    edges.push_back(found);
  }
  return jump_diff_impl(mesh, topo, geom, jumps, nodes, edges, Vec2{1.0, 0.0});
}

BubbleBoundReport bubble_bound_check(const Mesh& mesh, const Topology& topo,
                                     const GeomTables& geom, const EdgeJumps& jumps,
                                     const TriNorms& tn, Weight lhs_weight) {
  BubbleBoundReport out;
  // Quantities below 1e-12 of the gradient scale are solver noise; entities
  // where both sides sit there are skipped rather than divided.
  const double noise = 1e-12 * jumps.grad_scale;
  for (int t = 0; t < mesh.tri_count(); ++t) {
    const double lhs = geom.tri_width[t] * std::sqrt(tn.f2[t]);
    const double rhs = std::sqrt(tn.err2[t]) + geom.tri_width[t] * std::sqrt(tn.df2[t]);
    const double floor = noise * std::sqrt(geom.tri_area[t]);
    if (rhs <= floor) {
      if (lhs > floor) ++out.anomalies;
      continue;
    }
    if (lhs / rhs > out.C_f) {
      out.C_f = lhs / rhs;
      out.argmax_tri = t;
    }
  }
  for (std::size_t e = 0; e < topo.edges.size(); ++e) {
    const auto& ed = topo.edges[e];
    if (!ed.interior()) continue;
    const double rho =
        lhs_weight == Weight::uniform ? 1.0 : geom.edge_len[e] / geom.patch_diam[e];
    const double lhs = rho * geom.patch_area[e] * jumps.jump[e] * jumps.jump[e];
    double rhs = 0.0;
    for (int t : {ed.left, ed.right})
      rhs += tn.err2[t] + geom.tri_width[t] * geom.tri_width[t] * tn.df2[t];
    const double floor = noise * noise * geom.patch_area[e];
    if (rhs <= floor) {
      if (lhs > floor) ++out.anomalies;
      continue;
    }
    if (lhs / rhs > out.C_J) {
      out.C_J = lhs / rhs;
      out.argmax_edge = static_cast<int>(e);
    }
  }
  return out;
}

EstimatorReport estimator_report(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                                 const EdgeJumps& jumps, const TriNorms& tn,
                                 const std::vector<std::uint8_t>& short_flags, Region region,
                                 const std::string& label, const EstimatorOptions& opts) {
  EstimatorReport rep;
  rep.region = label;

  const LowerEstimate lb =
      lower_estimator(mesh, topo, geom, jumps, tn, Weight::bubble, region, opts.volume_data);
  const LowerEstimate lu =
      lower_estimator(mesh, topo, geom, jumps, tn, Weight::uniform, region, opts.volume_data);
  rep.empty = lb.empty;
  rep.jump2_bubble = lb.jump2;
  rep.jump2_uniform = lu.jump2;
  rep.vol2 = lu.vol2;
  rep.E_bubble = lb.value();
  rep.E_uniform = lu.value();
  rep.E0_bubble =
      short_edge_estimator(mesh, topo, geom, jumps, short_flags, Weight::bubble, region);
  rep.E0_uniform =
      short_edge_estimator(mesh, topo, geom, jumps, short_flags, Weight::uniform, region);

  double err2 = 0.0, osc2 = 0.0;
  for (int t = 0; t < mesh.tri_count(); ++t) {
    if (!tri_in_region(mesh, t, region)) continue;
    err2 += tn.err2[t];
    osc2 += geom.tri_diam[t] * geom.tri_diam[t] * tn.osc_f[t] * tn.osc_f[t] * geom.tri_area[t];
  }
  rep.error = std::sqrt(err2);
  rep.Y = rep.error + std::sqrt(osc2);

  rep.upper_coarse = upper_estimator(mesh, topo, geom, jumps, tn, UpperKind::coarse, region).value();
  rep.upper_sharp = upper_estimator(mesh, topo, geom, jumps, tn, UpperKind::sharp, region).value();

  rep.eff_bubble = rep.error > 0.0 ? rep.E_bubble / rep.error : 0.0;
  rep.eff_uniform = rep.error > 0.0 ? rep.E_uniform / rep.error : 0.0;
  rep.ratio_bubble = rep.E_bubble > 0.0 ? rep.E0_bubble / rep.E_bubble : 0.0;
  rep.ratio_uniform = rep.E_uniform > 0.0 ? rep.E0_uniform / rep.E_uniform : 0.0;
  return rep;
}

}  // namespace anisoest
