#include "anisoest/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <unordered_map>

namespace anisoest {

Grid1D::Grid1D(std::vector<double> pts) : points(std::move(pts)) {
  if (points.size() < 2) throw std::invalid_argument("Grid1D: need at least 2 points");
  if (points.front() != 0.0) throw std::invalid_argument("Grid1D: first point must be 0");
  for (std::size_t k = 1; k < points.size(); ++k)
    if (!(points[k] > points[k - 1]))
      throw std::invalid_argument("Grid1D: points must be strictly increasing");
  length = points.back();
}

Grid1D build_grid_1d(GridKind, int n, double L) {
  if (n < 1) throw std::invalid_argument("build_grid_1d: cell count must be >= 1");
  if (!(L > 0.0)) throw std::invalid_argument("build_grid_1d: length must be > 0");
  std::vector<double> pts(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) pts[j] = L * static_cast<double>(j) / n;
  pts[0] = 0.0;
  pts[n] = L;
  return Grid1D(std::move(pts));
}

Mesh build_tensor_mesh(const Grid1D& gx, const Grid1D& gy, Diagonal diag) {
  const int nx = gx.cells(), ny = gy.cells();
  Mesh m;
  m.structured = true;
  m.nx = nx;
  m.ny = ny;
  m.grid_x = gx.points;
  m.grid_y = gy.points;
  m.nodes.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  m.ij.reserve(m.nodes.capacity());
  m.boundary.reserve(m.nodes.capacity());
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      m.nodes.push_back({gx.points[i], gy.points[j]});
      m.ij.push_back({i, j});
      m.boundary.push_back(i == 0 || i == nx || j == 0 || j == ny ? 1 : 0);
    }
  m.tris.reserve(static_cast<std::size_t>(2) * nx * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int ll = m.structured_node(i, j), lr = m.structured_node(i + 1, j);
      const int ul = m.structured_node(i, j + 1), ur = m.structured_node(i + 1, j + 1);
      if (diag == Diagonal::NE) {
        m.tris.push_back({ll, lr, ur});
        m.tris.push_back({ll, ur, ul});
      } else {
        m.tris.push_back({ll, lr, ul});
        m.tris.push_back({lr, ur, ul});
      }
    }
  return m;
}

namespace {

std::int64_t edge_key(int a, int b) {
  return (static_cast<std::int64_t>(a) << 32) | static_cast<std::int64_t>(b);
}

}  // namespace

Topology compute_topology(const Mesh& mesh) {
  const int nn = mesh.node_count(), nt = mesh.tri_count();
  for (int t = 0; t < nt; ++t)
    if (!(mesh.signed_area(t) > 0.0))
      throw TopologyError("compute_topology: triangle " + std::to_string(t) +
                          " is degenerate or clockwise");

  Topology topo;
  topo.tri_edges.assign(nt, {-1, -1, -1});
  std::unordered_map<std::int64_t, int> ids;
  ids.reserve(static_cast<std::size_t>(nt) * 2);

  for (int t = 0; t < nt; ++t) {
    for (int k = 0; k < 3; ++k) {
      int a = mesh.tris[t][k], b = mesh.tris[t][(k + 1) % 3];
      if (a > b) std::swap(a, b);
      auto [it, fresh] = ids.try_emplace(edge_key(a, b), static_cast<int>(topo.edges.size()));
      if (fresh) topo.edges.push_back({a, b, -1, -1});
      Topology::Edge& e = topo.edges[it->second];
      // The third vertex decides the side: normal (t.y,-t.x) points right of a->b.
      const int c = mesh.tris[t][(k + 2) % 3];
      const Vec2 d = mesh.nodes[e.b] - mesh.nodes[e.a];
      const double side = d.cross(mesh.nodes[c] - mesh.nodes[e.a]);
      int& slot = side > 0.0 ? e.left : e.right;
      if (slot >= 0)
        throw TopologyError("compute_topology: edge shared by more than 2 triangles");
      slot = t;
      topo.tri_edges[t][k] = it->second;
    }
  }

  for (const auto& e : topo.edges)
    if (e.interior()) ++topo.interior_edge_count;

  // Node stars: incident edges sorted by angle, triangles matched to gaps.
  std::vector<int> deg(nn, 0);
  for (const auto& e : topo.edges) {
    ++deg[e.a];
    ++deg[e.b];
  }
  topo.star_offset.assign(nn + 1, 0);
  for (int z = 0; z < nn; ++z) topo.star_offset[z + 1] = topo.star_offset[z] + deg[z];
  topo.star_edges.assign(topo.star_offset[nn], -1);
  {
    std::vector<int> fill(topo.star_offset.begin(), topo.star_offset.end() - 1);
    for (int e = 0; e < static_cast<int>(topo.edges.size()); ++e) {
      topo.star_edges[fill[topo.edges[e].a]++] = e;
      topo.star_edges[fill[topo.edges[e].b]++] = e;
    }
  }
  topo.gap_tris.assign(topo.star_offset[nn], -1);
  topo.star_closed.assign(nn, 0);

  std::vector<double> angle;
  for (int z = 0; z < nn; ++z) {
    const int lo = topo.star_offset[z], hi = topo.star_offset[z + 1];
    const int m = hi - lo;
    angle.resize(m);
    for (int k = 0; k < m; ++k) {
      const Topology::Edge& e = topo.edges[topo.star_edges[lo + k]];
      const int other = e.a == z ? e.b : e.a;
      const Vec2 d = mesh.nodes[other] - mesh.nodes[z];
      double th = std::atan2(d.y, d.x);
      if (th < 0.0) th += 2.0 * 3.14159265358979323846;
      angle[k] = th;
    }
    std::vector<int> order(m);
    for (int k = 0; k < m; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](int p, int q) { return angle[p] < angle[q]; });
    std::vector<int> sorted(m);
    for (int k = 0; k < m; ++k) sorted[k] = topo.star_edges[lo + order[k]];
    for (int k = 0; k < m; ++k) topo.star_edges[lo + k] = sorted[k];

    std::vector<double> sorted_angle(m);
    for (int k = 0; k < m; ++k) sorted_angle[k] = angle[order[k]];

    // A triangle at z lies strictly inside one anticlockwise gap between
    // consecutive star edges; locate it by its centroid direction.
    const double two_pi = 2.0 * 3.14159265358979323846;
    auto ccw_span = [&](double from, double to) {
      double s = to - from;
      if (s <= 0.0) s += two_pi;
      return s;
    };
    int filled = 0;
    for (int k = 0; k < m; ++k) {
      const int e = topo.star_edges[lo + k];
      for (int t : {topo.edges[e].left, topo.edges[e].right}) {
        if (t < 0) continue;
        const Vec2 c = (mesh.nodes[mesh.tris[t][0]] + mesh.nodes[mesh.tris[t][1]] +
                        mesh.nodes[mesh.tris[t][2]]) *
                       (1.0 / 3.0);
        const Vec2 d = c - mesh.nodes[z];
        double th = std::atan2(d.y, d.x);
        if (th < 0.0) th += two_pi;
        for (int g = 0; g < m; ++g) {
          const double span = ccw_span(sorted_angle[g], sorted_angle[(g + 1) % m]);
          if (ccw_span(sorted_angle[g], th) < span) {
            if (topo.gap_tris[lo + g] < 0) {
              topo.gap_tris[lo + g] = t;
              ++filled;
            }
            break;
          }
        }
      }
    }
    if (!mesh.boundary[z]) {
      if (filled != m)
        throw TopologyError("compute_topology: open fan at interior node " + std::to_string(z));
      topo.star_closed[z] = 1;
    } else {
      if (filled != m - 1)
        throw TopologyError("compute_topology: boundary node " + std::to_string(z) +
                            " star is not a single open chain");
    }
  }
  return topo;
}

GeomTables compute_geometry(const Mesh& mesh, const Topology& topo) {
  const int nn = mesh.node_count(), nt = mesh.tri_count();
  const int ne = static_cast<int>(topo.edges.size());
  GeomTables g;
  g.tri_area.resize(nt);
  g.tri_diam.resize(nt);
  g.tri_width.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const double area = mesh.signed_area(t);
    if (!(area > 0.0)) throw GeometryError("compute_geometry: degenerate triangle");
    double H = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Vec2 d = mesh.nodes[mesh.tris[t][(k + 1) % 3]] - mesh.nodes[mesh.tris[t][k]];
      H = std::max(H, d.norm());
    }
    g.tri_area[t] = area;
    g.tri_diam[t] = H;
    g.tri_width[t] = 2.0 * area / H;
  }

  g.edge_len.resize(ne);
  g.patch_area.assign(ne, 0.0);
  g.patch_diam.assign(ne, 0.0);
  for (int e = 0; e < ne; ++e) {
    const auto& ed = topo.edges[e];
    g.edge_len[e] = (mesh.nodes[ed.b] - mesh.nodes[ed.a]).norm();
    for (int t : {ed.left, ed.right}) {
      if (t < 0) continue;
      g.patch_area[e] += g.tri_area[t];
      g.patch_diam[e] = std::max(g.patch_diam[e], g.tri_diam[t]);
    }
  }

  g.star_area.assign(nn, 0.0);
  g.node_diam.assign(nn, 0.0);
  g.node_width.assign(nn, 0.0);
  g.rect_ratio.assign(nn, 0.0);
  std::vector<int> ring;
  for (int z = 0; z < nn; ++z) {
    const int lo = topo.star_offset[z], hi = topo.star_offset[z + 1];
    ring.clear();
    ring.push_back(z);
    for (int k = lo; k < hi; ++k) {
      const int t = topo.gap_tris[k];
      if (t < 0) continue;
      g.star_area[z] += g.tri_area[t];
    }
    for (int k = lo; k < hi; ++k) {
      const auto& ed = topo.edges[topo.star_edges[k]];
      ring.push_back(ed.a == z ? ed.b : ed.a);
    }
    double H = 0.0;
    double xmin = mesh.nodes[z].x, xmax = xmin, ymin = mesh.nodes[z].y, ymax = ymin;
    for (std::size_t p = 0; p < ring.size(); ++p) {
      const Vec2 pp = mesh.nodes[ring[p]];
      xmin = std::min(xmin, pp.x);
      xmax = std::max(xmax, pp.x);
      ymin = std::min(ymin, pp.y);
      ymax = std::max(ymax, pp.y);
      for (std::size_t q = p + 1; q < ring.size(); ++q)
        H = std::max(H, (mesh.nodes[ring[q]] - pp).norm());
    }
    g.node_diam[z] = H;
    g.node_width[z] = H > 0.0 ? g.star_area[z] / H : 0.0;
    g.rect_ratio[z] = g.star_area[z] > 0.0 ? (xmax - xmin) * (ymax - ymin) / g.star_area[z] : 0.0;
  }
  return g;
}

void write_mesh_text(std::ostream& os, const Mesh& mesh) {
  char buf[128];
  os << "nodes " << mesh.node_count() << "\n";
  for (int z = 0; z < mesh.node_count(); ++z) {
    std::snprintf(buf, sizeof buf, "%d %.17g %.17g %d\n", z, mesh.nodes[z].x, mesh.nodes[z].y,
                  static_cast<int>(mesh.boundary[z]));
    os << buf;
  }
  os << "triangles " << mesh.tri_count() << "\n";
  for (int t = 0; t < mesh.tri_count(); ++t) {
    std::snprintf(buf, sizeof buf, "%d %d %d %d\n", t, mesh.tris[t][0], mesh.tris[t][1],
                  mesh.tris[t][2]);
    os << buf;
  }
}

}  // namespace anisoest
