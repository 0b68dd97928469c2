#ifndef ANISOEST_MESH_HPP
#define ANISOEST_MESH_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace anisoest {

struct TopologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

/// Counterclockwise rotation by 90 degrees.
inline Vec2 rot90(Vec2 v) { return {-v.y, v.x}; }

/// 1D mesh on [0, L]: strictly increasing points, first 0, last L.
struct Grid1D {
  std::vector<double> points;
  double length = 0.0;

  Grid1D() = default;
  explicit Grid1D(std::vector<double> pts);

  int cells() const { return static_cast<int>(points.size()) - 1; }
};

enum class GridKind { uniform, scaled };

/// Equispaced grid with n cells on [0, L]; `scaled` names the L != 1 use.
Grid1D build_grid_1d(GridKind kind, int n, double L);

/// Orientation of the cell diagonals; NE runs lower-left to upper-right.
enum class Diagonal { NE, NW };

struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> tris;  // counterclockwise
  std::vector<std::uint8_t> boundary;    // per node

  // Structured provenance: set by build_tensor_mesh, used for strip and
  // grid-line queries without geometric searches.
  bool structured = false;
  int nx = 0, ny = 0;
  std::vector<std::array<int, 2>> ij;  // per node (i, j), structured only
  std::vector<double> grid_x, grid_y;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int tri_count() const { return static_cast<int>(tris.size()); }
  int structured_node(int i, int j) const { return j * (nx + 1) + i; }

  double signed_area(int t) const {
    const Vec2 a = nodes[tris[t][0]], b = nodes[tris[t][1]], c = nodes[tris[t][2]];
    return 0.5 * (b - a).cross(c - a);
  }
};

/// Tensor-product triangulation: every cell split by the same diagonal.
Mesh build_tensor_mesh(const Grid1D& gx, const Grid1D& gy, Diagonal diag = Diagonal::NE);

struct Topology {
  struct Edge {
    int a = -1, b = -1;        // node ids, a < b
    int left = -1, right = -1; // triangles; right lies on the normal side
    bool interior() const { return left >= 0 && right >= 0; }
  };

  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> tri_edges;  // edge ids per triangle, local order (01,12,20)

  // Node stars, flattened: incident edges sorted anticlockwise starting from
  // the smallest angle to the +x axis; gap_tris[k] is the triangle between
  // star edge k and k+1 (cyclic), -1 for the open gap at boundary nodes.
  std::vector<int> star_offset;  // node_count()+1 entries
  std::vector<int> star_edges;
  std::vector<int> gap_tris;
  std::vector<std::uint8_t> star_closed;

  int interior_edge_count = 0;

  int star_size(int z) const { return star_offset[z + 1] - star_offset[z]; }

  /// Unit normal, fixed by the a < b orientation (points to the `right` side).
  Vec2 normal(const Mesh& m, int e) const {
    const Edge& ed = edges[e];
    Vec2 t = m.nodes[ed.b] - m.nodes[ed.a];
    const double len = t.norm();
    return {t.y / len, -t.x / len};
  }
};

/// Discovers edges, two-element patches and anticlockwise node stars.
/// Throws TopologyError on non-manifold input.
Topology compute_topology(const Mesh& mesh);

/// Exact per-entity geometric quantities (no quadrature involved).
struct GeomTables {
  // per triangle
  std::vector<double> tri_area;   // |T|
  std::vector<double> tri_diam;   // H_T, the longest edge
  std::vector<double> tri_width;  // h_T = 2|T|/H_T

  // per edge
  std::vector<double> edge_len;    // |S|
  std::vector<double> patch_area;  // |w_S|, sum of the two triangle areas
  std::vector<double> patch_diam;  // largest element diameter within w_S

  // per node
  std::vector<double> star_area;   // |w_z|
  std::vector<double> node_diam;   // H_z, max pairwise distance in the star
  std::vector<double> node_width;  // h_z = |w_z|/H_z
  std::vector<double> rect_ratio;  // bounding-box area over |w_z| (diagnostic)
};

GeomTables compute_geometry(const Mesh& mesh, const Topology& topo);

/// Text dump: `nodes <n>`, one `<id> <x> <y> <boundary>` line per node,
/// `triangles <m>`, one `<id> <v0> <v1> <v2>` line per triangle.
/// Coordinates carry 17 significant digits.
void write_mesh_text(std::ostream& os, const Mesh& mesh);

}  // namespace anisoest

#endif
