#ifndef ANISOEST_ESTIMATOR_HPP
#define ANISOEST_ESTIMATOR_HPP

#include <string>
#include <vector>

#include "anisoest/fem.hpp"

namespace anisoest {

/// Edge weight in the lower estimators: `bubble` is the classical
/// |S|/diam(w_S) localization weight, `uniform` is 1.
enum class Weight { bubble, uniform };

/// How the data enters the estimator volume term: nodal interpolant of f, or
/// its piecewise-constant element averages.
enum class VolumeData { lagrange, element_average };

struct EdgeJumps {
  std::vector<double> jump;  // signed normal-derivative jump J_S; 0 on boundary edges
  double grad_scale = 0.0;   // max |grad u_h| over the mesh
};

/// J_S = nu_S . (grad u_h|left - grad u_h|right) for every interior edge.
EdgeJumps jump_residuals(const Mesh& mesh, const Topology& topo, const DiscreteField& u_h);

/// J'_S = J_S (nu_S . xi): the jump seen by the direction xi.
double normalized_jump(const Mesh& mesh, const Topology& topo, const EdgeJumps& jumps, int e,
                       Vec2 xi);

/// Throws std::invalid_argument for boundary edges.
double edge_weight(const Topology& topo, const GeomTables& geom, int e, Weight w);

/// Interior edges with |S| < c_short * diam(w_S).
std::vector<std::uint8_t> short_edge_flags(const Topology& topo, const GeomTables& geom,
                                           double c_short = 0.5);

struct EstimatorOptions {
  double c_short = 0.5;
  VolumeData volume_data = VolumeData::lagrange;
};

struct LowerEstimate {
  double jump2 = 0.0;  // sum of rho_S |w_S| J_S^2
  double vol2 = 0.0;   // || h_T f^I ||^2 (or the element-average variant)
  bool empty = true;
  double value() const;
};

LowerEstimate lower_estimator(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                              const EdgeJumps& jumps, const TriNorms& tn, Weight w,
                              Region region = {}, VolumeData vd = VolumeData::lagrange);

/// Short-edge part: { sum over short edges in the region of rho |w_S| J^2 }^1/2.
double short_edge_estimator(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                            const EdgeJumps& jumps, const std::vector<std::uint8_t>& short_flags,
                            Weight w, Region region = {});

/// `coarse` carries the H_T-weighted data term; `sharp` trades it for the
/// h_T-weighted term plus the nodal-oscillation term.
enum class UpperKind { coarse, sharp };

struct UpperEstimate {
  double jump2 = 0.0, vol2 = 0.0, df2 = 0.0, osc2 = 0.0;
  double value() const;
};

UpperEstimate upper_estimator(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                              const EdgeJumps& jumps, const TriNorms& tn, UpperKind kind,
                              Region region = {});

struct NodeClasses {
  std::vector<std::uint8_t> anisotropic;
  std::vector<std::uint8_t> regular;
  std::vector<double> width_ratio;     // h_z / H_z
  std::vector<double> min_area_ratio;  // min |T| / |w_z| over the star
  int max_fan = 0;
};

/// Anisotropic: h_z < c0 H_z and min |T| >= c_uni |w_z| over the star
/// (c_uni <= 0 selects 1/(2 max fan size)). Regular: every star triangle has
/// min angle >= min_angle_deg.
NodeClasses classify_nodes(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                           double c0 = 0.5, double c_uni = 0.0, double min_angle_deg = 20.0);

/// Chain of short edges through anisotropic nodes with a fitted frame:
/// eta points along the chain, xi across it.
struct AnisoPath {
  std::vector<int> nodes;
  std::vector<int> edges;  // nodes.size() - 1 entries
  bool end0_boundary = false, end1_boundary = false;
  double H_P = 0.0;  // median H_z over the chain
  Vec2 xi_axis, eta_axis;
};

/// Maximal chains grown greedily from unvisited short edges whose endpoints
/// are all anisotropic; chains split where a node has a different number than
/// 2 incident short edges or H_z jumps by more than kappa_H.
std::vector<AnisoPath> extract_paths(const Mesh& mesh, const Topology& topo,
                                     const GeomTables& geom, const NodeClasses& classes,
                                     const std::vector<std::uint8_t>& short_flags,
                                     double kappa_H = 2.0);

struct VertexIdentity {
  double max_residual = 0.0;  // max 2-norm of the anticlockwise fan-jump sum
  double grad_scale = 0.0;
  int argmax_node = -1;
};

/// The anticlockwise gradient jumps around an interior node telescope to zero;
/// with `extended_by_zero` boundary fans are closed by a zero exterior field.
VertexIdentity vertex_identity_residual(const Mesh& mesh, const Topology& topo,
                                        const DiscreteField& u_h, bool extended_by_zero = false);

struct JumpDiffEntry {
  int node = -1;
  double numer = 0.0, denom = 0.0, ratio = 0.0;
  bool denom_zero = false;
  bool boundary = false;  // path endpoint on the domain boundary
};

struct JumpDiffReport {
  std::vector<JumpDiffEntry> entries;
  double max_ratio = 0.0;       // over interior nodes with healthy denominators
  double max_zero_numer = 0.0;  // largest numerator among denominator-zero nodes
  double grad_scale = 0.0;
  int healthy = 0, zero_denom = 0;
};

/// Per-node ratio |sum of path-edge fan jumps . xi| over
/// (h_z/H_z) sum_{S in gamma_z \ P} |J_S|; denominator-zero nodes are
/// reported, never divided.
JumpDiffReport jump_difference_check(const Mesh& mesh, const Topology& topo,
                                     const GeomTables& geom, const EdgeJumps& jumps,
                                     const AnisoPath& path);

/// Structured variant along the i-th vertical grid line with xi = x.
JumpDiffReport jump_difference_check_line(const Mesh& mesh, const Topology& topo,
                                          const GeomTables& geom, const EdgeJumps& jumps, int i);

struct BubbleBoundReport {
  double C_f = 0.0;  // max_T  h_T ||f^I||_T / (||grad(u_h-u)||_T + h_T ||f-f^I||_T)
  double C_J = 0.0;  // max_S  rho |w_S| J^2 / (||grad(u_h-u)||^2 + ||h_T(f-f^I)||^2 over w_S)
  int argmax_tri = -1, argmax_edge = -1;
  int anomalies = 0;  // zero denominator against nonzero numerator
};

BubbleBoundReport bubble_bound_check(const Mesh& mesh, const Topology& topo,
                                     const GeomTables& geom, const EdgeJumps& jumps,
                                     const TriNorms& tn, Weight lhs_weight);

/// All estimator quantities over one region.
struct EstimatorReport {
  std::string region = "all";
  bool empty = false;
  double error = 0.0;
  double E_bubble = 0.0, E_uniform = 0.0;
  double E0_bubble = 0.0, E0_uniform = 0.0;
  double eff_bubble = 0.0, eff_uniform = 0.0;    // E / error
  double ratio_bubble = 0.0, ratio_uniform = 0.0;  // E0 / E
  double upper_coarse = 0.0, upper_sharp = 0.0;
  double Y = 0.0;  // error + || H_T osc(f;T) ||
  double jump2_bubble = 0.0, jump2_uniform = 0.0, vol2 = 0.0;
};

EstimatorReport estimator_report(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                                 const EdgeJumps& jumps, const TriNorms& tn,
                                 const std::vector<std::uint8_t>& short_flags, Region region = {},
                                 const std::string& label = "all",
                                 const EstimatorOptions& opts = {});

}  // namespace anisoest

#endif
