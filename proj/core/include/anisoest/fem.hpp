#ifndef ANISOEST_FEM_HPP
#define ANISOEST_FEM_HPP

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "anisoest/linsolve.hpp"
#include "anisoest/mesh.hpp"
#include "anisoest/problems.hpp"

namespace anisoest {

/// Continuous piecewise-linear function given by its nodal values.
struct DiscreteField {
  const Mesh* mesh = nullptr;
  std::vector<double> values;
};

DiscreteField nodal_interpolant(const std::function<double(double, double)>& g, const Mesh& mesh);

/// Gradient of a P1 field on triangle t (constant there).
Vec2 tri_gradient(const Mesh& mesh, const DiscreteField& u, int t);

/// Piecewise-quadratic function: nodal values plus one value per edge midpoint.
struct P2Field {
  const Mesh* mesh = nullptr;
  const Topology* topo = nullptr;
  std::vector<double> node_vals;
  std::vector<double> edge_vals;

  /// Evaluate inside triangle t at barycentric coordinates.
  double eval(int t, double l0, double l1, double l2) const;
};

P2Field quadratic_interpolant(const std::function<double(double, double)>& g, const Mesh& mesh,
                              const Topology& topo);

/// Exact element matrices; vertex order follows the triangle.
std::array<std::array<double, 3>, 3> local_stiffness(const Mesh& mesh, int t);
std::array<std::array<double, 3>, 3> local_mass(const Mesh& mesh, int t);

/// Full stiffness matrix over all nodes (row sums are zero). Assembly and all
/// norm accumulations run in fixed element order, so results are bitwise
/// reproducible.
SparseSym assemble_stiffness(const Mesh& mesh);

/// Load vector <fI, phi_z> via the exact P1 mass matrix.
std::vector<double> assemble_load(const Mesh& mesh, const DiscreteField& fI);

/// Dirichlet elimination: unknowns are the non-boundary nodes, the lift
/// contribution A_ib * g_b moves to the right-hand side.
struct ReducedSystem {
  SparseSym A;
  std::vector<double> b;
  std::vector<int> interior_of_global;  // -1 at Dirichlet nodes
  std::vector<int> global_of_interior;
};

ReducedSystem reduce_system(const Mesh& mesh, const SparseSym& A_full,
                            const std::vector<double>& load,
                            const std::vector<double>& boundary_values);

/// Restriction of norms and sums to a vertical strip (x0, x1); edges belong by
/// midpoint, elements by centroid.
struct Region {
  enum class Kind { all, xstrip };
  Kind kind = Kind::all;
  double x0 = 0.0, x1 = 0.0;
  bool contains_x(double x) const { return kind == Kind::all || (x > x0 && x < x1); }
};

/// Strip around the i-th structured grid line; the first and last strips
/// degenerate to a single cell column.
Region strip_region(const Mesh& mesh, int i);

enum class SolverMethod { automatic, pcg, direct };

struct SolveOptions {
  double tol = 1e-10;
  int maxit = 0;  // <= 0: solver default
  SolverMethod method = SolverMethod::automatic;
};

/// Per-mesh solve context: the stiffness matrix and its Dirichlet reduction
/// are assembled once; a direct factorization is cached after first use.
class PoissonSolver {
 public:
  explicit PoissonSolver(const Mesh& mesh);

  /// Galerkin solution with f replaced by its nodal interpolant and boundary
  /// data interpolated from the exact solution.
  std::pair<DiscreteField, SolveStats> solve(const TestProblem& pb, SolveOptions opts = {}) const;

  int unknowns() const { return static_cast<int>(reduced_.global_of_interior.size()); }
  double max_aspect() const { return max_aspect_; }
  const SparseSym& full_matrix() const { return A_full_; }
  const SparseSym& reduced_matrix() const { return reduced_.A; }

 private:
  const Mesh* mesh_;
  SparseSym A_full_;
  ReducedSystem reduced_;
  double max_aspect_ = 1.0;
  mutable std::unique_ptr<DirectFactor> factor_;
};

/// One-shot convenience wrapper around PoissonSolver.
std::pair<DiscreteField, SolveStats> solve_poisson(const Mesh& mesh, const TestProblem& pb,
                                                   SolveOptions opts = {});

/// Per-triangle ingredients for error norms and estimator terms. The exact
/// gradient enters through the componentwise piecewise-linear interpolant of
/// grad(u), the data through the piecewise-quadratic interpolant of f.
struct TriNorms {
  std::vector<double> err2;     // |grad u_h - (grad u)^I|^2 integrated over T
  std::vector<double> f2;       // integral of (f^I)^2
  std::vector<double> favg2;    // |T| times squared element average of f
  std::vector<double> df2;      // integral of (f - f^I)^2
  std::vector<double> osc_fI;   // max-min of the three nodal f^I values
  std::vector<double> osc_f;    // max-min of f over vertices/midpoints/centroid
};

TriNorms compute_tri_norms(const Mesh& mesh, const Topology& topo, const DiscreteField& u_h,
                           const TestProblem& pb, const DiscreteField& fI);

double energy_error(const Mesh& mesh, const DiscreteField& u_h, const TestProblem& pb,
                    Region region = {});

struct OscNorms {
  double hT_f_minus_fI = 0.0;  // || h_T (f - f^I) ||
  double f_minus_fI = 0.0;     // || f - f^I ||
  double HT_osc_fI = 0.0;      // || H_T osc(f^I;T) ||
  double HT_osc_f = 0.0;       // || H_T osc(f;T) ||
};

OscNorms weighted_norms(const Mesh& mesh, const GeomTables& geom, const TriNorms& tn,
                        Region region = {});
OscNorms weighted_norms(const Mesh& mesh, const Topology& topo, const GeomTables& geom,
                        const TestProblem& pb, const DiscreteField& fI, Region region = {});

/// Text dump, one `<node_id> <value>` line per node.
void write_field_text(std::ostream& os, const DiscreteField& field);

}  // namespace anisoest

#endif
