#ifndef ANISOEST_LINSOLVE_HPP
#define ANISOEST_LINSOLVE_HPP

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace anisoest {

/// Symmetric sparse matrix in CSR form; the full pattern is stored.
struct SparseSym {
  int n = 0;
  std::vector<int> row_ptr;  // n+1
  std::vector<int> col;
  std::vector<double> val;

  void multiply(const double* x, double* y) const;
  std::vector<double> multiply(const std::vector<double>& x) const;
  std::vector<double> diagonal() const;
};

struct SolveStats {
  int iterations = 0;
  double rel_residual = 0.0;
  double seconds = 0.0;
  std::string method;  // "pcg" or "direct"
};

struct SolveError : std::runtime_error {
  SolveStats stats;
  SolveError(const std::string& what, SolveStats s) : std::runtime_error(what), stats(s) {}
};

/// Conjugate gradients with Jacobi preconditioning.
/// maxit <= 0 selects the default 50*sqrt(n).
/// Throws SolveError (carrying the stats) when maxit is exceeded.
/// on_iterate, when set, observes the iterate after every update.
std::pair<std::vector<double>, SolveStats> pcg_solve(
    const SparseSym& A, const std::vector<double>& b, double tol = 1e-10, int maxit = 0,
    const std::function<void(int, const std::vector<double>&)>& on_iterate = {});

bool direct_solver_available();

/// Sparse LDL^T factorization held behind the library surface; solves are
/// followed by two steps of iterative refinement.
class DirectFactor {
 public:
  explicit DirectFactor(const SparseSym& A);
  ~DirectFactor();
  DirectFactor(DirectFactor&&) noexcept;
  DirectFactor& operator=(DirectFactor&&) noexcept;

  std::pair<std::vector<double>, SolveStats> solve(const std::vector<double>& b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace anisoest

#endif
