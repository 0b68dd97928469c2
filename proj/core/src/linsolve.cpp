#include "anisoest/linsolve.hpp"

#include <chrono>
#include <cmath>

#ifdef ANISOEST_HAVE_EIGEN
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#endif

namespace anisoest {

void SparseSym::multiply(const double* x, double* y) const {
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
    y[i] = s;
  }
}

std::vector<double> SparseSym::multiply(const std::vector<double>& x) const {
  std::vector<double> y(n);
  multiply(x.data(), y.data());
  return y;
}

std::vector<double> SparseSym::diagonal() const {
  std::vector<double> d(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      if (col[k] == i) d[i] = val[k];
  return d;
}

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

std::pair<std::vector<double>, SolveStats> pcg_solve(
    const SparseSym& A, const std::vector<double>& b, double tol, int maxit,
    const std::function<void(int, const std::vector<double>&)>& on_iterate) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  if (!(tol > 0.0)) throw std::invalid_argument("pcg_solve: tol must be > 0");
  const int n = A.n;
  if (maxit <= 0) maxit = static_cast<int>(50.0 * std::sqrt(static_cast<double>(n))) + 10;

  SolveStats stats;
  stats.method = "pcg";
  std::vector<double> x(n, 0.0);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    stats.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return {x, stats};
  }

  std::vector<double> invd = A.diagonal();
  for (double& d : invd) d = 1.0 / d;

  std::vector<double> r(b), z(n), p(n), Ap(n);
  for (int i = 0; i < n; ++i) z[i] = invd[i] * r[i];
  p = z;
  double rz = dot(r, z);
  double rnorm = norm2(r);

  int it = 0;
  while (rnorm / bnorm > tol) {
    if (it >= maxit) {
      stats.iterations = it;
      stats.rel_residual = rnorm / bnorm;
      stats.seconds = std::chrono::duration<double>(clock::now() - t0).count();
      throw SolveError("pcg_solve: no convergence within " + std::to_string(maxit) +
                           " iterations (rel residual " + std::to_string(stats.rel_residual) + ")",
                       stats);
    }
    A.multiply(p.data(), Ap.data());
    const double alpha = rz / dot(p, Ap);
    for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (int i = 0; i < n; ++i) r[i] -= alpha * Ap[i];
    for (int i = 0; i < n; ++i) z[i] = invd[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rz = rz_next;
    rnorm = norm2(r);
    ++it;
    if (on_iterate) on_iterate(it, x);
  }
  stats.iterations = it;
  stats.rel_residual = rnorm / bnorm;
  stats.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return {x, stats};
}

#ifdef ANISOEST_HAVE_EIGEN

bool direct_solver_available() { return true; }

struct DirectFactor::Impl {
  Eigen::SparseMatrix<double> A;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

DirectFactor::DirectFactor(const SparseSym& A) : impl_(std::make_unique<Impl>()) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(A.val.size());
  for (int i = 0; i < A.n; ++i)
    for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
      trips.emplace_back(i, A.col[k], A.val[k]);
  impl_->A.resize(A.n, A.n);
  impl_->A.setFromTriplets(trips.begin(), trips.end());
  impl_->ldlt.compute(impl_->A);
  if (impl_->ldlt.info() != Eigen::Success)
    throw SolveError("DirectFactor: factorization failed", SolveStats{0, 0.0, 0.0, "direct"});
}

DirectFactor::~DirectFactor() = default;
DirectFactor::DirectFactor(DirectFactor&&) noexcept = default;
DirectFactor& DirectFactor::operator=(DirectFactor&&) noexcept = default;

std::pair<std::vector<double>, SolveStats> DirectFactor::solve(
    const std::vector<double>& b) const {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::Map<const Eigen::VectorXd> bv(b.data(), n);
  Eigen::VectorXd x = impl_->ldlt.solve(bv);
  for (int step = 0; step < 2; ++step) {
    Eigen::VectorXd r = bv - impl_->A * x;
    x += impl_->ldlt.solve(r).eval();
  }
  SolveStats stats;
  stats.method = "direct";
  const double bnorm = bv.norm();
  stats.rel_residual = bnorm > 0.0 ? (bv - impl_->A * x).norm() / bnorm : 0.0;
  stats.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return {std::vector<double>(x.data(), x.data() + x.size()), stats};
}

#else

bool direct_solver_available() { return false; }

struct DirectFactor::Impl {};

DirectFactor::DirectFactor(const SparseSym&) {
  throw SolveError("DirectFactor: built without sparse direct solver support",
                   SolveStats{0, 0.0, 0.0, "direct"});
}
DirectFactor::~DirectFactor() = default;
DirectFactor::DirectFactor(DirectFactor&&) noexcept = default;
DirectFactor& DirectFactor::operator=(DirectFactor&&) noexcept = default;
std::pair<std::vector<double>, SolveStats> DirectFactor::solve(const std::vector<double>&) const {
  throw SolveError("DirectFactor: built without sparse direct solver support",
                   SolveStats{0, 0.0, 0.0, "direct"});
}

#endif

}  // namespace anisoest
