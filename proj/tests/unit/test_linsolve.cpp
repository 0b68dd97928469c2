#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "anisoest/linsolve.hpp"
#include "support/dense.hpp"

using namespace anisoest;
using namespace testsupport;

namespace {

double rel_err(const std::vector<double>& x, const std::vector<double>& y) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - y[i]) * (x[i] - y[i]);
    den += y[i] * y[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("identity system converges in one iteration") {
  Matrix I(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 4; ++i) I[i][i] = 1.0;
  const SparseSym A = to_sparse(I);
  const std::vector<double> b = {1.0, -2.0, 3.0, 0.5};
  auto [x, stats] = pcg_solve(A, b);
  CHECK(stats.iterations == 1);
  for (int i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-14));
}

TEST_CASE("second-difference system, n = 3") {
  Matrix M = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  const SparseSym A = to_sparse(M);
  auto [x, stats] = pcg_solve(A, {1.0, 1.0, 1.0});
  CHECK(x[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(x[2] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(stats.rel_residual <= 1e-10);
}

TEST_CASE("zero right-hand side returns zero in zero iterations") {
  Matrix M = {{2, -1}, {-1, 2}};
  auto [x, stats] = pcg_solve(to_sparse(M), {0.0, 0.0});
  CHECK(stats.iterations == 0);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == 0.0);
}

TEST_CASE("pcg matches the dense oracle on random SPD systems") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int n : {10, 50, 200}) {
    const Matrix M = random_spd(n, rng);
    std::vector<double> b(n);
    for (double& v : b) v = uni(rng);
    const std::vector<double> ref = dense_solve(M, b);
    auto [x, stats] = pcg_solve(to_sparse(M), b, 1e-12);
    CHECK(rel_err(x, ref) < 1e-9);
    CHECK(stats.rel_residual <= 1e-12);
  }
}

TEST_CASE("A-norm error decreases monotonically across iterations") {
  std::mt19937 rng(3);
  const int n = 40;
  const Matrix M = random_spd(n, rng);
  std::vector<double> b(n);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (double& v : b) v = uni(rng);
  const std::vector<double> ref = dense_solve(M, b);

  auto a_norm_err = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += (x[i] - ref[i]) * M[i][j] * (x[j] - ref[j]);
    return std::sqrt(std::max(0.0, s));
  };

  std::vector<double> history;
  pcg_solve(to_sparse(M), b, 1e-13, 0,
            [&](int, const std::vector<double>& x) { history.push_back(a_norm_err(x)); });
  REQUIRE(history.size() >= 3);
  for (std::size_t k = 1; k < history.size(); ++k)
    CHECK(history[k] <= history[k - 1] * (1.0 + 1e-12) + 1e-14);
}

TEST_CASE("maxit exceeded raises a SolveError carrying the stats") {
  std::mt19937 rng(11);
  const Matrix M = random_spd(60, rng);
  std::vector<double> b(60, 1.0);
  try {
    pcg_solve(to_sparse(M), b, 1e-14, 2);
    FAIL("expected SolveError");
  } catch (const SolveError& e) {
    CHECK(e.stats.iterations == 2);
    CHECK(e.stats.rel_residual > 0.0);
    CHECK(e.stats.method == "pcg");
  }
}

TEST_CASE("direct factorization matches the dense oracle") {
  if (!direct_solver_available()) return;
  std::mt19937 rng(5);
  const Matrix M = random_spd(120, rng);
  std::vector<double> b(120);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (double& v : b) v = uni(rng);
  const DirectFactor factor(to_sparse(M));
  auto [x, stats] = factor.solve(b);
  CHECK(rel_err(x, dense_solve(M, b)) < 1e-9);
  CHECK(stats.rel_residual < 1e-13);
  CHECK(stats.method == "direct");
}
