#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "anisoest/quadrature.hpp"

using namespace anisoest;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// exact integral of l0^a l1^b l2^c over a triangle of unit area
double monomial_integral(int a, int b, int c) {
  return 2.0 * factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 2);
}

template <typename Rule>
double quad_monomial(const Rule& rule, int a, int b, int c) {
  double s = 0.0;
  for (const auto& q : rule)
    s += q.w * std::pow(q.l0, a) * std::pow(q.l1, b) * std::pow(q.l2, c);
  return s;
}

}  // namespace

TEST_CASE("midpoint rule is exact for all quadratic monomials") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) {
      const int c = 2 - a - b;
      CHECK(quad_monomial(tri_midpoint_rule, a, b, c) ==
            doctest::Approx(monomial_integral(a, b, c)).epsilon(1e-14));
    }
  CHECK(quad_monomial(tri_midpoint_rule, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("six-point rule is exact through degree four") {
  for (int deg = 0; deg <= 4; ++deg)
    for (int a = 0; a <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b) {
        const int c = deg - a - b;
        CHECK(quad_monomial(tri_degree4_rule, a, b, c) ==
              doctest::Approx(monomial_integral(a, b, c)).epsilon(1e-13));
      }
}

TEST_CASE("random quartics agree with the factorial-formula oracle") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    double coef[5][5] = {};
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; a + b <= 4; ++b) coef[a][b] = uni(rng);
    double exact = 0.0, quad = 0.0;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; a + b <= 4; ++b) {
        const int c = 4 - a - b >= 0 ? 4 - a - b : 0;
        exact += coef[a][b] * monomial_integral(a, b, c);
        quad += coef[a][b] * quad_monomial(tri_degree4_rule, a, b, c);
      }
    CHECK(quad == doctest::Approx(exact).epsilon(1e-12));
  }
}
