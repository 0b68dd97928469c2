#ifndef ANISOEST_PROBLEMS_HPP
#define ANISOEST_PROBLEMS_HPP

#include <functional>
#include <string>

namespace anisoest {

/// Dirichlet model problem -laplace(u) = f with exact solution and gradient;
/// boundary data is the trace of u.
struct TestProblem {
  enum class Id { sine, layer, oblique, custom };

  Id id = Id::custom;
  std::string name = "custom";
  double Lx = 1.0, Ly = 1.0;  // domain (0,Lx) x (0,Ly)

  // parameters: `a` for sine; `eps` (and derived mu = 2*eps^2) for the others
  double a = 0.0, eps = 0.0, mu = 0.0;

  std::function<double(double, double)> u, ux, uy, f;
};

/// sine:    u = sin(pi*a*x)                on (0,1)^2,      param = a
/// layer:   u = sin(x/mu) exp(-y/eps)      on (0,1)x(0,eps), param = eps, mu = 2 eps^2
/// oblique: u = sin((2y - x)/eps)          on (0,1)x(0,eps), param = eps
TestProblem make_problem(TestProblem::Id id, double param);
TestProblem make_problem(const std::string& name, double param);

}  // namespace anisoest

#endif
