#include "anisoest/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace anisoest {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TestProblem make_problem(TestProblem::Id id, double param) {
  TestProblem pb;
  pb.id = id;
  switch (id) {
    case TestProblem::Id::sine: {
      if (!(param > 0.0)) throw std::invalid_argument("make_problem: sine needs a > 0");
      const double a = param, w = kPi * a;
      pb.name = "sine";
      pb.a = a;
      pb.Lx = pb.Ly = 1.0;
      pb.u = [w](double x, double) { return std::sin(w * x); };
      pb.ux = [w](double x, double) { return w * std::cos(w * x); };
      pb.uy = [](double, double) { return 0.0; };
      pb.f = [w](double x, double) { return w * w * std::sin(w * x); };
      break;
    }
    case TestProblem::Id::layer: {
      if (!(param > 0.0)) throw std::invalid_argument("make_problem: layer needs eps > 0");
      const double eps = param, mu = 2.0 * eps * eps;
      const double c = 1.0 / (mu * mu) - 1.0 / (eps * eps);
      pb.name = "layer";
      pb.eps = eps;
      pb.mu = mu;
      pb.Lx = 1.0;
      pb.Ly = eps;
      pb.u = [mu, eps](double x, double y) { return std::sin(x / mu) * std::exp(-y / eps); };
      pb.ux = [mu, eps](double x, double y) {
        return std::cos(x / mu) / mu * std::exp(-y / eps);
      };
      pb.uy = [mu, eps](double x, double y) {
        return -std::sin(x / mu) * std::exp(-y / eps) / eps;
      };
      pb.f = [mu, eps, c](double x, double y) {
        return c * std::sin(x / mu) * std::exp(-y / eps);
      };
      break;
    }
    case TestProblem::Id::oblique: {
      if (!(param > 0.0)) throw std::invalid_argument("make_problem: oblique needs eps > 0");
      const double eps = param;
      pb.name = "oblique";
      pb.eps = eps;
      pb.Lx = 1.0;
      pb.Ly = eps;
      pb.u = [eps](double x, double y) { return std::sin((2.0 * y - x) / eps); };
      pb.ux = [eps](double x, double y) { return -std::cos((2.0 * y - x) / eps) / eps; };
      pb.uy = [eps](double x, double y) { return 2.0 * std::cos((2.0 * y - x) / eps) / eps; };
      pb.f = [eps](double x, double y) {
        return 5.0 / (eps * eps) * std::sin((2.0 * y - x) / eps);
      };
      break;
    }
    case TestProblem::Id::custom:
      throw std::invalid_argument("make_problem: custom problems are built directly");
  }
  return pb;
}

TestProblem make_problem(const std::string& name, double param) {
  if (name == "sine") return make_problem(TestProblem::Id::sine, param);
  if (name == "layer") return make_problem(TestProblem::Id::layer, param);
  if (name == "oblique") return make_problem(TestProblem::Id::oblique, param);
  throw std::invalid_argument("make_problem: unknown problem '" + name + "'");
}

}  // namespace anisoest
