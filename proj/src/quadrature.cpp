#include "wavebranch/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace wavebranch::quad {
namespace {

template <int N>
GaussLegendre<N> make_rule() {
  GaussLegendre<N> rule{};
  for (int i = 0; i < N; ++i) {
    // Chebyshev-like initial guess, then Newton on P_N.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= N; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = N * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double panel(const Integrand& f, double a, double b) {
  const auto& r = gl15();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 15; ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
  return s * h;
}

}  // namespace

const GaussLegendre<15>& gl15() {
  static const auto rule = make_rule<15>();
  return rule;
}

const GaussLegendre<4>& gl4() {
  static const auto rule = make_rule<4>();
  return rule;
}

Result integrate(const Integrand& f, double a, double b, Tolerance tol) {
  struct Panel {
    double a, b, whole;
    int depth;
  };
  Result out;
  if (a == b) return out;
  std::vector<Panel> stack{{a, b, panel(f, a, b), 0}};
  const double span = std::abs(b - a);
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double left = panel(f, p.a, m);
    const double right = panel(f, m, p.b);
    const double err = std::abs(left + right - p.whole);
    const double share = std::abs(p.b - p.a) / span;
    const double allowed = std::max(tol.abs * share, tol.rel * std::abs(left + right));
    if (err <= allowed || p.depth >= tol.max_depth) {
      if (err > allowed) out.converged = false;
      out.value += left + right;
      out.error += err;
      continue;
    }
    stack.push_back({p.a, m, left, p.depth + 1});
    stack.push_back({m, p.b, right, p.depth + 1});
  }
  return out;
}

Result integrate_clustered(const Integrand& f, double a, double b, bool cluster_at_b,
                           Tolerance tol) {
  const double len = b - a;
  if (cluster_at_b) {
    return integrate([&](double u) { return 2.0 * len * u * f(b - len * u * u); }, 0.0, 1.0,
                     tol);
  }
  return integrate([&](double u) { return 2.0 * len * u * f(a + len * u * u); }, 0.0, 1.0, tol);
}

double trapezoid(std::span<const double> y, double h) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

}  // namespace wavebranch::quad
