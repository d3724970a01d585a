#pragma once

#include <array>
#include <functional>
#include <span>

namespace wavebranch::quad {

/// Gauss-Legendre rule on [-1, 1].
template <int N>
struct GaussLegendre {
  std::array<double, N> nodes;
  std::array<double, N> weights;
};

const GaussLegendre<15>& gl15();
const GaussLegendre<4>& gl4();

struct Tolerance {
  double abs = 1e-14;
  double rel = 1e-13;
  int max_depth = 40;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

using Integrand = std::function<double(double)>;

/// Adaptive composite 15-point Gauss-Legendre. A panel is accepted when the
/// single-panel estimate agrees with the sum over its two halves.
Result integrate(const Integrand& f, double a, double b, Tolerance tol = {});

/// Integrates f over [a, b] when f has an inverse-square-root singularity
/// (or is merely steep) at the endpoint `b` if `cluster_at_b`, else at `a`.
/// Uses x = b - (b - a) u^2 which turns 1/sqrt(b - x) into a bounded integrand.
Result integrate_clustered(const Integrand& f, double a, double b, bool cluster_at_b,
                           Tolerance tol = {});

/// Trapezoid rule on sampled data with uniform spacing h.
double trapezoid(std::span<const double> y, double h);

}  // namespace wavebranch::quad
