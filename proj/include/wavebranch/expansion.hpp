#pragma once

#include <vector>

#include "wavebranch/stream.hpp"

namespace wavebranch {

/// alpha0(p) = gamma(H(p); tau*) H_p(p) on n + 1 uniform p-points.
struct KernelMode {
  double tau_star = 0.0;
  std::vector<double> p, alpha0, alpha0_p;
  double operator_residual = 0.0;  // max-norm of the 1D transformed operator on alpha0
};

/// Throws NoRoot for streams without a dispersion root.
KernelMode kernel_mode(const StreamSolution& stream, int n = 2048);

/// Mean and double-frequency parts of the second-order corrector
/// v1 = alpha1(p) + beta1(p) cos(2 tau* q), for v0 = scale * alpha0 cos(tau* q).
struct Corrector {
  std::vector<double> p, alpha1, beta1, alpha1_p, beta1_p;
  double closed_form_defect = 0.0;  // max |alpha1 - closed-form mean solution|
  double solve_residual = 0.0;
};

Corrector corrector_v1(const StreamSolution& stream, double scale = 1.0, int n = 2048);

/// (1 - F^-2)^-1 int_0^1 (3/2) alpha0_p^2 / H_p dp.
double c1_coefficient(const StreamSolution& stream);

/// a1(p) = int_0^p ((3/2) alpha0_p^2 / H_p + H_p^3 c1) of the small-tau* reduction
/// v1 ~ a1 cos^2(tau* q), on n + 1 uniform points.
std::vector<double> reduced_corrector(const StreamSolution& stream, int n = 2048);

/// The same quadrature for a sampled alpha0_p and H_p on a uniform p-grid.
double c1_from_samples(const std::vector<double>& alpha0_p, const std::vector<double>& H_p,
                       double F);

struct Lambda2Mu2 {
  double lambda2 = 0.0;
  double mu2 = 0.0;
  double lambda2_leading = 0.0;    // small-tau* leading order through c1, coefficient 9/8
  double lambda2_corrected = 0.0;  // same with coefficient 5/8 (beta1 ~ -alpha1/3 at small tau*)
  double c1 = 0.0;
};

Lambda2Mu2 lambda2_mu2(const StreamSolution& stream, int n = 2048);

struct ExpansionResult {
  double tau_star = 0.0;
  KernelMode kernel;
  Corrector corrector;
  double c1 = 0.0, lambda2 = 0.0, mu2 = 0.0, lambda2_leading = 0.0, lambda2_corrected = 0.0;
  double kernel_residual = 0.0;
  double closed_form_defect = 0.0;
  double solve_residual = 0.0;
};

ExpansionResult expand(const StreamSolution& stream, int n = 2048);

struct PlugBack {
  std::vector<double> t, residual;
  double exponent = 0.0;  // least-squares slope of log residual against log t
};

/// Residual of the hodograph system at h = H + t v0 + t^2 v1, lambda = 1 + lambda2 t^2,
/// relative to the residual at h = H, on an n_q x n_p grid with period 2 pi / tau*.
PlugBack plug_back(const StreamSolution& stream, const ExpansionResult& ex,
                   const std::vector<double>& t_list, int n_q = 15);

}  // namespace wavebranch
