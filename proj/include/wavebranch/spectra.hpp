#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "wavebranch/stream.hpp"

namespace wavebranch {

enum class ProblemTag { Interval1D, Hodograph1D, Physical2D, Hodograph2D };

const char* to_string(ProblemTag t);

struct SpectrumReport {
  std::vector<double> eigenvalues;                // ascending, repeated by multiplicity
  std::vector<std::vector<double>> eigenvectors;  // unit L2, first significant entry positive
  std::vector<double> grid;                       // abscissae of 1D eigenvector samples
  std::vector<double> residuals;                  // relative eigenpair residuals
  int negative_count = 0;
  std::optional<double> nu0_reference;
  ProblemTag problem_tag = ProblemTag::Interval1D;
  int grid_points = 0;
  bool truncation_warning = false;
};

/// Eigenvalues below -1e-9.
int count_negative(const std::vector<double>& eigenvalues);

/// Lowest k eigenpairs of -v'' - omega'(U) v = nu v, v(0) = 0, v'(d) = rho0 v(d).
SpectrumReport interval_spectrum(const StreamSolution& stream, int k, int n_start = 1024);

/// Interval eigenvalues at a fixed resolution n (no refinement).
std::vector<double> interval_eigenvalues(const StreamSolution& stream, int k, int n);

/// int_0^d (v'^2 - omega'(U) v^2) dY - rho0 v(d)^2 for the piecewise-linear v
/// through (0, 0) and (knots[i], values[i]), normalised to unit L2 norm.
double interval_quadratic_form(const StreamSolution& stream, const std::vector<double>& knots,
                               const std::vector<double>& values);

struct CoercivityResult {
  bool positive = true;
  double min_value = 0.0;
  int trials = 0;
  std::optional<double> gamma_trial;  // form value at gamma(., tau*), when tau* exists
};

CoercivityResult coercivity_check(const StreamSolution& stream, int trials,
                                  std::uint64_t seed = 20240611);

struct TransformedSolution {
  std::vector<double> p, u;
  double residual = 0.0;  // max-norm residual of the discrete system
};

/// Solves -(u_p / H_p^3)_p + tau^2 u / H_p = F, u(0) = 0, -u_p / H_p^3 + u = c at p = 1
/// on n uniform cells; second-order solutions at n and 2n are combined by
/// Richardson extrapolation. Throws NearResonance when |tau - tau*| < 1e-6.
TransformedSolution transformed_solve(const StreamSolution& stream, double tau,
                                      const std::function<double(double)>& F_rhs, double c,
                                      std::optional<double> tau_star = std::nullopt,
                                      int n = 2048);

/// Same problem with F given at n + 1 uniform p-samples.
TransformedSolution transformed_solve(const StreamSolution& stream, double tau,
                                      const std::vector<double>& F_samples, double c,
                                      std::optional<double> tau_star = std::nullopt);

/// Independent route: solve the vertical problem v'' + omega'(U) v - tau^2 v = f,
/// v(0) = 0, v'(d) - rho0 v(d) = g by two-sided shooting and a Green function,
/// with f(Y) = -F(U(Y)), g = -c / kappa, and map back by u(p) = v(H(p)) H_p(p).
std::vector<double> transformed_solve_vertical(const StreamSolution& stream, double tau,
                                               const std::function<double(double)>& F_rhs,
                                               double c, const std::vector<double>& p);

struct KernelReport {
  int small_count = 0;          // singular values below 1e-6 * median
  double smallest = 0.0;
  double median = 0.0;
  std::vector<double> p, vector;  // kernel vector, max-norm 1, positive at p = 1
  double alpha_mismatch = 0.0;  // max difference to gamma(H(p); tau) H_p, same normalisation
};

/// Singular structure of the homogeneous discrete transformed problem at tau.
KernelReport transformed_kernel(const StreamSolution& stream, double tau, int n = 2048);

}  // namespace wavebranch
