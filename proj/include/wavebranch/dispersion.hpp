#pragma once

#include <map>
#include <optional>
#include <vector>

#include "wavebranch/stream.hpp"

namespace wavebranch {

/// gamma(., tau) on a uniform Y-grid with gamma(0) = 0, gamma(d) = 1.
struct GammaProfile {
  double tau = 0.0;
  std::vector<double> y, gamma, gamma_y;
  double end_slope = 0.0;  // gamma'(d, tau)
  int steps = 0;           // RK4 steps used
};

/// Shooting for gamma'' + omega'(U) gamma - tau^2 gamma = 0. The profile is
/// returned at n_out uniform nodes (n_out - 1 must divide the step count).
GammaProfile gamma_solve(const StreamSolution& stream, double tau, int n_out = 257);

/// sigma(tau) = kappa gamma'(d) - 1/kappa + omega(1).
double sigma(const StreamSolution& stream, double tau);

struct SigmaForms {
  double primary;    // kappa gamma'(d) - 1/kappa + omega(1)
  double via_rho0;   // kappa gamma'(d) - kappa rho0
};
SigmaForms sigma_forms(const StreamSolution& stream, double tau);

struct TauStar {
  std::optional<double> tau_star;
  std::optional<double> Lambda0;
  double sigma0 = 0.0;
};

/// Positive root of sigma, if sigma(0) < 0.
TauStar tau_star(const StreamSolution& stream);

struct SigmaZeroIdentity {
  double lhs;      // sigma(0)
  double rhs;      // 3 (F^2 - 1) / (2 kappa)
  double defect;   // lhs - rhs
  double direct;   // (F^2 - 1) / kappa
};
SigmaZeroIdentity sigma_zero_identity(const StreamSolution& stream);

struct DispersionProfile {
  std::vector<double> tau_grid;
  std::vector<double> sigma_values;
  std::optional<double> tau_star;
  std::optional<double> Lambda0;
  std::map<double, GammaProfile> gamma_cache;
};

DispersionProfile dispersion_profile(const StreamSolution& stream,
                                     const std::vector<double>& tau_grid,
                                     bool keep_profiles = false);

}  // namespace wavebranch
