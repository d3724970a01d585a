#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "wavebranch/hodograph.hpp"
#include "wavebranch/spectra.hpp"
#include "wavebranch/stream.hpp"

namespace wavebranch {

/// Everything fixed along one Stokes branch: the subcritical stream at R, the
/// discrete base profile and the period from the discrete dispersion root.
struct BranchSetup {
  VorticityModel model = VorticityModel::zero();
  double R = 0.0;
  StreamSolution stream;        // continuous subcritical stream s_plus(R)
  double tau_star = 0.0;        // continuous dispersion root
  double tau_star_h = 0.0;      // root of the discretised problem; Lambda0 = 2 pi / tau_star_h
  HodographGrid grid;
  DiscreteStream base;
  std::vector<double> alpha_h;  // discrete kernel profile, alpha_h(1) = 1
};

/// Builds the setup for R in (R_c, R_0). Grid sizes: n_q points per period, n_p intervals.
BranchSetup make_branch_setup(const VorticityModel& model, double R, int n_q = 64, int n_p = 64);

struct WaveField {
  Eigen::MatrixXd h;  // (M + 1) x (N + 1), folded half period
  double lambda = 1.0;
  double R = 0.0;
  double amplitude = 0.0;  // h(0, 1) - h(Lambda0 / 2, 1)
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> residual_history;
};

/// The trivial field h = H on the grid, lambda = 1.
WaveField uniform_field(const BranchSetup& setup);

double amplitude_of(const HodographGrid& g, const Eigen::MatrixXd& h);

struct HodographResidual {
  Eigen::MatrixXd interior;  // (M + 1) x (N - 1), levels j = 1..N-1
  Eigen::VectorXd boundary;  // M + 1 values at p = 1
};

/// Residual of the perturbed field h + w relative to h (both at the field's lambda).
/// w must vanish at p = 0. Throws HodographBreakdown when (h + w)_p <= 1e-8.
HodographResidual residual(const BranchSetup& setup, const WaveField& field,
                           const Eigen::MatrixXd& w);

/// Linearisation at the field: interior A w, and N w = -(linearised boundary row).
HodographResidual frechet_apply(const BranchSetup& setup, const WaveField& field,
                                const Eigen::MatrixXd& w);

struct NewtonOptions {
  int max_iter = 25;
  double tol = 1e-10;
  double damping = 1.0;  // initial step fraction, increased back to 1 after success
};

/// Solves the hodograph system with h(0,1) - h(Lambda0/2,1) = amplitude_target,
/// starting from `guess`. Amplitude 0 returns the uniform field.
WaveField newton_solve(const BranchSetup& setup, const WaveField& guess, double amplitude_target,
                       const NewtonOptions& opt = {});

struct BranchPoint {
  double amplitude = 0.0;
  WaveField field;
  double lambda = 1.0;
  double Lambda = 0.0;  // period Lambda0 / lambda
  double mu0 = 0.0, mu1 = 0.0;
  bool spectrum_done = false;
  std::string status = "converged";
};

struct BranchState {
  std::vector<BranchPoint> points;
  bool stopped = false;
  std::string stop_reason;
};

/// Branch with the single trivial point at amplitude 0.
BranchState branch_start(const BranchSetup& setup);

/// Appends n_steps points spaced by d_amplitude: linear predictor in amplitude,
/// Newton corrector. Stops early with `stopped` set on failure.
BranchState branch_extend(const BranchSetup& setup, BranchState state, double d_amplitude,
                          int n_steps, const NewtonOptions& opt = {}, bool with_spectrum = true);

/// Lowest k eigenvalues of A with the boundary operator as a constraint, in the
/// even Lambda0-periodic class. Eigenvectors are reported on the folded grid,
/// row-major (i, j), j = 1..N.
SpectrumReport hodograph_spectrum(const BranchSetup& setup, const WaveField& field, int k);

struct LambdaFit {
  double c2 = 0.0, c4 = 0.0;  // (lambda - 1) / a^2 = c2 + c4 a^2
  double lambda2 = 0.0;       // in the expansion normalisation: c2 (2 / kappa)^2
};

/// Least-squares fit over the nontrivial branch points.
LambdaFit fit_lambda2(const BranchSetup& setup, const BranchState& state);

}  // namespace wavebranch
