#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wavebranch/continuation.hpp"
#include "wavebranch/exec.hpp"
#include "wavebranch/spectra.hpp"
#include "wavebranch/stream.hpp"

namespace wavebranch {

/// A wave in the physical plane on X in [0, L] (even extension implied), with
/// the stream function sampled on the boundary-fitted grid Y = eta xi(X).
/// Matrices are indexed (X node, eta node).
struct PhysicalWave {
  double R = 0.0;
  double lambda = 1.0;
  double L = 0.0;
  bool periodic = false;  // X = L is a crest/trough symmetry line, not a truncation
  std::vector<double> X, xi, xi_x, eta;
  Eigen::MatrixXd psi, psi_X, psi_Y, psi_XY, psi_YY;
  std::vector<double> rho_exact;  // surface Robin coefficient from exact derivatives
  StreamSolution stream_limit;

  const VorticityModel& model() const { return stream_limit.model(); }
  int n_x() const { return static_cast<int>(X.size()) - 1; }
  int n_y() const { return static_cast<int>(eta.size()) - 1; }
};

/// The flat wave xi = d, Psi = U(Y) on [0, L].
PhysicalWave uniform_wave(const StreamSolution& stream, double L, int n_x, int n_y);

/// Physical-plane reconstruction of a hodograph field over the half period
/// L = Lambda0 / (2 lambda). Throws HodographBreakdown on a non-monotone column.
PhysicalWave reconstruct_physical(const BranchSetup& setup, const WaveField& field, int n_x,
                                  int n_y);

struct RobinCoefficient {
  std::vector<double> X, rho;
};

/// rho = (1 + Psi_X Psi_XY + Psi_Y Psi_YY) / (Psi_Y |grad Psi|) on the surface, with
/// eta-derivatives from fourth-order one-sided differences of the Psi samples.
/// Throws Stagnation when Psi_Y < 1e-8 on the surface.
RobinCoefficient robin_coefficient(const PhysicalWave& wave);

/// Default truncation length max(10, 8 / sqrt(nu0)) for a stream with nu0 > 0.
double default_truncation(const StreamSolution& stream);

/// Lowest k eigenvalues of -Lap w - omega'(Psi) w = mu w, w = 0 at Y = 0,
/// d_n w = rho w on the surface, Neumann at X = 0 and X = L, by Q1 finite
/// elements on the scaled rectangle. L, n_x, n_y <= 0 keep the wave's own grid;
/// other values resample the wave (flat waves are rebuilt from the stream).
SpectrumReport physical_spectrum(const PhysicalWave& wave, int k, double L = 0.0, int n_x = 0,
                                 int n_y = 0);

/// Negative eigenvalue counts (below -1e-9) for a list of waves.
std::vector<int> negative_count_series(const std::vector<PhysicalWave>& waves, int k,
                                       Exec exec = Exec::Parallel);

/// Residual of the derivative mode Psi_X under the discrete operator (row divided
/// by its lumped mass) at interior nodes, scaled by max |Psi_X|; 0 for flat waves.
double psi_x_residual(const PhysicalWave& wave);

/// Flow force int_0^xi (Psi_Y^2 - Psi_X^2 + 2 (R - Y) + 2 int_Psi^1 omega) dY at each X.
std::vector<double> flow_force(const PhysicalWave& wave, const std::vector<double>& x_positions);

/// The same with the integrand Psi_Y^2 - Psi_X^2 + R - Y + int_Psi^1 omega.
std::vector<double> flow_force_printed(const PhysicalWave& wave,
                                       const std::vector<double>& x_positions);

}  // namespace wavebranch
