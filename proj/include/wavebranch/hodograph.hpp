#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "wavebranch/exec.hpp"
#include "wavebranch/vorticity.hpp"

namespace wavebranch {

/// Tensor grid on the half period for even, Lambda0-periodic grid functions
/// h(q, p). q is Fourier-collocated on an odd number n_q of points per period
/// (an even request is raised by one), folded to M + 1 = (n_q + 1)/2 nodes
/// q_i = i Lambda0 / n_q; p uses N uniform intervals. Grid functions are
/// stored as (M + 1) x (N + 1) matrices.
struct HodographGrid {
  int n_q = 0, M = 0, N = 0;
  double Lambda0 = 0.0, dp = 0.0;
  std::vector<double> q, p;
  Eigen::MatrixXd D_even;  // derivative of even data, output odd
  Eigen::MatrixXd D_odd;   // derivative of odd data, output even
  std::vector<double> omega_flux;  // (Omega(p_{j+1/2}) - Omega(p_{j-1/2})) / dp
  Eigen::VectorXd trough_weights;  // value at q = Lambda0/2 from nodal values

  static HodographGrid make(int n_q, int N, double Lambda0, const VorticityModel& model);

  int unknowns() const { return (M + 1) * N; }
  int index(int i, int j) const { return i * N + (j - 1); }
};

/// Interior rows (conservative divergence of the hodograph system) for
/// j = 1..N-1 and the Bernoulli row at j = N, in `index` order. Throws
/// HodographBreakdown when a p-difference of h is <= 1e-8.
Eigen::VectorXd hodograph_equations(const HodographGrid& g, const Eigen::MatrixXd& h,
                                    double lambda, double R, Exec exec = Exec::Serial);

/// Jacobian of hodograph_equations with respect to the interior unknowns
/// h(i, j), j >= 1, and (optionally) with respect to lambda.
Eigen::SparseMatrix<double> hodograph_jacobian(const HodographGrid& g, const Eigen::MatrixXd& h,
                                               double lambda, Eigen::VectorXd* d_lambda = nullptr);

/// Discrete uniform stream: 1/(2 P^2) + Omega(p) is constant across half
/// points and the Bernoulli row holds at p = 1.
struct DiscreteStream {
  std::vector<double> h;  // N + 1 values, h[0] = 0
  double C = 0.0;         // the constant, discrete analogue of s^2 / 2
};

/// Solves for the discrete stream on N intervals with the root nearest to
/// `C_guess` on the side where the Bernoulli residual decreases in C.
DiscreteStream discrete_stream(const VorticityModel& model, int N, double R, double C_guess,
                               double C_cap);

/// Boundary residual of the linearised discrete problem for the mode
/// alpha(p) cos(tau q) with alpha(0) = 0, alpha(1) = 1; fills alpha when given.
double discrete_dispersion(const std::vector<double>& h0, double tau,
                           std::vector<double>* alpha = nullptr);

/// Root of discrete_dispersion near tau_guess.
double discrete_tau_star(const std::vector<double>& h0, double tau_guess);

/// Fourier-cosine interpolation in q of folded even data at arbitrary q.
class CosineInterpolant {
 public:
  CosineInterpolant() = default;
  CosineInterpolant(const HodographGrid& g, const Eigen::VectorXd& column);
  double operator()(double q) const;
  double derivative(double q) const;

 private:
  std::vector<double> a_;
  double k0_ = 0.0;
};

}  // namespace wavebranch
