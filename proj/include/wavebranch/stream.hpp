#pragma once

#include <optional>
#include <vector>

#include "wavebranch/interp.hpp"
#include "wavebranch/quadrature.hpp"
#include "wavebranch/vorticity.hpp"

namespace wavebranch {

/// Integral over [0, 1] of f(tau), splitting at the maximisers of Omega and
/// clustering nodes toward them, where s^2 - 2 Omega can vanish.
quad::Result integrate_unit(const VorticityModel& model, const quad::Integrand& f,
                            quad::Tolerance tol = {});

struct DepthResult {
  double value;
  bool accuracy_warning;  // s - s0 < 1e-3: endpoint singularity nearly active
};

/// d(s) = int_0^1 dtau / sqrt(s^2 - 2 Omega(tau)). Throws SingularInput when
/// s <= s0 (s = s0 is accepted when d(s0) is finite, i.e. not CaseI).
DepthResult depth(const VorticityModel& model, double s, quad::Tolerance tol = {});

/// Bernoulli constant along the uniform-stream family: s^2/2 + d(s) - Omega(1).
double bernoulli(const VorticityModel& model, double s, quad::Tolerance tol = {});

/// int_0^1 H_p^3 dp = int_0^1 (s^2 - 2 Omega)^{-3/2}; equals 1/F^2.
double inverse_froude_squared(const VorticityModel& model, double s, quad::Tolerance tol = {});

struct StreamSample {
  double Y, U, U_Y;
};

struct HodographSample {
  double p, H, H_p;
};

/// Uniform stream (U(Y), d) with U(0) = 0, U(d) = 1, U'(0) = s.
class StreamSolution {
 public:
  StreamSolution() = default;

  const VorticityModel& model() const { return model_; }
  double s() const { return s_; }
  double d() const { return d_; }
  double kappa() const { return kappa_; }
  double rho0() const { return rho0_; }
  double R() const { return R_; }
  /// Froude number from 1/F^2 = int_0^d dY / U'(Y)^2.
  double F() const { return F_; }
  bool accuracy_warning() const { return accuracy_warning_; }

  const std::vector<StreamSample>& samples() const { return samples_; }
  const std::vector<HodographSample>& hodograph_samples() const { return h_samples_; }

  double U(double Y) const;
  double U_Y(double Y) const;
  double U_YY(double Y) const;
  /// Hodograph profile H(p): the depth at which U = p.
  double H(double p) const;
  double H_p(double p) const;
  double H_pp(double p) const;

 private:
  friend StreamSolution solve_stream(const VorticityModel&, double, int, quad::Tolerance);

  VorticityModel model_ = VorticityModel::zero();
  double s_ = 0, d_ = 0, kappa_ = 0, rho0_ = 0, R_ = 0, F_ = 0;
  bool accuracy_warning_ = false;
  std::vector<StreamSample> samples_;
  std::vector<HodographSample> h_samples_;
  MonotoneCubic u_of_y_, h_of_p_;
};

/// Builds the stream by evaluating Y(U) by quadrature at n_samples uniform
/// U-values and inverting with a monotone cubic.
StreamSolution solve_stream(const VorticityModel& model, double s, int n_samples = 512,
                            quad::Tolerance tol = {});

struct BernoulliCurve {
  double s_c;
  double R_c;
  double R_0;  // +inf in CaseI
  bool R_0_finite;
};

BernoulliCurve bernoulli_curve(const VorticityModel& model);

struct BernoulliRoots {
  std::optional<double> s_plus;   // subcritical root in (s0, s_c)
  std::optional<double> s_minus;  // supercritical root in (s_c, inf)
};

/// Solves R(s) = R. Throws NoSolution when R < R_c.
BernoulliRoots invert_bernoulli(const VorticityModel& model, double R);
BernoulliRoots invert_bernoulli(const VorticityModel& model, const BernoulliCurve& curve, double R,
                                double f_tol = 1e-12);

struct FroudeReport {
  double F;                 // canonical: 1/F^2 = int_0^d dY / U'^2
  double F_depth_slope;     // 1/F^2 = -d'(s)/s, central difference h = 1e-5
  double F_hodograph;       // 1/F^2 = int_0^1 H_p^3 dp
  double F_printed_exponent;  // (int_0^d dY / U'^2)^{-2}; kept only as a diagnostic
  double residual_slope;
  double residual_hodograph;
};

FroudeReport froude(const StreamSolution& sol);

struct AsymptoticRow {
  double F, s, R, defect;  // defect = R - F^{4/3} / 2
};

/// For each F > 1, the supercritical s with F(s) = F and the defect of the
/// large-F Bernoulli asymptotics.
std::vector<AsymptoticRow> r_asymptotic_check(const VorticityModel& model,
                                              const std::vector<double>& F_list);

/// Solves F(s) = F on (s_c, inf).
double s_for_froude(const VorticityModel& model, const BernoulliCurve& curve, double F);

struct UpperBoundReport {
  double bound;      // right-hand side B
  double d;          // supercritical depth d(s_minus)
  double d_plus;     // subcritical depth d(s_plus)
  double integral;   // int_0^d (U_Y^2 - 1/d^2) dY
  double omega0;
  bool holds;        // R/2 <= B
};

/// Right-hand side of the a-priori Bernoulli bound for solitary waves.
UpperBoundReport r_upper_bound(const VorticityModel& model, double R);

}  // namespace wavebranch
