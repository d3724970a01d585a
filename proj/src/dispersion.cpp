#include "wavebranch/dispersion.hpp"

#include <cmath>
#include <numbers>

#include "wavebranch/error.hpp"
#include "wavebranch/roots.hpp"

namespace wavebranch {
namespace {

constexpr int kStartSteps = 2048;
constexpr int kMaxSteps = 1 << 18;
constexpr double kRichardsonTol = 1e-10;

struct Shot {
  // Normalised state at the output nodes and the log of the scale factor.
  std::vector<double> g, gp, log_scale;
  double end_ratio;  // gamma'(d) / gamma(d)
};

// gamma'' = (tau^2 - omega'(U(y))) gamma from gamma(0) = 0, gamma'(0) = 1.
Shot shoot(const StreamSolution& st, double tau, int n, int stride) {
  const auto& model = st.model();
  const double d = st.d(), h = d / n, t2 = tau * tau;
  auto q = [&](double y) { return t2 - model.omega_prime(st.U(y)); };
  Shot out;
  double g = 0.0, gp = 1.0, ls = 0.0;
  double q0 = q(0.0);
  auto record = [&] {
    out.g.push_back(g);
    out.gp.push_back(gp);
    out.log_scale.push_back(ls);
  };
  record();
  for (int i = 0; i < n; ++i) {
    const double y = i * h;
    const double qm = q(y + 0.5 * h), q1 = q(y + h);
    const double k1g = gp, k1p = q0 * g;
    const double k2g = gp + 0.5 * h * k1p, k2p = qm * (g + 0.5 * h * k1g);
    const double k3g = gp + 0.5 * h * k2p, k3p = qm * (g + 0.5 * h * k2g);
    const double k4g = gp + h * k3p, k4p = q1 * (g + h * k3g);
    g += h / 6.0 * (k1g + 2 * k2g + 2 * k3g + k4g);
    gp += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    q0 = q1;
    const double mag = std::hypot(g, gp);
    if (mag > 1e100 || mag < 1e-100) {
      g /= mag;
      gp /= mag;
      ls += std::log(mag);
    }
    if ((i + 1) % stride == 0) record();
  }
  if (std::abs(g) < 1e-13 * std::hypot(g, gp)) {
    throw Error("dispersion", ErrorKind::ShootingDegeneracy, "gamma(d) vanishes for this tau");
  }
  out.end_ratio = gp / g;
  return out;
}

}  // namespace

GammaProfile gamma_solve(const StreamSolution& stream, double tau, int n_out) {
  if (!std::isfinite(tau)) throw Error("dispersion", ErrorKind::Validation, "tau must be finite");
  if (n_out < 2) n_out = 2;
  const int intervals = n_out - 1;
  int n = kStartSteps;
  while (n % intervals != 0) ++n;
  Shot coarse = shoot(stream, tau, n, n / intervals);
  for (;;) {
    Shot fine = shoot(stream, tau, 2 * n, 2 * n / intervals);
    const double diff = std::abs(fine.end_ratio - coarse.end_ratio);
    n *= 2;
    coarse = std::move(fine);
    if (diff <= kRichardsonTol * std::max(1.0, std::abs(coarse.end_ratio))) break;
    if (n >= kMaxSteps) {
      throw Error("dispersion", ErrorKind::NonConvergence, "RK4 step refinement did not settle");
    }
  }
  GammaProfile prof;
  prof.tau = std::abs(tau);
  prof.steps = n;
  const double gd = coarse.g.back(), lsd = coarse.log_scale.back();
  prof.y.resize(n_out);
  prof.gamma.resize(n_out);
  prof.gamma_y.resize(n_out);
  for (int i = 0; i < n_out; ++i) {
    const double f = std::exp(coarse.log_scale[i] - lsd) / gd;
    prof.y[i] = stream.d() * i / intervals;
    prof.gamma[i] = coarse.g[i] * f;
    prof.gamma_y[i] = coarse.gp[i] * f;
  }
  prof.gamma.back() = 1.0;
  prof.end_slope = coarse.end_ratio;
  return prof;
}

SigmaForms sigma_forms(const StreamSolution& stream, double tau) {
  const double slope = gamma_solve(stream, tau, 2).end_slope;
  const double k = stream.kappa();
  return {k * slope - 1.0 / k + stream.model().omega(1.0), k * slope - k * stream.rho0()};
}

double sigma(const StreamSolution& stream, double tau) { return sigma_forms(stream, tau).primary; }

TauStar tau_star(const StreamSolution& stream) {
  TauStar out;
  out.sigma0 = sigma(stream, 0.0);
  if (out.sigma0 >= 0.0) return out;
  auto f = [&](double t) { return sigma(stream, t); };
  double lo = 0.0, flo = out.sigma0;
  double hi = 1e-3, fhi = f(hi);
  while (fhi < 0.0) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    if (hi > 1e3) {
      throw Error("dispersion", ErrorKind::BracketFailure, "no sign change of sigma below 1e3");
    }
    fhi = f(hi);
  }
  auto r = roots::bracketed(f, lo, flo, hi, fhi, {.f_tol = 1e-12, .x_tol = 1e-15, .max_iter = 400});
  if (!r) throw Error("dispersion", ErrorKind::BracketFailure, "dispersion root not bracketed");
  out.tau_star = r->x;
  out.Lambda0 = 2.0 * std::numbers::pi / r->x;
  return out;
}

SigmaZeroIdentity sigma_zero_identity(const StreamSolution& stream) {
  SigmaZeroIdentity id{};
  const double F = stream.F(), k = stream.kappa();
  id.lhs = sigma(stream, 0.0);
  id.rhs = 3.0 * (F * F - 1.0) / (2.0 * k);
  id.defect = id.lhs - id.rhs;
  id.direct = (F * F - 1.0) / k;
  return id;
}

DispersionProfile dispersion_profile(const StreamSolution& stream,
                                     const std::vector<double>& tau_grid, bool keep_profiles) {
  DispersionProfile prof;
  prof.tau_grid = tau_grid;
  prof.sigma_values.reserve(tau_grid.size());
  const double k = stream.kappa(), w1 = stream.model().omega(1.0);
  for (double t : tau_grid) {
    auto g = gamma_solve(stream, t, keep_profiles ? 257 : 2);
    prof.sigma_values.push_back(k * g.end_slope - 1.0 / k + w1);
    if (keep_profiles) prof.gamma_cache.emplace(t, std::move(g));
  }
  const auto ts = tau_star(stream);
  prof.tau_star = ts.tau_star;
  prof.Lambda0 = ts.Lambda0;
  return prof;
}

}  // namespace wavebranch
