#include "wavebranch/stream.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wavebranch/error.hpp"
#include "wavebranch/roots.hpp"

namespace wavebranch {
namespace {

constexpr double kWarnGap = 1e-3;

void require_s(const VorticityModel& model, double s, bool allow_s0) {
  if (!std::isfinite(s)) throw Error("stream", ErrorKind::Validation, "s must be finite");
  const double s0 = model.s0();
  const bool ok = allow_s0 ? s >= s0 : s > s0;
  if (!ok) {
    std::ostringstream os;
    os << "s = " << s << " must exceed s0 = " << s0;
    throw Error("stream", ErrorKind::SingularInput, os.str());
  }
}

}  // namespace

quad::Result integrate_unit(const VorticityModel& model, const quad::Integrand& f,
                            quad::Tolerance tol) {
  std::vector<double> cuts{0.0};
  for (double t : model.argmax()) {
    if (t > 0.0 && t < 1.0) cuts.push_back(t);
  }
  cuts.push_back(1.0);
  auto is_max = [&](double t) {
    return std::any_of(model.argmax().begin(), model.argmax().end(),
                       [&](double m) { return std::abs(m - t) < 1e-12; });
  };
  quad::Result total;
  auto add = [&](const quad::Result& r) {
    total.value += r.value;
    total.error += r.error;
    total.converged = total.converged && r.converged;
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const bool ma = is_max(a), mb = is_max(b);
    if (ma && mb) {
      const double m = 0.5 * (a + b);
      add(quad::integrate_clustered(f, a, m, false, tol));
      add(quad::integrate_clustered(f, m, b, true, tol));
    } else if (ma || mb) {
      add(quad::integrate_clustered(f, a, b, mb, tol));
    } else {
      add(quad::integrate(f, a, b, tol));
    }
  }
  return total;
}

DepthResult depth(const VorticityModel& model, double s, quad::Tolerance tol) {
  require_s(model, s, !model.depth_diverges_at_s0());
  const auto r = integrate_unit(
      model, [&](double t) { return 1.0 / std::sqrt(model.gap(s, t)); }, tol);
  if (!std::isfinite(r.value)) {
    throw Error("stream", ErrorKind::SingularInput, "depth integral diverges");
  }
  return {r.value, s - model.s0() < kWarnGap};
}

double bernoulli(const VorticityModel& model, double s, quad::Tolerance tol) {
  return 0.5 * s * s + depth(model, s, tol).value - model.capital_omega(1.0);
}

double inverse_froude_squared(const VorticityModel& model, double s, quad::Tolerance tol) {
  require_s(model, s, false);
  return integrate_unit(
             model,
             [&](double t) {
               const double g = model.gap(s, t);
               return 1.0 / (g * std::sqrt(g));
             },
             tol)
      .value;
}

StreamSolution solve_stream(const VorticityModel& model, double s, int n_samples,
                            quad::Tolerance tol) {
  if (n_samples < 16) throw Error("stream", ErrorKind::Validation, "n_samples must be >= 16");
  require_s(model, s, false);
  StreamSolution sol;
  sol.model_ = model;
  sol.s_ = s;
  const auto dr = depth(model, s, tol);
  sol.accuracy_warning_ = dr.accuracy_warning;

  // Y(U) = int_0^U dtau / sqrt(gap), accumulated between uniform U-nodes.
  const int n = n_samples;
  std::vector<double> U(n), Y(n), slope(n);
  auto inv_sqrt_gap = [&](double t) { return 1.0 / std::sqrt(model.gap(s, t)); };
  Y[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    U[i] = static_cast<double>(i) / (n - 1);
    slope[i] = std::sqrt(model.gap(s, U[i]));
    if (i == 0) continue;
    const double a = U[i - 1], b = U[i];
    double piece = 0.0;
    // Cluster toward any maximiser touching the subinterval.
    bool done = false;
    for (double m : model.argmax()) {
      if (m >= a && m <= b) {
        if (m > a) piece += quad::integrate_clustered(inv_sqrt_gap, a, m, true, tol).value;
        if (m < b) piece += quad::integrate_clustered(inv_sqrt_gap, m, b, false, tol).value;
        done = true;
        break;
      }
    }
    if (!done) piece = quad::integrate(inv_sqrt_gap, a, b, tol).value;
    Y[i] = Y[i - 1] + piece;
  }
  // Pin the top node to the independently computed depth.
  const double drift = dr.value - Y[n - 1];
  for (int i = 1; i < n; ++i) Y[i] += drift * U[i];
  sol.d_ = dr.value;

  sol.samples_.resize(n);
  sol.h_samples_.resize(n);
  std::vector<double> inv_slope(n);
  for (int i = 0; i < n; ++i) {
    sol.samples_[i] = {Y[i], U[i], slope[i]};
    inv_slope[i] = slope[i] > 0 ? 1.0 / slope[i] : std::numeric_limits<double>::infinity();
    sol.h_samples_[i] = {U[i], Y[i], inv_slope[i]};
  }
  sol.u_of_y_ = MonotoneCubic(Y, U, slope, false);
  sol.h_of_p_ = MonotoneCubic(U, Y, inv_slope, false);

  sol.kappa_ = std::sqrt(model.gap(s, 1.0));
  sol.rho0_ = 1.0 / (sol.kappa_ * sol.kappa_) - model.omega(1.0) / sol.kappa_;
  sol.R_ = 0.5 * s * s + sol.d_ - model.capital_omega(1.0);

  // 1/F^2 = int_0^d dY / U'(Y)^2 in the Y variable.
  const auto inv_f2 = quad::integrate(
      [&](double y) {
        const double uy = sol.U_Y(y);
        return 1.0 / (uy * uy);
      },
      0.0, sol.d_, tol);
  sol.F_ = 1.0 / std::sqrt(inv_f2.value);
  return sol;
}

double StreamSolution::U(double Y) const { return std::clamp(u_of_y_(Y), 0.0, 1.0); }

double StreamSolution::U_Y(double Y) const { return std::sqrt(model_.gap(s_, U(Y))); }

double StreamSolution::U_YY(double Y) const { return -model_.omega(U(Y)); }

double StreamSolution::H(double p) const { return h_of_p_(std::clamp(p, 0.0, 1.0)); }

double StreamSolution::H_p(double p) const {
  return 1.0 / std::sqrt(model_.gap(s_, std::clamp(p, 0.0, 1.0)));
}

double StreamSolution::H_pp(double p) const {
  p = std::clamp(p, 0.0, 1.0);
  const double hp = H_p(p);
  return hp * hp * hp * model_.omega(p);
}

BernoulliCurve bernoulli_curve(const VorticityModel& model) {
  const double s0 = model.s0();
  // log(int H_p^3) is decreasing in s and vanishes at F = 1.
  auto g = [&](double s) { return std::log(inverse_froude_squared(model, s)); };
  double hi = s0 + 1.0;
  double ghi = g(hi);
  for (int k = 0; ghi > 0 && k < 200; ++k) {
    hi = s0 + 2.0 * (hi - s0);
    ghi = g(hi);
  }
  double lo = s0 + 0.5 * (hi - s0);
  double glo = g(lo);
  for (int k = 0; glo < 0 && k < 200; ++k) {
    hi = lo;
    ghi = glo;
    lo = s0 + 0.5 * (lo - s0);
    glo = g(lo);
  }
  auto r = roots::bracketed(g, lo, glo, hi, ghi, {.f_tol = 1e-15, .x_tol = 1e-15, .max_iter = 400});
  if (!r) throw Error("stream", ErrorKind::BracketFailure, "critical stream not bracketed");
  BernoulliCurve c{};
  c.s_c = r->x;
  c.R_c = bernoulli(model, c.s_c);
  c.R_0_finite = !model.depth_diverges_at_s0();
  c.R_0 = c.R_0_finite ? bernoulli(model, s0) : std::numeric_limits<double>::infinity();
  return c;
}

BernoulliRoots invert_bernoulli(const VorticityModel& model, double R) {
  return invert_bernoulli(model, bernoulli_curve(model), R);
}

BernoulliRoots invert_bernoulli(const VorticityModel& model, const BernoulliCurve& curve,
                                double R, double f_tol) {
  if (!std::isfinite(R)) throw Error("stream", ErrorKind::Validation, "R must be finite");
  if (R < curve.R_c - 1e-12) {
    std::ostringstream os;
    os << "R = " << R << " is below R_c = " << curve.R_c;
    throw Error("stream", ErrorKind::NoSolution, os.str());
  }
  BernoulliRoots out;
  if (R <= curve.R_c + 1e-12) {
    out.s_plus = out.s_minus = curve.s_c;
    return out;
  }
  const roots::Options opt{.f_tol = f_tol, .x_tol = 1e-15, .max_iter = 400};
  auto f = [&](double s) { return bernoulli(model, s) - R; };
  const double s0 = model.s0(), sc = curve.s_c;

  // Supercritical root.
  {
    double step = std::max(1.0, sc);
    double hi = sc + step, fhi = f(hi);
    for (int k = 0; fhi < 0 && k < 200; ++k) {
      step *= 2.0;
      hi = sc + step;
      fhi = f(hi);
    }
    auto r = roots::bracketed(f, sc, curve.R_c - R, hi, fhi, opt);
    if (!r) throw Error("stream", ErrorKind::BracketFailure, "supercritical root not bracketed");
    out.s_minus = r->x;
  }
  // Subcritical root.
  if (R < curve.R_0) {
    double lo, flo;
    if (curve.R_0_finite) {
      lo = s0;
      flo = curve.R_0 - R;
    } else {
      double gap = sc - s0;
      lo = s0 + 0.5 * gap;
      flo = f(lo);
      for (int k = 0; flo < 0 && k < 1000; ++k) {
        gap *= 0.5;
        lo = s0 + gap;
        flo = f(lo);
      }
    }
    auto r = roots::bracketed(f, lo, flo, sc, curve.R_c - R, opt);
    if (!r) throw Error("stream", ErrorKind::BracketFailure, "subcritical root not bracketed");
    out.s_plus = r->x;
  }
  return out;
}

FroudeReport froude(const StreamSolution& sol) {
  const auto& model = sol.model();
  const double s = sol.s();
  FroudeReport rep{};
  rep.F = sol.F();
  const double inv_f2 = 1.0 / (rep.F * rep.F);

  const double h = 1e-5;
  double slope_inv_f2;
  if (s - h > model.s0()) {
    const double dprime = (depth(model, s + h).value - depth(model, s - h).value) / (2 * h);
    slope_inv_f2 = -dprime / s;
  } else {
    const double dprime = (depth(model, s + 2 * h).value - depth(model, s + h).value) / h;
    slope_inv_f2 = -dprime / s;
  }
  rep.F_depth_slope = 1.0 / std::sqrt(slope_inv_f2);
  const double hod = inverse_froude_squared(model, s);
  rep.F_hodograph = 1.0 / std::sqrt(hod);
  rep.F_printed_exponent = std::pow(inv_f2, -2.0);
  rep.residual_slope = rep.F - rep.F_depth_slope;
  rep.residual_hodograph = rep.F - rep.F_hodograph;
  return rep;
}

double s_for_froude(const VorticityModel& model, const BernoulliCurve& curve, double F) {
  if (!(F > 1.0)) throw Error("stream", ErrorKind::Validation, "F must exceed 1");
  // -log(int H_p^3)/2 - log F is increasing in s.
  auto g = [&](double s) { return -0.5 * std::log(inverse_froude_squared(model, s)) - std::log(F); };
  const double sc = curve.s_c;
  double hi = 2.0 * std::max(sc, 1.0), ghi = g(hi);
  for (int k = 0; ghi < 0 && k < 200; ++k) {
    hi *= 2.0;
    ghi = g(hi);
  }
  auto r = roots::bracketed(g, sc, -std::log(F), hi, ghi,
                            {.f_tol = 1e-16, .x_tol = 1e-16, .max_iter = 400});
  if (!r) throw Error("stream", ErrorKind::BracketFailure, "Froude inversion not bracketed");
  return r->x;
}

std::vector<AsymptoticRow> r_asymptotic_check(const VorticityModel& model,
                                              const std::vector<double>& F_list) {
  const auto curve = bernoulli_curve(model);
  std::vector<AsymptoticRow> rows;
  for (double F : F_list) {
    const double s = s_for_froude(model, curve, F);
    const double R = bernoulli(model, s);
    rows.push_back({F, s, R, R - 0.5 * std::pow(F, 4.0 / 3.0)});
  }
  return rows;
}

UpperBoundReport r_upper_bound(const VorticityModel& model, double R) {
  const auto curve = bernoulli_curve(model);
  const auto roots = invert_bernoulli(model, curve, R);
  if (!roots.s_plus || !roots.s_minus) {
    throw Error("stream", ErrorKind::Domain, "R outside (R_c, R_0)");
  }
  UpperBoundReport rep{};
  rep.d = depth(model, *roots.s_minus).value;
  rep.d_plus = depth(model, *roots.s_plus).value;
  if (rep.d_plus - rep.d <= 1e-9) {
    throw Error("stream", ErrorKind::Domain, "d_plus - d too small for the bound");
  }
  const double s = *roots.s_minus;
  // int_0^d U_Y^2 dY = int_0^1 U_Y dtau.
  const double energy =
      integrate_unit(model, [&](double t) { return std::sqrt(model.gap(s, t)); }).value;
  rep.integral = energy - 1.0 / rep.d;
  rep.omega0 = model.omega0();
  const double gap = rep.d_plus - rep.d;
  rep.bound = 0.5 * rep.d + rep.integral / gap + 1.0 / (rep.d * rep.d_plus) +
              (1.0 + rep.d / gap) * rep.omega0;
  rep.holds = 0.5 * R <= rep.bound;
  return rep;
}

}  // namespace wavebranch
