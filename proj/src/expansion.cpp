#include "wavebranch/expansion.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "wavebranch/dispersion.hpp"
#include "wavebranch/error.hpp"
#include "wavebranch/hodograph.hpp"
#include "wavebranch/interp.hpp"
#include "wavebranch/spectra.hpp"

namespace wavebranch {
namespace {

// alpha0 and its flux beta = alpha0_p / H_p^3 at arbitrary p.
class Mode {
 public:
  Mode(const StreamSolution& st, double tau, double scale) : st_(st), tau_(tau), scale_(scale) {
    const auto g = gamma_solve(st, tau, 2049);
    std::vector<double> gyy(g.y.size());
    for (std::size_t i = 0; i < g.y.size(); ++i) {
      gyy[i] = (tau * tau - st.model().omega_prime(st.U(g.y[i]))) * g.gamma[i];
    }
    gamma_ = MonotoneCubic(g.y, g.gamma, g.gamma_y, false);
    gamma_y_ = MonotoneCubic(g.y, g.gamma_y, gyy, false);
    profile_ = g;
  }

  double alpha(double p) const { return scale_ * gamma_(st_.H(p)) * st_.H_p(p); }
  double alpha_p(double p) const {
    const double y = st_.H(p), hp = st_.H_p(p);
    return scale_ * (gamma_y_(y) * hp * hp + gamma_(y) * st_.H_pp(p));
  }
  double beta(double p) const {
    const double hp = st_.H_p(p);
    return alpha_p(p) / (hp * hp * hp);
  }
  double beta_p(double p) const { return tau_ * tau_ * alpha(p) / st_.H_p(p); }

  // Mean (sign = +1) and double-frequency (sign = -1) parts of the quadratic flux.
  double j(double p, double sign) const {
    const double hp = st_.H_p(p), a = alpha(p), b = beta(p);
    return sign * tau_ * tau_ * a * a / (4 * hp * hp) + 0.75 * b * b * hp * hp;
  }
  double j_p(double p, double sign) const {
    const double hp = st_.H_p(p), hpp = st_.H_pp(p);
    const double a = alpha(p), ap = alpha_p(p), b = beta(p), bp = beta_p(p);
    const double t2 = tau_ * tau_;
    return sign * (t2 * a * ap / (2 * hp * hp) - t2 * a * a * hpp / (2 * hp * hp * hp)) +
           1.5 * b * bp * hp * hp + 1.5 * b * b * hp * hpp;
  }
  double i2(double p) const {
    const double hp = st_.H_p(p);
    return -tau_ * tau_ * alpha(p) * alpha_p(p) / (hp * hp);
  }

  const GammaProfile& profile() const { return profile_; }

 private:
  const StreamSolution& st_;
  double tau_, scale_;
  MonotoneCubic gamma_, gamma_y_;
  GammaProfile profile_;
};

double require_tau_star(const StreamSolution& stream) {
  const auto ts = tau_star(stream);
  if (!ts.tau_star) {
    throw Error("expansion", ErrorKind::NoRoot, "stream is not subcritical: no dispersion root");
  }
  return *ts.tau_star;
}

double simpson(const std::vector<double>& f, double h) {
  const int n = static_cast<int>(f.size()) - 1;
  double s = f.front() + f.back();
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
  return s * h / 3.0;
}

std::vector<double> uniform_grid(int n) {
  std::vector<double> p(n + 1);
  for (int j = 0; j <= n; ++j) p[j] = static_cast<double>(j) / n;
  return p;
}

// Fourth-order finite-difference derivative on a uniform grid.
std::vector<double> derivative(const std::vector<double>& u, double h) {
  const int n = static_cast<int>(u.size()) - 1;
  std::vector<double> d(n + 1);
  for (int i = 2; i <= n - 2; ++i) d[i] = (u[i - 2] - 8 * u[i - 1] + 8 * u[i + 1] - u[i + 2]) / (12 * h);
  auto fwd = [&](int i, int s) {
    return s * (-25 * u[i] + 48 * u[i + s] - 36 * u[i + 2 * s] + 16 * u[i + 3 * s] - 3 * u[i + 4 * s]) /
           (12 * h);
  };
  d[0] = fwd(0, 1);
  d[1] = fwd(1, 1);
  d[n] = fwd(n, -1);
  d[n - 1] = fwd(n - 1, -1);
  return d;
}

}  // namespace

KernelMode kernel_mode(const StreamSolution& stream, int n) {
  KernelMode k;
  k.tau_star = require_tau_star(stream);
  const Mode m(stream, k.tau_star, 1.0);
  k.p = uniform_grid(n);
  k.alpha0.resize(n + 1);
  k.alpha0_p.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    k.alpha0[j] = m.alpha(k.p[j]);
    k.alpha0_p[j] = m.alpha_p(k.p[j]);
  }
  // -(u_p / H_p^3)_p + tau^2 u / H_p at the nodes, from three-point fluxes with
  // spacing h and h/2 combined to cancel the h^2 truncation term. The spacing is
  // kept coarse so that rounding in the profile is not amplified by 1/h^2.
  const double h = 1.0 / 256, t2 = k.tau_star * k.tau_star;
  auto op = [&](double p, double step) {
    const double up = m.alpha(p + step), u0 = m.alpha(p), um = m.alpha(p - step);
    const double ap = std::pow(stream.H_p(p + 0.5 * step), -3);
    const double am = std::pow(stream.H_p(p - 0.5 * step), -3);
    return -(ap * (up - u0) - am * (u0 - um)) / (step * step) + t2 * u0 / stream.H_p(p);
  };
  double res = 0.0;
  for (int j = 1; j < n; ++j) {
    if (k.p[j] < h || k.p[j] > 1.0 - h) continue;
    res = std::max(res, std::abs((4 * op(k.p[j], 0.5 * h) - op(k.p[j], h)) / 3));
  }
  const double hp1 = stream.H_p(1.0);
  res = std::max(res, std::abs(-m.alpha_p(1.0) / (hp1 * hp1 * hp1) + m.alpha(1.0)));
  k.operator_residual = res;
  return k;
}

Corrector corrector_v1(const StreamSolution& stream, double scale, int n) {
  const double tau = require_tau_star(stream);
  const Mode m(stream, tau, scale);
  const auto mean = transformed_solve(
      stream, 0.0, [&](double p) { return -m.j_p(p, 1.0); }, -m.j(1.0, 1.0), tau, n);
  const auto twice = transformed_solve(
      stream, 2 * tau, [&](double p) { return -(m.j_p(p, -1.0) + m.i2(p)); }, -m.j(1.0, -1.0),
      tau, n);
  Corrector c;
  c.p = mean.p;
  c.alpha1 = mean.u;
  c.beta1 = twice.u;
  const double h = 1.0 / n;
  c.alpha1_p = derivative(c.alpha1, h);
  c.beta1_p = derivative(c.beta1, h);
  c.solve_residual = std::max(mean.residual, twice.residual);

  // Closed form of the mean part: alpha1 = int_0^p H_p^3 (j0 + C).
  const double invF2 = 1.0 / (stream.F() * stream.F());
  const auto w3 = [&](double p) { return std::pow(stream.H_p(p), 3); };
  const double C =
      integrate_unit(stream.model(), [&](double p) { return w3(p) * m.j(p, 1.0); }).value /
      (1.0 - invF2);
  double acc = 0.0, defect = std::abs(c.alpha1[0]);
  for (int j = 1; j <= n; ++j) {
    acc += quad::integrate([&](double p) { return w3(p) * (m.j(p, 1.0) + C); }, c.p[j - 1], c.p[j])
               .value;
    defect = std::max(defect, std::abs(c.alpha1[j] - acc));
  }
  c.closed_form_defect = defect;
  return c;
}

double c1_from_samples(const std::vector<double>& alpha0_p, const std::vector<double>& H_p,
                       double F) {
  std::vector<double> f(alpha0_p.size());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = 1.5 * alpha0_p[j] * alpha0_p[j] / H_p[j];
  return simpson(f, 1.0 / (f.size() - 1)) / (1.0 - 1.0 / (F * F));
}

double c1_coefficient(const StreamSolution& stream) {
  const double tau = require_tau_star(stream);
  const Mode m(stream, tau, 1.0);
  const double I = integrate_unit(stream.model(), [&](double p) {
                     const double a = m.alpha_p(p);
                     return 1.5 * a * a / stream.H_p(p);
                   }).value;
  return I / (1.0 - 1.0 / (stream.F() * stream.F()));
}

std::vector<double> reduced_corrector(const StreamSolution& stream, int n) {
  const double tau = require_tau_star(stream);
  const Mode m(stream, tau, 1.0);
  const double c1 = c1_coefficient(stream);
  auto f = [&](double p) {
    const double hp = stream.H_p(p), a = m.alpha_p(p);
    return 1.5 * a * a / hp + hp * hp * hp * c1;
  };
  const auto p = uniform_grid(n);
  std::vector<double> a1(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) a1[j] = a1[j - 1] + quad::integrate(f, p[j - 1], p[j]).value;
  return a1;
}

Lambda2Mu2 lambda2_mu2(const StreamSolution& stream, int n) {
  const double tau = require_tau_star(stream), t2 = tau * tau;
  const Mode m(stream, tau, 1.0);
  const auto c = corrector_v1(stream, 1.0, n);
  std::vector<double> num(n + 1), den(n + 1), lead(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double p = c.p[j], hp = stream.H_p(p);
    const double a = m.alpha(p), ap = m.alpha_p(p);
    const double A1p = c.alpha1_p[j], B = c.beta1[j], Bp = c.beta1_p[j];
    const double hp2 = hp * hp, hp4 = hp2 * hp2;
    const double T1 = t2 * a * ap * B / (2 * hp2) + 3 * ap * ap * (A1p / 2 + Bp / 4) / hp4;
    const double T2 = (t2 * a * a * (A1p / 2 - Bp / 4) + t2 * a * ap * B / 2) / hp2;
    const double T3 = 0.75 * ap * ap * ap * ap / (hp4 * hp) + t2 * a * a * ap * ap / (4 * hp2 * hp);
    num[j] = T1 + T2 - T3;
    den[j] = t2 * a * a / hp;
    lead[j] = ap * ap / hp;
  }
  const double h = 1.0 / n;
  Lambda2Mu2 r;
  r.lambda2 = simpson(num, h) / simpson(den, h);
  r.c1 = c1_coefficient(stream);
  r.lambda2_leading = 9.0 / 8.0 * r.c1 * simpson(lead, h) / simpson(den, h);
  r.lambda2_corrected = r.lambda2_leading * 5.0 / 9.0;

  const auto& g = m.profile();
  std::vector<double> g2(g.y.size()), g2w(g.y.size());
  for (std::size_t i = 0; i < g.y.size(); ++i) {
    g2[i] = g.gamma[i] * g.gamma[i];
    g2w[i] = g2[i] / stream.U_Y(g.y[i]);
  }
  const double hy = g.y[1] - g.y[0];
  r.mu2 = -4 * r.lambda2 * t2 * simpson(g2, hy) / simpson(g2w, hy);
  return r;
}

ExpansionResult expand(const StreamSolution& stream, int n) {
  ExpansionResult ex;
  ex.kernel = kernel_mode(stream, n);
  ex.tau_star = ex.kernel.tau_star;
  ex.corrector = corrector_v1(stream, 1.0, n);
  const auto lm = lambda2_mu2(stream, n);
  ex.c1 = lm.c1;
  ex.lambda2 = lm.lambda2;
  ex.mu2 = lm.mu2;
  ex.lambda2_leading = lm.lambda2_leading;
  ex.lambda2_corrected = lm.lambda2_corrected;
  ex.kernel_residual = ex.kernel.operator_residual;
  ex.closed_form_defect = ex.corrector.closed_form_defect;
  ex.solve_residual = ex.corrector.solve_residual;
  return ex;
}

PlugBack plug_back(const StreamSolution& stream, const ExpansionResult& ex,
                   const std::vector<double>& t_list, int n_q) {
  const int N = static_cast<int>(ex.kernel.p.size()) - 1;
  const auto g =
      HodographGrid::make(n_q, N, 2 * std::numbers::pi / ex.tau_star, stream.model());
  Eigen::MatrixXd H(g.M + 1, N + 1), v0(g.M + 1, N + 1), v1(g.M + 1, N + 1);
  for (int i = 0; i <= g.M; ++i) {
    const double c1 = std::cos(ex.tau_star * g.q[i]), c2 = std::cos(2 * ex.tau_star * g.q[i]);
    for (int j = 0; j <= N; ++j) {
      H(i, j) = stream.H(g.p[j]);
      v0(i, j) = ex.kernel.alpha0[j] * c1;
      v1(i, j) = ex.corrector.alpha1[j] + ex.corrector.beta1[j] * c2;
    }
    H(i, 0) = 0.0;
  }
  const Eigen::VectorXd e0 = hodograph_equations(g, H, 1.0, stream.R());
  PlugBack pb;
  for (double t : t_list) {
    const Eigen::VectorXd e =
        hodograph_equations(g, H + t * v0 + t * t * v1, 1.0 + ex.lambda2 * t * t, stream.R());
    pb.t.push_back(t);
    pb.residual.push_back((e - e0).cwiseAbs().maxCoeff());
  }
  if (pb.t.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(pb.t.size());
    for (std::size_t i = 0; i < pb.t.size(); ++i) {
      const double x = std::log(pb.t[i]), y = std::log(pb.residual[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    pb.exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return pb;
}

}  // namespace wavebranch
