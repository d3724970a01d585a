#include "wavebranch/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wavebranch/dispersion.hpp"
#include "wavebranch/error.hpp"
#include "wavebranch/interp.hpp"
#include "wavebranch/tridiag.hpp"

namespace wavebranch {
namespace {

constexpr int kMaxIntervalPoints = 1 << 17;

tridiag::Symmetric interval_matrix(const StreamSolution& st, int n) {
  const double h = st.d() / n, ih2 = 1.0 / (h * h);
  const auto& model = st.model();
  tridiag::Symmetric t;
  t.diag.resize(n);
  t.off.assign(n - 1, -ih2);
  for (int i = 1; i <= n; ++i) {
    const double q = model.omega_prime(st.U(i * h));
    t.diag[i - 1] = 2.0 * ih2 - q;
  }
  // Ghost node v_{n+1} = v_{n-1} + 2 h rho0 v_n, half mass at the last node,
  // symmetrised by the square root of the mass.
  t.diag[n - 1] = 2.0 * (1.0 - h * st.rho0()) * ih2 - model.omega_prime(1.0);
  t.off[n - 2] = -std::sqrt(2.0) * ih2;
  return t;
}

void normalise_sign(std::vector<double>& v) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-8 * vmax) {
      if (x < 0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

// Four-point Lagrange interpolation on uniform samples over [0, 1].
double uniform_cubic(const std::vector<double>& f, double p) {
  const int n = static_cast<int>(f.size()) - 1;
  const double x = std::clamp(p, 0.0, 1.0) * n;
  int i = std::clamp(static_cast<int>(std::floor(x)) - 1, 0, std::max(0, n - 3));
  if (n < 3) {
    const int j = std::min(static_cast<int>(x), n - 1);
    const double t = x - j;
    return (1 - t) * f[j] + t * f[j + 1];
  }
  double s = 0.0;
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) w *= (x - (i + b)) / static_cast<double>(a - b);
    }
    s += w * f[i + a];
  }
  return s;
}

struct FvSystem {
  tridiag::Symmetric t;
  std::vector<double> rhs;
};

FvSystem transformed_system(const StreamSolution& st, double tau, int n,
                            const std::function<double(double)>& F, double c) {
  const auto& model = st.model();
  const double s = st.s(), h = 1.0 / n, t2 = tau * tau;
  auto a = [&](double p) {
    const double g = model.gap(s, p);
    return g * std::sqrt(g);
  };
  auto b = [&](double p) { return std::sqrt(model.gap(s, p)); };
  FvSystem sys;
  sys.t.diag.resize(n);
  sys.t.off.resize(n - 1);
  sys.rhs.resize(n);
  for (int j = 1; j < n; ++j) {
    const double am = a((j - 0.5) * h), ap = a((j + 0.5) * h);
    sys.t.diag[j - 1] = (am + ap) / h + h * t2 * b(j * h);
    sys.t.off[j - 1] = -ap / h;
    sys.rhs[j - 1] = h * F(j * h);
  }
  const double am = a(1.0 - 0.5 * h);
  sys.t.diag[n - 1] = am / h - 1.0 + 0.5 * h * t2 * b(1.0);
  sys.rhs[n - 1] = 0.5 * h * F(1.0) - c;
  return sys;
}

double system_residual(const FvSystem& sys, const std::vector<double>& u) {
  const auto tu = tridiag::apply(sys.t, u);
  double r = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    r = std::max(r, std::abs(tu[i] - sys.rhs[i]));
    scale = std::max(scale, std::abs(sys.rhs[i]));
  }
  return scale > 0 ? r / scale : r;
}

void check_resonance(const StreamSolution& st, double tau, std::optional<double> ts) {
  if (!ts) {
    if (st.F() >= 1.0) return;
    ts = tau_star(st).tau_star;
  }
  if (ts && std::abs(std::abs(tau) - *ts) < 1e-6) {
    throw Error("spectra", ErrorKind::NearResonance, "tau is within 1e-6 of tau*");
  }
}

}  // namespace

const char* to_string(ProblemTag t) {
  switch (t) {
    case ProblemTag::Interval1D: return "Interval1D";
    case ProblemTag::Hodograph1D: return "Hodograph1D";
    case ProblemTag::Physical2D: return "Physical2D";
    case ProblemTag::Hodograph2D: return "Hodograph2D";
  }
  return "?";
}

int count_negative(const std::vector<double>& eigenvalues) {
  return static_cast<int>(
      std::count_if(eigenvalues.begin(), eigenvalues.end(), [](double v) { return v < -1e-9; }));
}

std::vector<double> interval_eigenvalues(const StreamSolution& stream, int k, int n) {
  return tridiag::lowest(interval_matrix(stream, n), k);
}

SpectrumReport interval_spectrum(const StreamSolution& stream, int k, int n_start) {
  if (k < 1) throw Error("spectra", ErrorKind::Validation, "k must be >= 1");
  int n = std::max(n_start, 8);
  auto coarse = interval_eigenvalues(stream, k, n);
  for (;;) {
    auto fine = interval_eigenvalues(stream, k, 2 * n);
    double worst = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
      worst = std::max(worst, std::abs(fine[i] - coarse[i]) / std::max(1.0, std::abs(fine[i])));
    }
    n *= 2;
    coarse = std::move(fine);
    if (worst <= 1e-5) break;
    if (n >= kMaxIntervalPoints) {
      throw Error("spectra", ErrorKind::DiscretizationFailure,
                  "interval eigenvalues did not settle under refinement");
    }
  }
  const auto t = interval_matrix(stream, n);
  const double h = stream.d() / n;
  SpectrumReport rep;
  rep.problem_tag = ProblemTag::Interval1D;
  rep.grid_points = n;
  rep.eigenvalues = coarse;
  rep.grid.resize(n + 1);
  for (int i = 0; i <= n; ++i) rep.grid[i] = i * h;
  for (double lam : rep.eigenvalues) {
    auto x = tridiag::eigenvector(t, lam);
    const auto tx = tridiag::apply(t, x);
    double r = 0.0;
    for (int i = 0; i < n; ++i) r += (tx[i] - lam * x[i]) * (tx[i] - lam * x[i]);
    rep.residuals.push_back(std::sqrt(r) / std::max(1.0, std::abs(lam)));
    std::vector<double> v(n + 1, 0.0);
    for (int i = 0; i < n; ++i) v[i + 1] = x[i];
    v[n] *= std::sqrt(2.0);
    std::vector<double> sq(n + 1);
    for (int i = 0; i <= n; ++i) sq[i] = v[i] * v[i];
    const double nrm = std::sqrt(quad::trapezoid(sq, h));
    for (double& y : v) y /= nrm;
    normalise_sign(v);
    rep.eigenvectors.push_back(std::move(v));
  }
  rep.negative_count = count_negative(rep.eigenvalues);
  rep.nu0_reference = rep.eigenvalues.front();
  return rep;
}

double interval_quadratic_form(const StreamSolution& stream, const std::vector<double>& knots,
                               const std::vector<double>& values) {
  const auto& model = stream.model();
  const auto& gl = quad::gl15();
  double grad = 0.0, pot = 0.0, mass = 0.0;
  double xa = 0.0, va = 0.0;
  for (std::size_t j = 0; j < knots.size(); ++j) {
    const double xb = knots[j], vb = values[j], len = xb - xa;
    const double slope = (vb - va) / len;
    grad += slope * slope * len;
    mass += len * (va * va + va * vb + vb * vb) / 3.0;
    for (int g = 0; g < 15; ++g) {
      const double t = 0.5 * (1.0 + gl.nodes[g]);
      const double y = xa + t * len, v = va + t * (vb - va);
      pot += 0.5 * len * gl.weights[g] * model.omega_prime(stream.U(y)) * v * v;
    }
    xa = xb;
    va = vb;
  }
  return (grad - pot - stream.rho0() * va * va) / mass;
}

CoercivityResult coercivity_check(const StreamSolution& stream, int trials, std::uint64_t seed) {
  CoercivityResult out;
  out.trials = trials;
  out.min_value = INFINITY;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_int_distribution<int> pieces(1, 16);
  for (int t = 0; t < trials; ++t) {
    const int m = pieces(rng);
    std::vector<double> knots(m), values(m);
    for (int j = 0; j < m; ++j) {
      knots[j] = stream.d() * (j + 1) / m;
      values[j] = uni(rng);
    }
    if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) values[0] = 1;
    const double q = interval_quadratic_form(stream, knots, values);
    out.min_value = std::min(out.min_value, q);
  }
  if (stream.F() < 1.0) {
    const auto ts = tau_star(stream);
    if (ts.tau_star) {
      const auto g = gamma_solve(stream, *ts.tau_star, 4097);
      const int n = static_cast<int>(g.y.size());
      const double h = g.y[1] - g.y[0];
      std::vector<double> form(n), mass(n);
      for (int i = 0; i < n; ++i) {
        const double w = stream.model().omega_prime(stream.U(g.y[i]));
        form[i] = g.gamma_y[i] * g.gamma_y[i] - w * g.gamma[i] * g.gamma[i];
        mass[i] = g.gamma[i] * g.gamma[i];
      }
      const double value =
          (quad::trapezoid(form, h) - stream.rho0() * g.gamma.back() * g.gamma.back()) /
          quad::trapezoid(mass, h);
      out.gamma_trial = value;
      out.min_value = std::min(out.min_value, value);
    }
  }
  out.positive = out.min_value > 0.0;
  return out;
}

TransformedSolution transformed_solve(const StreamSolution& stream, double tau,
                                      const std::function<double(double)>& F_rhs, double c,
                                      std::optional<double> tau_star_hint, int n) {
  if (n < 16) throw Error("spectra", ErrorKind::Validation, "n must be >= 16");
  check_resonance(stream, tau, tau_star_hint);
  const auto coarse_sys = transformed_system(stream, tau, n, F_rhs, c);
  const auto fine_sys = transformed_system(stream, tau, 2 * n, F_rhs, c);
  const auto uc = tridiag::solve(coarse_sys.t, coarse_sys.rhs);
  const auto uf = tridiag::solve(fine_sys.t, fine_sys.rhs);
  TransformedSolution out;
  out.p.resize(n + 1);
  out.u.assign(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) out.p[j] = static_cast<double>(j) / n;
  for (int j = 1; j <= n; ++j) out.u[j] = (4.0 * uf[2 * j - 1] - uc[j - 1]) / 3.0;
  out.residual = std::max(system_residual(coarse_sys, uc), system_residual(fine_sys, uf));
  for (double v : out.u) {
    if (!std::isfinite(v)) {
      throw Error("spectra", ErrorKind::DiscretizationFailure, "non-finite transformed solution");
    }
  }
  return out;
}

TransformedSolution transformed_solve(const StreamSolution& stream, double tau,
                                      const std::vector<double>& F_samples, double c,
                                      std::optional<double> tau_star_hint) {
  if (F_samples.size() < 17) throw Error("spectra", ErrorKind::Validation, "need >= 17 samples");
  const int n = static_cast<int>(F_samples.size()) - 1;
  return transformed_solve(
      stream, tau, [&](double p) { return uniform_cubic(F_samples, p); }, c, tau_star_hint, n);
}

std::vector<double> transformed_solve_vertical(const StreamSolution& stream, double tau,
                                               const std::function<double(double)>& F_rhs,
                                               double c, const std::vector<double>& p) {
  const auto& model = stream.model();
  const int N = 1 << 14;
  const double d = stream.d(), h = d / N, t2 = tau * tau;
  auto q = [&](double y) { return t2 - model.omega_prime(stream.U(y)); };
  auto f = [&](double y) { return -F_rhs(stream.U(y)); };
  const double g = -c / stream.kappa();

  // State (phi, phi', I); phi'' = q phi, I' = sign * phi f.
  struct State {
    double phi, dphi, I;
  };
  auto rk4 = [&](State s, double y, double step, double sign) {
    auto rhs = [&](const State& u, double x) {
      return State{u.dphi, q(x) * u.phi, sign * u.phi * f(x)};
    };
    auto axpy = [](const State& a, const State& b, double w) {
      return State{a.phi + w * b.phi, a.dphi + w * b.dphi, a.I + w * b.I};
    };
    const State k1 = rhs(s, y);
    const State k2 = rhs(axpy(s, k1, 0.5 * step), y + 0.5 * step);
    const State k3 = rhs(axpy(s, k2, 0.5 * step), y + 0.5 * step);
    const State k4 = rhs(axpy(s, k3, step), y + step);
    return State{s.phi + step / 6 * (k1.phi + 2 * k2.phi + 2 * k3.phi + k4.phi),
                 s.dphi + step / 6 * (k1.dphi + 2 * k2.dphi + 2 * k3.dphi + k4.dphi),
                 s.I + step / 6 * (k1.I + 2 * k2.I + 2 * k3.I + k4.I)};
  };
  std::vector<State> lower(N + 1), upper(N + 1);
  lower[0] = {0.0, 1.0, 0.0};
  for (int i = 0; i < N; ++i) lower[i + 1] = rk4(lower[i], i * h, h, 1.0);
  upper[N] = {1.0, stream.rho0(), 0.0};
  // Backward in Y: dI/dY = -phi f, so I(Y) = int_Y^d phi f.
  for (int i = N; i > 0; --i) upper[i - 1] = rk4(upper[i], i * h, -h, -1.0);

  const State& mid1 = lower[N / 2];
  const State& mid2 = upper[N / 2];
  const double W = mid1.phi * mid2.dphi - mid1.dphi * mid2.phi;
  const double den = lower[N].dphi - stream.rho0() * lower[N].phi;
  if (std::abs(W) < 1e-300 || std::abs(den) < 1e-300) {
    throw Error("spectra", ErrorKind::NearResonance, "vertical problem is singular");
  }

  std::vector<double> y(N + 1), p1(N + 1), dp1(N + 1), p2(N + 1), dp2(N + 1), i1(N + 1),
      di1(N + 1), i2(N + 1), di2(N + 1);
  for (int i = 0; i <= N; ++i) {
    y[i] = i * h;
    const double fy = f(y[i]);
    p1[i] = lower[i].phi;
    dp1[i] = lower[i].dphi;
    p2[i] = upper[i].phi;
    dp2[i] = upper[i].dphi;
    i1[i] = lower[i].I;
    di1[i] = lower[i].phi * fy;
    i2[i] = upper[i].I;
    di2[i] = -upper[i].phi * fy;
  }
  const MonotoneCubic c1(y, p1, dp1, false), c2(y, p2, dp2, false), j1(y, i1, di1, false),
      j2(y, i2, di2, false);
  std::vector<double> u(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double Y = stream.H(p[k]);
    const double v = (c2(Y) * j1(Y) + c1(Y) * j2(Y)) / W + g * c1(Y) / den;
    u[k] = v * stream.H_p(p[k]);
  }
  return u;
}

KernelReport transformed_kernel(const StreamSolution& stream, double tau, int n) {
  const auto sys = transformed_system(stream, tau, n, [](double) { return 0.0; }, 0.0);
  const auto& t = sys.t;
  KernelReport rep;
  auto count_abs_below = [&](double x) {
    return tridiag::count_below(t, x) - tridiag::count_below(t, -x);
  };
  double lo, hi;
  tridiag::gershgorin(t, lo, hi);
  double a = 0.0, b = std::max(std::abs(lo), std::abs(hi));
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (count_abs_below(m) >= n / 2) {
      b = m;
    } else {
      a = m;
    }
  }
  rep.median = 0.5 * (a + b);
  rep.small_count = count_abs_below(1e-6 * rep.median);

  const int i0 = tridiag::count_below(t, 0.0);
  double best = INFINITY;
  for (int i : {i0 - 1, i0}) {
    if (i < 0 || i >= n) continue;
    const double lam = tridiag::eigenvalue(t, i);
    if (std::abs(lam) < std::abs(best)) best = lam;
  }
  rep.smallest = std::abs(best);
  const auto x = tridiag::eigenvector(t, best);
  rep.p.resize(n + 1);
  rep.vector.assign(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) rep.p[j] = static_cast<double>(j) / n;
  for (int j = 1; j <= n; ++j) rep.vector[j] = x[j - 1];
  auto normalise = [](std::vector<double>& v) {
    double m = 0.0;
    for (double y : v) m = std::max(m, std::abs(y));
    const double sgn = v.back() < 0 ? -1.0 : 1.0;
    for (double& y : v) y *= sgn / m;
  };
  normalise(rep.vector);

  const auto g = gamma_solve(stream, tau, 4097);
  const MonotoneCubic gam(g.y, g.gamma, g.gamma_y, false);
  std::vector<double> alpha(n + 1);
  for (int j = 0; j <= n; ++j) alpha[j] = gam(stream.H(rep.p[j])) * stream.H_p(rep.p[j]);
  normalise(alpha);
  for (int j = 0; j <= n; ++j) {
    rep.alpha_mismatch = std::max(rep.alpha_mismatch, std::abs(alpha[j] - rep.vector[j]));
  }
  return rep;
}

}  // namespace wavebranch
