#include "wavebranch/hodograph.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wavebranch/error.hpp"
#include "wavebranch/roots.hpp"
#include "wavebranch/tridiag.hpp"

namespace wavebranch {
namespace {

constexpr double kBreakdown = 1e-8;

[[noreturn]] void breakdown(int i, int j, double v) {
  std::ostringstream os;
  os << "h_p = " << v << " at node (" << i << ", " << j << ")";
  throw Error("continuation", ErrorKind::HodographBreakdown, os.str());
}

// Per-level q-derivatives and p-differences shared by residual and Jacobian.
struct Levels {
  Eigen::MatrixXd hq;    // (M+1) x (N+1)
  Eigen::MatrixXd Pc;    // central p-difference at levels 1..N-1
  Eigen::MatrixXd Ph;    // forward difference at half levels j+1/2, stored at j
  Eigen::VectorXd Pb;    // one-sided difference at p = 1
};

Levels levels(const HodographGrid& g, const Eigen::MatrixXd& h, Exec exec = Exec::Serial) {
  const int M = g.M, N = g.N;
  const double dp = g.dp;
  Levels L;
  L.hq = g.D_even * h;
  L.Ph.resize(M + 1, N);
  L.Pc.setZero(M + 1, N + 1);
  L.Pb.resize(M + 1);
  // Breakdown is detected per node and rethrown after the loop.
  int bad_i = -1, bad_j = -1;
  double bad_v = 0.0;
#pragma omp parallel for if (exec == Exec::Parallel) num_threads(thread_cap())
  for (int i = 0; i <= M; ++i) {
    for (int j = 0; j < N; ++j) {
      const double v = (h(i, j + 1) - h(i, j)) / dp;
      if (!(v > kBreakdown)) {
#pragma omp critical(wavebranch_breakdown)
        { bad_i = i; bad_j = j; bad_v = v; }
      }
      L.Ph(i, j) = v;
    }
    for (int j = 1; j < N; ++j) L.Pc(i, j) = (h(i, j + 1) - h(i, j - 1)) / (2 * dp);
    const double pb = (3 * h(i, N) - 4 * h(i, N - 1) + h(i, N - 2)) / (2 * dp);
    if (!(pb > kBreakdown)) {
#pragma omp critical(wavebranch_breakdown)
      { bad_i = i; bad_j = N; bad_v = pb; }
    }
    L.Pb(i) = pb;
  }
  if (bad_i >= 0) breakdown(bad_i, bad_j, bad_v);
  return L;
}

}  // namespace

HodographGrid HodographGrid::make(int n_q, int N, double Lambda0, const VorticityModel& model) {
  if (n_q < 4) throw Error("continuation", ErrorKind::Validation, "n_q must be >= 4");
  if (N < 4) throw Error("continuation", ErrorKind::Validation, "n_p must be >= 4");
  HodographGrid g;
  // Odd collocation count: no Nyquist mode, whose collocation derivative vanishes.
  g.n_q = n_q % 2 == 0 ? n_q + 1 : n_q;
  g.M = (g.n_q - 1) / 2;
  g.N = N;
  g.Lambda0 = Lambda0;
  g.dp = 1.0 / N;
  const int M = g.M, n = g.n_q;
  g.q.resize(M + 1);
  for (int i = 0; i <= M; ++i) g.q[i] = Lambda0 * i / n;
  g.p.resize(N + 1);
  for (int j = 0; j <= N; ++j) g.p[j] = static_cast<double>(j) / N;

  // Periodic Fourier differentiation on an odd number of points.
  const double scale = 2 * std::numbers::pi / Lambda0;
  auto D1 = [&](int i, int j) {
    if (i == j) return 0.0;
    const int k = i - j;
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    return 0.5 * sgn / std::sin(k * std::numbers::pi / n) * scale;
  };
  g.D_even.setZero(M + 1, M + 1);
  g.D_odd.setZero(M + 1, M + 1);
  for (int i = 0; i <= M; ++i) {
    for (int j = 0; j < n; ++j) {
      const int m = std::min(j, n - j);
      g.D_even(i, m) += D1(i, j);
    }
    for (int m = 1; m <= M; ++m) g.D_odd(i, m) = D1(i, m) - D1(i, n - m);
  }
  g.trough_weights.resize(M + 1);
  for (int m = 0; m <= M; ++m) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(M + 1);
    e(m) = 1.0;
    g.trough_weights(m) = CosineInterpolant(g, e)(0.5 * Lambda0);
  }
  g.omega_flux.assign(N + 1, 0.0);
  for (int j = 1; j < N; ++j) {
    g.omega_flux[j] =
        (model.capital_omega((j + 0.5) * g.dp) - model.capital_omega((j - 0.5) * g.dp)) / g.dp;
  }
  return g;
}

Eigen::VectorXd hodograph_equations(const HodographGrid& g, const Eigen::MatrixXd& h,
                                    double lambda, double R, Exec exec) {
  const int M = g.M, N = g.N;
  const double dp = g.dp, l2 = lambda * lambda;
  const Levels L = levels(g, h, exec);
  Eigen::VectorXd out(g.unknowns());
#pragma omp parallel for if (exec == Exec::Parallel) num_threads(thread_cap())
  for (int j = 1; j < N; ++j) {
    Eigen::VectorXd gq(M + 1);
    for (int k = 0; k <= M; ++k) gq(k) = L.hq(k, j) / L.Pc(k, j);
    const Eigen::VectorXd div = g.D_odd * gq;
    for (int i = 0; i <= M; ++i) {
      const double Qp = 0.5 * (L.hq(i, j) + L.hq(i, j + 1));
      const double Qm = 0.5 * (L.hq(i, j) + L.hq(i, j - 1));
      const double Pp = L.Ph(i, j), Pm = L.Ph(i, j - 1);
      const double Kp = (1 + l2 * Qp * Qp) / (2 * Pp * Pp);
      const double Km = (1 + l2 * Qm * Qm) / (2 * Pm * Pm);
      out(g.index(i, j)) = (Kp - Km) / dp + g.omega_flux[j] - l2 * div(i);
    }
  }
  for (int i = 0; i <= M; ++i) {
    const double qb = L.hq(i, N), pb = L.Pb(i);
    out(g.index(i, N)) = (1 + l2 * qb * qb) / (2 * pb * pb) + h(i, N) - R;
  }
  return out;
}

Eigen::SparseMatrix<double> hodograph_jacobian(const HodographGrid& g, const Eigen::MatrixXd& h,
                                               double lambda, Eigen::VectorXd* d_lambda) {
  const int M = g.M, N = g.N, n = g.unknowns();
  const double dp = g.dp, l2 = lambda * lambda;
  const Levels L = levels(g, h);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * (3 * (M + 1) + 4));
  if (d_lambda) d_lambda->setZero(n);
  auto add = [&](int row, int i, int j, double v) {
    if (j >= 1) trip.emplace_back(row, g.index(i, j), v);
  };
  Eigen::VectorXd gq(M + 1);
  Eigen::MatrixXd DoDe(M + 1, M + 1);
  for (int j = 1; j < N; ++j) {
    for (int k = 0; k <= M; ++k) gq(k) = L.hq(k, j) / L.Pc(k, j);
    const Eigen::VectorXd div = g.D_odd * gq;
    // d(D_odd g)_i / d h(m, j) = sum_k D_odd(i, k) D_even(k, m) / Pc(k, j)
    Eigen::MatrixXd De_scaled = g.D_even;
    for (int k = 0; k <= M; ++k) De_scaled.row(k) /= L.Pc(k, j);
    DoDe.noalias() = g.D_odd * De_scaled;
    for (int i = 0; i <= M; ++i) {
      const int row = g.index(i, j);
      const double Qp = 0.5 * (L.hq(i, j) + L.hq(i, j + 1));
      const double Qm = 0.5 * (L.hq(i, j) + L.hq(i, j - 1));
      const double Pp = L.Ph(i, j), Pm = L.Ph(i, j - 1);
      const double kpp = -(1 + l2 * Qp * Qp) / (Pp * Pp * Pp);
      const double kpm = -(1 + l2 * Qm * Qm) / (Pm * Pm * Pm);
      const double kqp = l2 * Qp / (Pp * Pp);
      const double kqm = l2 * Qm / (Pm * Pm);
      add(row, i, j + 1, kpp / (dp * dp));
      add(row, i, j, -(kpp + kpm) / (dp * dp));
      add(row, i, j - 1, kpm / (dp * dp));
      for (int m = 0; m <= M; ++m) {
        const double de = 0.5 * g.D_even(i, m) / dp;
        double same = (kqp - kqm) * de - l2 * DoDe(i, m);
        add(row, m, j, same);
        if (de != 0.0) {
          add(row, m, j + 1, kqp * de);
          add(row, m, j - 1, -kqm * de);
        }
      }
      for (int k = 0; k <= M; ++k) {
        const double c = -l2 * g.D_odd(i, k) * L.hq(k, j) / (2 * dp * L.Pc(k, j) * L.Pc(k, j));
        if (c == 0.0) continue;
        add(row, k, j + 1, -c);
        add(row, k, j - 1, c);
      }
      if (d_lambda) {
        (*d_lambda)(row) =
            (lambda * Qp * Qp / (Pp * Pp) - lambda * Qm * Qm / (Pm * Pm)) / dp - 2 * lambda * div(i);
      }
    }
  }
  for (int i = 0; i <= M; ++i) {
    const int row = g.index(i, N);
    const double qb = L.hq(i, N), pb = L.Pb(i);
    const double bp = -(1 + l2 * qb * qb) / (pb * pb * pb);
    add(row, i, N, bp * 3 / (2 * dp) + 1.0);
    add(row, i, N - 1, bp * (-4) / (2 * dp));
    add(row, i, N - 2, bp / (2 * dp));
    for (int m = 0; m <= M; ++m) {
      const double c = l2 * qb / (pb * pb) * g.D_even(i, m);
      if (c != 0.0) add(row, m, N, c);
    }
    if (d_lambda) (*d_lambda)(row) = lambda * qb * qb / (pb * pb);
  }
  Eigen::SparseMatrix<double> J(n, n);
  J.setFromTriplets(trip.begin(), trip.end());
  J.makeCompressed();
  return J;
}

namespace {

struct StreamProfile {
  std::vector<double> h;
  double top_residual;
};

StreamProfile stream_profile(const VorticityModel& model, int N, double R, double C) {
  const double dp = 1.0 / N;
  StreamProfile sp;
  sp.h.assign(N + 1, 0.0);
  for (int j = 0; j < N; ++j) {
    const double gap = 2.0 * (C - model.capital_omega((j + 0.5) * dp));
    if (!(gap > 0)) {
      throw Error("continuation", ErrorKind::Domain, "discrete stream constant below max Omega");
    }
    sp.h[j + 1] = sp.h[j] + dp / std::sqrt(gap);
  }
  const double pb = (3 * sp.h[N] - 4 * sp.h[N - 1] + sp.h[N - 2]) / (2 * dp);
  sp.top_residual = 1.0 / (2 * pb * pb) + sp.h[N] - R;
  return sp;
}

}  // namespace

DiscreteStream discrete_stream(const VorticityModel& model, int N, double R, double C_guess,
                               double C_cap) {
  double Cmin = 0.0;
  for (int j = 0; j < N; ++j) {
    Cmin = std::max(Cmin, model.capital_omega((j + 0.5) / N));
  }
  auto f = [&](double C) { return stream_profile(model, N, R, C).top_residual; };
  double delta = 1e-4 * std::max(C_guess, 1e-3);
  double lo = std::max(C_guess - delta, 0.5 * (C_guess + Cmin));
  double hi = std::min(C_guess + delta, 0.5 * (C_guess + C_cap));
  double flo = f(lo), fhi = f(hi);
  for (int k = 0; k < 60 && !(flo > 0 && fhi < 0); ++k) {
    delta *= 2;
    if (flo <= 0) {
      lo = std::max(C_guess - delta, 0.5 * (lo + Cmin));
      flo = f(lo);
    }
    if (fhi >= 0) {
      hi = std::min(C_guess + delta, 0.5 * (hi + C_cap));
      fhi = f(hi);
    }
  }
  auto r = roots::bracketed(f, lo, flo, hi, fhi, {.f_tol = 1e-15, .x_tol = 1e-16, .max_iter = 400});
  if (!r) throw Error("continuation", ErrorKind::BracketFailure, "discrete stream not bracketed");
  DiscreteStream ds;
  ds.C = r->x;
  ds.h = stream_profile(model, N, R, ds.C).h;
  return ds;
}

double discrete_dispersion(const std::vector<double>& h0, double tau, std::vector<double>* alpha) {
  const int N = static_cast<int>(h0.size()) - 1;
  const double dp = 1.0 / N, t2 = tau * tau;
  // Rows j = 1..N-1 for alpha_1..alpha_{N-1}, alpha_N = 1 moved to the right.
  tridiag::Symmetric t;
  t.diag.resize(N - 1);
  t.off.resize(N - 2);
  std::vector<double> rhs(N - 1, 0.0);
  std::vector<double> kp(N);
  for (int j = 0; j < N; ++j) {
    const double P = (h0[j + 1] - h0[j]) / dp;
    kp[j] = 1.0 / (P * P * P);
  }
  for (int j = 1; j < N; ++j) {
    const double Pc = (h0[j + 1] - h0[j - 1]) / (2 * dp);
    // -(kp+ (a_{j+1} - a_j) - kp- (a_j - a_{j-1})) / dp^2 + tau^2 a_j / Pc = 0
    t.diag[j - 1] = (kp[j] + kp[j - 1]) / (dp * dp) + t2 / Pc;
    if (j < N - 1) t.off[j - 1] = -kp[j] / (dp * dp);
  }
  rhs[N - 2] = kp[N - 1] / (dp * dp);
  const auto a = tridiag::solve(t, rhs);
  std::vector<double> full(N + 1, 0.0);
  for (int j = 1; j < N; ++j) full[j] = a[j - 1];
  full[N] = 1.0;
  const double pb = (3 * h0[N] - 4 * h0[N - 1] + h0[N - 2]) / (2 * dp);
  const double slope = (3 * full[N] - 4 * full[N - 1] + full[N - 2]) / (2 * dp);
  if (alpha) *alpha = std::move(full);
  return -slope / (pb * pb * pb) + 1.0;
}

double discrete_tau_star(const std::vector<double>& h0, double tau_guess) {
  auto f = [&](double t) { return discrete_dispersion(h0, t); };
  double lo = 0.9 * tau_guess, hi = 1.1 * tau_guess;
  double flo = f(lo), fhi = f(hi);
  for (int k = 0; k < 60 && std::signbit(flo) == std::signbit(fhi); ++k) {
    lo *= 0.9;
    hi *= 1.1;
    flo = f(lo);
    fhi = f(hi);
  }
  auto r = roots::bracketed(f, lo, flo, hi, fhi, {.f_tol = 0.0, .x_tol = 1e-16, .max_iter = 400});
  if (!r) throw Error("continuation", ErrorKind::NoRoot, "discrete dispersion root not found");
  return r->x;
}

CosineInterpolant::CosineInterpolant(const HodographGrid& g, const Eigen::VectorXd& f) {
  const int n = g.n_q, M = g.M;
  k0_ = 2 * std::numbers::pi / g.Lambda0;
  a_.assign(M + 1, 0.0);
  for (int k = 0; k <= M; ++k) {
    double F = f(0);
    for (int m = 1; m <= M; ++m) F += 2 * f(m) * std::cos(2 * std::numbers::pi * k * m / n);
    a_[k] = (k == 0 ? 1.0 : 2.0) * F / n;
  }
}

double CosineInterpolant::operator()(double q) const {
  double s = 0.0;
  for (std::size_t k = 0; k < a_.size(); ++k) s += a_[k] * std::cos(k * k0_ * q);
  return s;
}

double CosineInterpolant::derivative(double q) const {
  double s = 0.0;
  for (std::size_t k = 1; k < a_.size(); ++k) s -= a_[k] * k * k0_ * std::sin(k * k0_ * q);
  return s;
}

}  // namespace wavebranch
