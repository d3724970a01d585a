#include "wavebranch/physical.hpp"

#include <algorithm>
#include <cmath>

#include "wavebranch/eigs.hpp"
#include "wavebranch/error.hpp"
#include "wavebranch/interp.hpp"

namespace wavebranch {
namespace {

constexpr double kStagnation = 1e-8;

// Fourth-order first and second derivatives of uniform samples at index j.
double d1(const std::vector<double>& f, double h, int j) {
  const int n = static_cast<int>(f.size()) - 1;
  if (j >= 2 && j <= n - 2)
    return (f[j - 2] - 8 * f[j - 1] + 8 * f[j + 1] - f[j + 2]) / (12 * h);
  const int s = j < 2 ? 1 : -1;
  const int b = j < 2 ? 0 : n;
  auto F = [&](int k) { return f[b + s * k]; };
  if (j == b) return s * (-25 * F(0) + 48 * F(1) - 36 * F(2) + 16 * F(3) - 3 * F(4)) / (12 * h);
  return s * (-3 * F(0) - 10 * F(1) + 18 * F(2) - 6 * F(3) + F(4)) / (12 * h);
}

double d2(const std::vector<double>& f, double h, int j) {
  const int n = static_cast<int>(f.size()) - 1;
  if (j >= 2 && j <= n - 2)
    return (-f[j - 2] + 16 * f[j - 1] - 30 * f[j] + 16 * f[j + 1] - f[j + 2]) / (12 * h * h);
  const int s = j < 2 ? 1 : -1;
  const int b = j < 2 ? 0 : n;
  auto F = [&](int k) { return f[b + s * k]; };
  if (j == b)
    return (45 * F(0) - 154 * F(1) + 214 * F(2) - 156 * F(3) + 61 * F(4) - 10 * F(5)) /
           (12 * h * h);
  return (10 * F(0) - 15 * F(1) - 4 * F(2) + 14 * F(3) - 6 * F(4) + F(5)) / (12 * h * h);
}

// Cubic Lagrange interpolation of samples on x_k = k h.
double lagrange4(const std::vector<double>& f, double h, double x) {
  const int n = static_cast<int>(f.size()) - 1;
  int k = static_cast<int>(std::floor(x / h)) - 1;
  k = std::clamp(k, 0, n - 3);
  const double t = x / h - k;
  const double w0 = -(t - 1) * (t - 2) * (t - 3) / 6, w1 = t * (t - 2) * (t - 3) / 2;
  const double w2 = -t * (t - 1) * (t - 3) / 2, w3 = t * (t - 1) * (t - 2) / 6;
  return w0 * f[k] + w1 * f[k + 1] + w2 * f[k + 2] + w3 * f[k + 3];
}

std::vector<double> uniform(double L, int n) {
  std::vector<double> x(n + 1);
  for (int i = 0; i <= n; ++i) x[i] = L * i / n;
  return x;
}

struct Assembly {
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd M;  // lumped mass
  int nx = 0, ny = 0;
  int index(int i, int j) const { return i * ny + (j - 1); }
};

Assembly assemble(const PhysicalWave& w, const std::vector<double>& rho, Exec exec) {
  Assembly a;
  a.nx = w.n_x();
  a.ny = w.n_y();
  const int nx = a.nx, ny = a.ny, n = (nx + 1) * ny;
  const double hx = w.L / nx, he = 1.0 / ny;
  const double g = 0.5 / std::sqrt(3.0);
  const double gp[2] = {0.5 - g, 0.5 + g};
  const auto& model = w.model();
  a.M = Eigen::VectorXd::Zero(n);
  std::vector<std::vector<Eigen::Triplet<double>>> parts(nx);
  std::vector<Eigen::VectorXd> mass(nx, Eigen::VectorXd());
#pragma omp parallel for if (exec == Exec::Parallel) num_threads(thread_cap())
  for (int i = 0; i < nx; ++i) {
    auto& trip = parts[i];
    trip.reserve(16 * ny);
    Eigen::VectorXd& m = mass[i];
    m = Eigen::VectorXd::Zero(2 * (ny + 1));
    for (int j = 0; j < ny; ++j) {
      double k[4][4] = {};
      double ml[4] = {};
      for (double s : gp) {
        for (double t : gp) {
          const double wq = 0.25 * hx * he;
          const double xi = (1 - s) * w.xi[i] + s * w.xi[i + 1];
          const double xp = (1 - s) * w.xi_x[i] + s * w.xi_x[i + 1];
          const double e = w.eta[j] + t * he;
          const double psi = (1 - s) * (1 - t) * w.psi(i, j) + s * (1 - t) * w.psi(i + 1, j) +
                             (1 - s) * t * w.psi(i, j + 1) + s * t * w.psi(i + 1, j + 1);
          const double wp = model.omega_prime(std::clamp(psi, 0.0, 1.0));
          const double phi[4] = {(1 - s) * (1 - t), s * (1 - t), (1 - s) * t, s * t};
          const double ds[4] = {-(1 - t), (1 - t), -t, t};
          const double dt[4] = {-(1 - s), -s, (1 - s), s};
          double gx[4], ge[4];
          for (int r = 0; r < 4; ++r) {
            ge[r] = dt[r] / he;
            gx[r] = ds[r] / hx - e * xp / xi * ge[r];
          }
          for (int r = 0; r < 4; ++r) {
            ml[r] += wq * xi * phi[r];
            for (int c = 0; c < 4; ++c) {
              k[r][c] += wq * xi * (gx[r] * gx[c] + ge[r] * ge[c] / (xi * xi) - wp * phi[r] * phi[c]);
            }
          }
        }
      }
      const int ni[4] = {i, i + 1, i, i + 1}, nj[4] = {j, j, j + 1, j + 1};
      for (int r = 0; r < 4; ++r) {
        if (nj[r] == 0) continue;
        m((ni[r] - i) * (ny + 1) + nj[r]) += ml[r];
        for (int c = 0; c < 4; ++c) {
          if (nj[c] == 0) continue;
          trip.emplace_back(a.index(ni[r], nj[r]), a.index(ni[c], nj[c]), k[r][c]);
        }
      }
    }
  }
  std::vector<Eigen::Triplet<double>> all;
  for (int i = 0; i < nx; ++i) {
    all.insert(all.end(), parts[i].begin(), parts[i].end());
    for (int di = 0; di < 2; ++di)
      for (int j = 1; j <= ny; ++j) a.M(a.index(i + di, j)) += mass[i](di * (ny + 1) + j);
  }
  // Lumped surface term -rho sqrt(1 + xi'^2) w^2 ds.
  for (int i = 0; i <= nx; ++i) {
    const double wx = (i == 0 || i == nx) ? 0.5 * hx : hx;
    const double ds = std::sqrt(1 + w.xi_x[i] * w.xi_x[i]);
    all.emplace_back(a.index(i, ny), a.index(i, ny), -rho[i] * ds * wx);
  }
  a.K.resize(n, n);
  a.K.setFromTriplets(all.begin(), all.end());
  a.K.makeCompressed();
  return a;
}

bool is_flat(const PhysicalWave& w) {
  const double d = w.stream_limit.d();
  for (std::size_t i = 0; i < w.xi.size(); ++i)
    if (std::abs(w.xi[i] - d) > 1e-13 * d || w.xi_x[i] != 0.0) return false;
  return true;
}

PhysicalWave resample(const PhysicalWave& w, double L, int nx, int ny) {
  if (L > w.L * (1 + 1e-12)) {
    throw Error("frechet", ErrorKind::Validation, "resampling beyond the wave's X-range");
  }
  PhysicalWave r = w;
  r.L = L;
  r.periodic = w.periodic && std::abs(L - w.L) <= 1e-12 * w.L;
  r.X = uniform(L, nx);
  r.eta = uniform(1.0, ny);
  const double hx = w.L / w.n_x(), he = 1.0 / w.n_y();
  const MonotoneCubic xi(w.X, w.xi, w.xi_x, false);
  r.xi.resize(nx + 1);
  r.xi_x.resize(nx + 1);
  r.rho_exact.assign(w.rho_exact.empty() ? 0 : nx + 1, 0.0);
  for (int i = 0; i <= nx; ++i) {
    r.xi[i] = xi(r.X[i]);
    r.xi_x[i] = xi.derivative(r.X[i]);
    if (!w.rho_exact.empty()) r.rho_exact[i] = lagrange4(w.rho_exact, hx, r.X[i]);
  }
  auto field = [&](const Eigen::MatrixXd& F) {
    Eigen::MatrixXd cols(w.n_x() + 1, ny + 1), out(nx + 1, ny + 1);
    std::vector<double> col(w.n_y() + 1), row(w.n_x() + 1);
    for (int i = 0; i <= w.n_x(); ++i) {
      for (int k = 0; k <= w.n_y(); ++k) col[k] = F(i, k);
      for (int k = 0; k <= ny; ++k) cols(i, k) = lagrange4(col, he, r.eta[k]);
    }
    for (int k = 0; k <= ny; ++k) {
      for (int i = 0; i <= w.n_x(); ++i) row[i] = cols(i, k);
      for (int i = 0; i <= nx; ++i) out(i, k) = lagrange4(row, hx, r.X[i]);
    }
    return out;
  };
  r.psi = field(w.psi);
  r.psi_X = field(w.psi_X);
  r.psi_Y = field(w.psi_Y);
  r.psi_XY = field(w.psi_XY);
  r.psi_YY = field(w.psi_YY);
  return r;
}

double column_integral(const std::vector<double>& f, double h) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 2) return 0.5 * h * (f[0] + f[n]);
  const int m = n % 2 == 0 ? n : n - 3;
  double s = f[0] + f[m];
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
  s *= h / 3;
  if (m != n) s += 3 * h / 8 * (f[m] + 3 * f[m + 1] + 3 * f[m + 2] + f[m + 3]);
  return s;
}

std::vector<double> force(const PhysicalWave& w, const std::vector<double>& xs, bool printed) {
  const auto& model = w.model();
  const double om1 = model.capital_omega(1.0);
  const int nx = w.n_x(), ny = w.n_y();
  std::vector<double> S(nx + 1);
  std::vector<double> f(ny + 1);
  for (int i = 0; i <= nx; ++i) {
    const double xi = w.xi[i];
    for (int k = 0; k <= ny; ++k) {
      const double py = w.psi_Y(i, k), px = w.psi_X(i, k), Y = w.eta[k] * xi;
      const double tail = om1 - model.capital_omega(std::clamp(w.psi(i, k), 0.0, 1.0));
      const double v = printed ? py * py - px * px + w.R - Y + tail
                               : py * py - px * px + 2 * (w.R - Y) + 2 * tail;
      f[k] = v * xi;
    }
    S[i] = column_integral(f, 1.0 / ny);
  }
  const double hx = w.L / nx;
  std::vector<double> out;
  for (double x : xs) {
    x = std::abs(x);
    if (w.periodic) {
      x = std::fmod(x, 2 * w.L);
      if (x > w.L) x = 2 * w.L - x;
    } else if (x > w.L * (1 + 1e-12)) {
      throw Error("frechet", ErrorKind::Domain, "X outside the wave's range");
    }
    const int i = std::min(nx - 1, static_cast<int>(x / hx));
    const double t = x / hx - i;
    out.push_back((1 - t) * S[i] + t * S[i + 1]);
  }
  return out;
}

}  // namespace

PhysicalWave uniform_wave(const StreamSolution& stream, double L, int n_x, int n_y) {
  if (n_x < 4 || n_y < 6 || !(L > 0)) {
    throw Error("frechet", ErrorKind::Validation, "need L > 0, n_x >= 4, n_y >= 6");
  }
  PhysicalWave w;
  w.R = stream.R();
  w.L = L;
  w.stream_limit = stream;
  w.X = uniform(L, n_x);
  w.eta = uniform(1.0, n_y);
  const double d = stream.d();
  w.xi.assign(n_x + 1, d);
  w.xi_x.assign(n_x + 1, 0.0);
  w.psi.resize(n_x + 1, n_y + 1);
  w.psi_X.setZero(n_x + 1, n_y + 1);
  w.psi_XY.setZero(n_x + 1, n_y + 1);
  w.psi_Y.resize(n_x + 1, n_y + 1);
  w.psi_YY.resize(n_x + 1, n_y + 1);
  for (int k = 0; k <= n_y; ++k) {
    const double Y = w.eta[k] * d;
    const double u = k == n_y ? 1.0 : stream.U(Y), uy = stream.U_Y(Y), uyy = stream.U_YY(Y);
    for (int i = 0; i <= n_x; ++i) {
      w.psi(i, k) = u;
      w.psi_Y(i, k) = uy;
      w.psi_YY(i, k) = uyy;
    }
  }
  w.rho_exact.assign(n_x + 1, stream.rho0());
  return w;
}

PhysicalWave reconstruct_physical(const BranchSetup& setup, const WaveField& field, int n_x,
                                  int n_y) {
  if (n_x < 4 || n_y < 6) throw Error("continuation", ErrorKind::Validation, "grid too small");
  const auto& g = setup.grid;
  const int N = g.N;
  const double lam = field.lambda, dp = g.dp;
  std::vector<CosineInterpolant> level(N + 1);
  for (int j = 0; j <= N; ++j) level[j] = CosineInterpolant(g, field.h.col(j));

  PhysicalWave w;
  w.R = field.R;
  w.lambda = lam;
  w.L = g.Lambda0 / (2 * lam);
  w.periodic = true;
  w.stream_limit = setup.stream;
  w.X = uniform(w.L, n_x);
  w.eta = uniform(1.0, n_y);
  w.xi.resize(n_x + 1);
  w.xi_x.resize(n_x + 1);
  w.rho_exact.resize(n_x + 1);
  w.psi.resize(n_x + 1, n_y + 1);
  w.psi_X.resize(n_x + 1, n_y + 1);
  w.psi_Y.resize(n_x + 1, n_y + 1);
  w.psi_XY.resize(n_x + 1, n_y + 1);
  w.psi_YY.resize(n_x + 1, n_y + 1);
  std::vector<double> h(N + 1), hq(N + 1), hp(N + 1), hpp(N + 1), hqp(N + 1), slope(N + 1);
  for (int i = 0; i <= n_x; ++i) {
    const double q = lam * w.X[i];
    for (int j = 0; j <= N; ++j) {
      h[j] = level[j](q);
      hq[j] = level[j].derivative(q);
    }
    h[0] = 0.0;
    hq[0] = 0.0;
    for (int j = 0; j <= N; ++j) {
      hp[j] = d1(h, dp, j);
      hpp[j] = d2(h, dp, j);
      hqp[j] = d1(hq, dp, j);
      if (j > 0 && !(h[j] > h[j - 1])) {
        throw Error("continuation", ErrorKind::HodographBreakdown, "non-monotone column");
      }
      if (!(hp[j] > 0)) throw Error("continuation", ErrorKind::HodographBreakdown, "h_p <= 0");
      slope[j] = 1.0 / hp[j];
    }
    const MonotoneCubic inv(h, g.p, slope, false);
    w.xi[i] = h[N];
    w.xi_x[i] = lam * hq[N];
    for (int k = 0; k <= n_y; ++k) {
      const double p = k == n_y ? 1.0 : std::clamp(inv(w.eta[k] * h[N]), 0.0, 1.0);
      const double a = lagrange4(hp, dp, p), b = lagrange4(hq, dp, p);
      const double c = lagrange4(hpp, dp, p), e = lagrange4(hqp, dp, p);
      w.psi(i, k) = p;
      w.psi_Y(i, k) = 1.0 / a;
      w.psi_X(i, k) = -lam * b / a;
      w.psi_YY(i, k) = -c / (a * a * a);
      w.psi_XY(i, k) = -lam * (e * a - b * c) / (a * a * a);
    }
    const double py = w.psi_Y(i, n_y), px = w.psi_X(i, n_y);
    w.rho_exact[i] = (1 + px * w.psi_XY(i, n_y) + py * w.psi_YY(i, n_y)) /
                     (py * std::sqrt(px * px + py * py));
  }
  return w;
}

RobinCoefficient robin_coefficient(const PhysicalWave& w) {
  const int nx = w.n_x(), ny = w.n_y();
  if (ny < 5) throw Error("frechet", ErrorKind::Validation, "need at least 6 eta nodes");
  const double he = 1.0 / ny, hx = w.L / nx;
  std::vector<double> pe(nx + 1), pee(nx + 1);
  for (int i = 0; i <= nx; ++i) {
    auto f = [&](int k) { return w.psi(i, ny - k); };
    pe[i] = (25 * f(0) - 48 * f(1) + 36 * f(2) - 16 * f(3) + 3 * f(4)) / (12 * he);
    pee[i] = (45 * f(0) - 154 * f(1) + 214 * f(2) - 156 * f(3) + 61 * f(4) - 10 * f(5)) /
             (12 * he * he);
  }
  // X-derivative of Psi_eta on the surface; the profile is even about X = 0 and X = L.
  auto at = [&](int i) {
    if (i < 0) i = -i;
    if (i > nx) i = 2 * nx - i;
    return pe[i];
  };
  RobinCoefficient r;
  r.X = w.X;
  r.rho.resize(nx + 1);
  for (int i = 0; i <= nx; ++i) {
    const double xi = w.xi[i], xp = w.xi_x[i];
    const double pex = (at(i - 2) - 8 * at(i - 1) + 8 * at(i + 1) - at(i + 2)) / (12 * hx);
    const double py = pe[i] / xi;
    if (!(py >= kStagnation)) {
      throw Error("frechet", ErrorKind::Stagnation,
                  "Psi_Y = " + std::to_string(py) + " at surface X = " + std::to_string(w.X[i]));
    }
    const double px = -xp / xi * pe[i];
    const double pyy = pee[i] / (xi * xi);
    const double pxy = (pex - xp / xi * pe[i] - xp / xi * pee[i]) / xi;
    r.rho[i] = (1 + px * pxy + py * pyy) / (py * std::sqrt(px * px + py * py));
  }
  return r;
}

double default_truncation(const StreamSolution& stream) {
  const auto sp = interval_spectrum(stream, 1);
  const double nu0 = sp.eigenvalues.empty() ? 0.0 : sp.eigenvalues[0];
  return nu0 > 0 ? std::max(10.0, 8.0 / std::sqrt(nu0)) : 10.0;
}

SpectrumReport physical_spectrum(const PhysicalWave& wave, int k, double L, int n_x, int n_y) {
  if (k < 1) throw Error("frechet", ErrorKind::Validation, "k must be >= 1");
  const double Lr = L > 0 ? L : wave.L;
  const int nxr = n_x > 0 ? n_x : wave.n_x(), nyr = n_y > 0 ? n_y : wave.n_y();
  const bool same = Lr == wave.L && nxr == wave.n_x() && nyr == wave.n_y();
  const PhysicalWave w = same              ? wave
                         : is_flat(wave) ? uniform_wave(wave.stream_limit, Lr, nxr, nyr)
                                         : resample(wave, Lr, nxr, nyr);
  const std::vector<double> rho = w.rho_exact.empty() ? robin_coefficient(w).rho : w.rho_exact;
  const Assembly a = assemble(w, rho, Exec::Serial);
  const int n = static_cast<int>(a.M.size());

  SpectrumReport rep;
  rep.problem_tag = ProblemTag::Physical2D;
  rep.grid_points = n;
  rep.grid = w.X;
  const auto nu = interval_spectrum(w.stream_limit, 1);
  if (!nu.eigenvalues.empty()) rep.nu0_reference = nu.eigenvalues[0];

  auto shifted = [&](double s) {
    Eigen::SparseMatrix<double> S = a.K;
    for (int i = 0; i < n; ++i) S.coeffRef(i, i) -= s * a.M(i);
    return S;
  };
  rep.negative_count = eigs::negative_inertia(shifted(-1e-9));
  double sigma = std::min(0.0, rep.nu0_reference.value_or(0.0)) - 1.0;
  for (int it = 0; it < 60 && eigs::negative_inertia(shifted(sigma)) > 0; ++it) {
    sigma = 2 * sigma - 1;
  }
  const Eigen::VectorXd isq = a.M.cwiseSqrt().cwiseInverse();
  Eigen::SparseMatrix<double> C = isq.asDiagonal() * a.K * isq.asDiagonal();
  const auto pairs = eigs::nearest(C, Eigen::VectorXd::Ones(n), k, sigma);
  rep.eigenvalues = pairs.values;
  rep.residuals = pairs.residuals;
  for (std::size_t e = 0; e < pairs.vectors.size(); ++e) {
    Eigen::VectorXd v = isq.cwiseProduct(pairs.vectors[e]);
    v.normalize();
    int lead = 0;
    v.cwiseAbs().maxCoeff(&lead);
    if (v(lead) < 0) v = -v;
    if (e == 0 && !w.periodic) {
      double tail = 0.0, total = 0.0;
      for (int i = 0; i <= a.nx; ++i)
        for (int j = 1; j <= a.ny; ++j) {
          const double m = a.M(a.index(i, j)) * v(a.index(i, j)) * v(a.index(i, j));
          total += m;
          if (w.X[i] >= 0.9 * w.L) tail += m;
        }
      rep.truncation_warning = tail > 1e-3 * total;
    }
    rep.eigenvectors.emplace_back(v.data(), v.data() + v.size());
  }
  return rep;
}

std::vector<int> negative_count_series(const std::vector<PhysicalWave>& waves, int k, Exec exec) {
  const int n = static_cast<int>(waves.size());
  std::vector<int> out(n, 0);
  std::vector<std::string> errors(n);
#pragma omp parallel for if (exec == Exec::Parallel) num_threads(thread_cap()) schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = physical_spectrum(waves[i], k).negative_count;
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!errors[i].empty()) throw Error("frechet", ErrorKind::DiscretizationFailure, errors[i]);
  }
  return out;
}

double psi_x_residual(const PhysicalWave& w) {
  const std::vector<double> rho = w.rho_exact.empty() ? robin_coefficient(w).rho : w.rho_exact;
  const Assembly a = assemble(w, rho, Exec::Serial);
  Eigen::VectorXd z(a.M.size());
  double zmax = 0.0;
  for (int i = 0; i <= a.nx; ++i)
    for (int j = 1; j <= a.ny; ++j) {
      z(a.index(i, j)) = w.psi_X(i, j);
      zmax = std::max(zmax, std::abs(w.psi_X(i, j)));
    }
  if (zmax < 1e-12) return 0.0;
  const Eigen::VectorXd r = a.K * z;
  double res = 0.0;
  for (int i = 1; i < a.nx; ++i)
    for (int j = 1; j < a.ny; ++j)
      res = std::max(res, std::abs(r(a.index(i, j)) / a.M(a.index(i, j))));
  return res / zmax;
}

std::vector<double> flow_force(const PhysicalWave& wave, const std::vector<double>& xs) {
  return force(wave, xs, false);
}

std::vector<double> flow_force_printed(const PhysicalWave& wave, const std::vector<double>& xs) {
  return force(wave, xs, true);
}

}  // namespace wavebranch
