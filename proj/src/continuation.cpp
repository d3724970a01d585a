#include "wavebranch/continuation.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <numbers>

#include "wavebranch/dispersion.hpp"
#include "wavebranch/eigs.hpp"
#include "wavebranch/error.hpp"

namespace wavebranch {
namespace {

Eigen::VectorXd pack(const HodographGrid& g, const Eigen::MatrixXd& h) {
  Eigen::VectorXd x(g.unknowns());
  for (int i = 0; i <= g.M; ++i)
    for (int j = 1; j <= g.N; ++j) x(g.index(i, j)) = h(i, j);
  return x;
}

Eigen::MatrixXd unpack(const HodographGrid& g, const Eigen::VectorXd& x) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(g.M + 1, g.N + 1);
  for (int i = 0; i <= g.M; ++i)
    for (int j = 1; j <= g.N; ++j) h(i, j) = x(g.index(i, j));
  return h;
}

HodographResidual split(const HodographGrid& g, const Eigen::VectorXd& e) {
  HodographResidual r;
  r.interior.resize(g.M + 1, g.N - 1);
  r.boundary.resize(g.M + 1);
  for (int i = 0; i <= g.M; ++i) {
    for (int j = 1; j < g.N; ++j) r.interior(i, j - 1) = e(g.index(i, j));
    r.boundary(i) = e(g.index(i, g.N));
  }
  return r;
}

Eigen::MatrixXd kernel_field(const BranchSetup& s) {
  const auto& g = s.grid;
  Eigen::MatrixXd phi(g.M + 1, g.N + 1);
  for (int i = 0; i <= g.M; ++i) {
    const double c = std::cos(s.tau_star_h * g.q[i]);
    for (int j = 0; j <= g.N; ++j) phi(i, j) = s.alpha_h[j] * c;
  }
  return phi;
}

}  // namespace

BranchSetup make_branch_setup(const VorticityModel& model, double R, int n_q, int n_p) {
  BranchSetup s;
  s.model = model;
  s.R = R;
  const auto curve = bernoulli_curve(model);
  const auto roots = invert_bernoulli(model, curve, R);
  if (!roots.s_plus) {
    throw Error("continuation", ErrorKind::NoSolution, "no subcritical stream at this R");
  }
  s.stream = solve_stream(model, *roots.s_plus);
  const auto ts = tau_star(s.stream);
  if (!ts.tau_star) throw Error("continuation", ErrorKind::NoRoot, "stream has no dispersion root");
  s.tau_star = *ts.tau_star;
  const double sp = s.stream.s();
  s.base = discrete_stream(model, n_p, R, 0.5 * sp * sp, 0.5 * curve.s_c * curve.s_c);
  s.tau_star_h = discrete_tau_star(s.base.h, s.tau_star);
  discrete_dispersion(s.base.h, s.tau_star_h, &s.alpha_h);
  s.grid = HodographGrid::make(n_q, n_p, 2 * std::numbers::pi / s.tau_star_h, model);
  return s;
}

double amplitude_of(const HodographGrid& g, const Eigen::MatrixXd& h) {
  return h(0, g.N) - g.trough_weights.dot(h.col(g.N));
}

WaveField uniform_field(const BranchSetup& setup) {
  const auto& g = setup.grid;
  WaveField f;
  f.h.resize(g.M + 1, g.N + 1);
  for (int i = 0; i <= g.M; ++i)
    for (int j = 0; j <= g.N; ++j) f.h(i, j) = setup.base.h[j];
  f.lambda = 1.0;
  f.R = setup.R;
  f.amplitude = 0.0;
  f.final_residual = hodograph_equations(g, f.h, 1.0, setup.R).cwiseAbs().maxCoeff();
  f.residual_history = {f.final_residual};
  return f;
}

HodographResidual residual(const BranchSetup& setup, const WaveField& field,
                           const Eigen::MatrixXd& w) {
  const auto& g = setup.grid;
  const Eigen::VectorXd e1 = hodograph_equations(g, field.h + w, field.lambda, field.R);
  const Eigen::VectorXd e0 = hodograph_equations(g, field.h, field.lambda, field.R);
  return split(g, e1 - e0);
}

HodographResidual frechet_apply(const BranchSetup& setup, const WaveField& field,
                                const Eigen::MatrixXd& w) {
  const auto& g = setup.grid;
  const auto J = hodograph_jacobian(g, field.h, field.lambda);
  auto r = split(g, J * pack(g, w));
  r.boundary = -r.boundary;
  return r;
}

WaveField newton_solve(const BranchSetup& setup, const WaveField& guess, double amplitude_target,
                       const NewtonOptions& opt) {
  if (amplitude_target == 0.0) return uniform_field(setup);
  const auto& g = setup.grid;
  const int n = g.unknowns();
  WaveField f = guess;
  f.R = setup.R;
  f.residual_history.clear();
  auto eval = [&](const Eigen::MatrixXd& h, double lam, Eigen::VectorXd& e) {
    e.resize(n + 1);
    e.head(n) = hodograph_equations(g, h, lam, setup.R);
    e(n) = amplitude_of(g, h) - amplitude_target;
    return e.cwiseAbs().maxCoeff();
  };
  Eigen::VectorXd e;
  double res = eval(f.h, f.lambda, e);
  double damp = opt.damping;
  for (int it = 0;; ++it) {
    f.residual_history.push_back(res);
    if (res <= opt.tol) {
      f.iterations = it;
      break;
    }
    if (it >= opt.max_iter) {
      throw Error("continuation", ErrorKind::NonConvergence,
                  "Newton did not converge, residual " + std::to_string(res));
    }
    Eigen::VectorXd dl;
    const auto J = hodograph_jacobian(g, f.h, f.lambda, &dl);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(J.nonZeros() + 2 * n + 2);
    for (int c = 0; c < J.outerSize(); ++c)
      for (Eigen::SparseMatrix<double>::InnerIterator itj(J, c); itj; ++itj)
        trip.emplace_back(itj.row(), itj.col(), itj.value());
    for (int r = 0; r < n; ++r)
      if (dl(r) != 0.0) trip.emplace_back(r, n, dl(r));
    trip.emplace_back(n, g.index(0, g.N), 1.0);
    for (int m = 0; m <= g.M; ++m) trip.emplace_back(n, g.index(m, g.N), -g.trough_weights(m));
    Eigen::SparseMatrix<double> Jb(n + 1, n + 1);
    Jb.setFromTriplets(trip.begin(), trip.end());
    Jb.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(Jb);
    if (lu.info() != Eigen::Success) {
      throw Error("continuation", ErrorKind::NonConvergence, "singular Newton matrix");
    }
    const Eigen::VectorXd dx = lu.solve(e);
    const Eigen::MatrixXd dh = unpack(g, dx.head(n));
    double t = damp;
    bool accepted = false;
    for (int ls = 0; ls < 12; ++ls, t *= 0.5) {
      const Eigen::MatrixXd h1 = f.h - t * dh;
      const double l1 = f.lambda - t * dx(n);
      Eigen::VectorXd e1;
      double r1;
      try {
        r1 = eval(h1, l1, e1);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::HodographBreakdown) throw;
        continue;
      }
      if (r1 < res || r1 <= opt.tol) {
        f.h = h1;
        f.lambda = l1;
        e = e1;
        res = r1;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Surface the breakdown if the full step is the reason.
      (void)hodograph_equations(g, f.h - damp * dh, f.lambda - damp * dx(n), setup.R);
      throw Error("continuation", ErrorKind::NonConvergence, "line search failed");
    }
    damp = std::min(1.0, 2 * t);
  }
  f.final_residual = res;
  f.amplitude = amplitude_of(g, f.h);
  return f;
}

SpectrumReport hodograph_spectrum(const BranchSetup& setup, const WaveField& field, int k) {
  const auto& g = setup.grid;
  const auto J = hodograph_jacobian(g, field.h, field.lambda);
  Eigen::VectorXd B = Eigen::VectorXd::Ones(g.unknowns());
  for (int i = 0; i <= g.M; ++i) B(g.index(i, g.N)) = 0.0;
  const auto pairs = eigs::lowest(J, B, k);
  SpectrumReport rep;
  rep.problem_tag = ProblemTag::Hodograph2D;
  rep.grid_points = g.unknowns();
  rep.grid = g.p;
  rep.eigenvalues = pairs.values;
  rep.residuals = pairs.residuals;
  for (auto v : pairs.vectors) {
    int lead = 0;
    v.cwiseAbs().maxCoeff(&lead);
    if (v(lead) < 0) v = -v;
    rep.eigenvectors.emplace_back(v.data(), v.data() + v.size());
  }
  rep.negative_count = count_negative(rep.eigenvalues);
  return rep;
}

BranchState branch_start(const BranchSetup& setup) {
  BranchState s;
  BranchPoint p;
  p.field = uniform_field(setup);
  p.Lambda = setup.grid.Lambda0;
  s.points.push_back(std::move(p));
  return s;
}

BranchState branch_extend(const BranchSetup& setup, BranchState state, double d_amplitude,
                          int n_steps, const NewtonOptions& opt, bool with_spectrum) {
  if (state.points.empty()) state = branch_start(setup);
  if (d_amplitude <= 0.0) {
    state.stop_reason = "duplicate point rejected";
    return state;
  }
  for (int step = 0; step < n_steps && !state.stopped; ++step) {
    const BranchPoint& last = state.points.back();
    const double target = last.amplitude + d_amplitude;
    WaveField guess = last.field;
    if (state.points.size() >= 2) {
      const BranchPoint& prev = state.points[state.points.size() - 2];
      const double r = (target - last.amplitude) / (last.amplitude - prev.amplitude);
      guess.h = last.field.h + r * (last.field.h - prev.field.h);
      guess.lambda = last.field.lambda + r * (last.field.lambda - prev.field.lambda);
    } else {
      const Eigen::MatrixXd phi = kernel_field(setup);
      guess.h = last.field.h + (target - last.amplitude) / amplitude_of(setup.grid, phi) * phi;
    }
    try {
      BranchPoint p;
      p.field = newton_solve(setup, guess, target, opt);
      p.amplitude = p.field.amplitude;
      p.lambda = p.field.lambda;
      p.Lambda = setup.grid.Lambda0 / p.lambda;
      if (with_spectrum) {
        const auto sp = hodograph_spectrum(setup, p.field, 3);
        if (sp.eigenvalues.size() >= 2) {
          p.mu0 = sp.eigenvalues[0];
          p.mu1 = sp.eigenvalues[1];
          p.spectrum_done = true;
        }
      }
      state.points.push_back(std::move(p));
    } catch (const Error& e) {
      state.stopped = true;
      state.stop_reason = e.name() + ": " + e.what();
    }
  }
  return state;
}

LambdaFit fit_lambda2(const BranchSetup& setup, const BranchState& state) {
  std::vector<double> a, y;
  for (const auto& p : state.points) {
    if (p.amplitude <= 0.0) continue;
    a.push_back(p.amplitude);
    y.push_back((p.lambda - 1.0) / (p.amplitude * p.amplitude));
  }
  LambdaFit fit;
  if (a.empty()) return fit;
  if (a.size() == 1) {
    fit.c2 = y[0];
  } else {
    Eigen::MatrixXd A(a.size(), 2);
    Eigen::VectorXd b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      A(i, 0) = 1.0;
      A(i, 1) = a[i] * a[i];
      b(i) = y[i];
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
    fit.c2 = c(0);
    fit.c4 = c(1);
  }
  const double k = 2.0 / setup.stream.kappa();
  fit.lambda2 = fit.c2 * k * k;
  return fit;
}

}  // namespace wavebranch
