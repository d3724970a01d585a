// Acceptance suite: one PASS/FAIL line per criterion; exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wavebranch/continuation.hpp"
#include "wavebranch/dispersion.hpp"
#include "wavebranch/expansion.hpp"
#include "wavebranch/physical.hpp"
#include "wavebranch/spectra.hpp"
#include "wavebranch/stream.hpp"
#include "wavebranch/sweeps.hpp"
#include "wavebranch/verify.hpp"

using namespace wavebranch;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b), fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Irrotational oracles: U = sY, d = 1/s, gamma = sinh(tau Y).
double tau_star_zero(double s) {
  const double d = 1 / s;
  return bisect([&](double t) { return t / std::tanh(t * d) - 1 / (s * s); }, 1e-9, 50.0);
}

double nu0_zero(double s) {
  const double d = 1 / s, k_hi = M_PI / (2 * d);
  const double k = bisect([&](double k) { return std::tan(k * d) - k * s * s; }, 1e-9, k_hi - 1e-12);
  return k * k;
}

std::vector<double> sample_s(const VorticityModel& m, int n) {
  const auto curve = bernoulli_curve(m);
  const double lo = m.s0() + 0.3 * (curve.s_c - m.s0()), hi = 3 * curve.s_c;
  std::vector<double> s;
  for (int i = 0; i < n; ++i) s.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
  return s;
}

Outcome c1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = bernoulli_curve(VorticityModel::zero());
  const double err = std::max(std::abs(c.s_c - 1), std::abs(c.R_c - 1.5));
  const double t = seconds_since(t0);
  return {err <= 1e-8 && t < 1, fmt("s_c err/R_c err max %.3g, %.3f s", err, t)};
}

Outcome c2() {
  const auto r = invert_bernoulli(VorticityModel::zero(), 2.5);
  const double e1 = std::abs(*r.s_minus - 2), e2 = std::abs(*r.s_plus - (std::sqrt(2.0) - 1));
  return {std::max(e1, e2) <= 1e-8, fmt("|s- - 2| = %.3g, |s+ - (sqrt2 - 1)| = %.3g", e1, e2)};
}

Outcome c3() {
  double worst = 0, printed = 0;
  int pairs = 0;
  for (const auto& m : builtin_models()) {
    const auto c = bernoulli_curve(m);
    const std::vector<double> s{m.s0() + 0.4 * (c.s_c - m.s0()), m.s0() + 0.8 * (c.s_c - m.s0()),
                                1.25 * c.s_c, 2 * c.s_c, 4 * c.s_c};
    for (const auto& f : froude_sweep(m, s)) {
      worst = std::max({worst, std::abs(f.F - f.F_depth_slope), std::abs(f.F - f.F_hodograph),
                        std::abs(f.F_depth_slope - f.F_hodograph)});
      printed = std::max(printed, std::abs(f.F_printed_exponent - f.F) / f.F);
      ++pairs;
    }
  }
  const auto rep = verify_models({VorticityModel::zero()});
  const bool documented =
      std::any_of(rep.discrepancies.begin(), rep.discrepancies.end(),
                  [](const Discrepancy& d) { return d.name == "froude_printed_exponent"; });
  return {pairs == 20 && worst <= 1e-5 && documented,
          fmt("%g pairs, max pairwise %.3g; exponent -2 form off by up to %.3g relative", pairs,
              worst, printed)};
}

Outcome c4() {
  double worst = 0;
  for (const auto& r : r_asymptotic_check(VorticityModel::zero(), {8, 64, 512}))
    worst = std::max(worst, std::abs(r.defect - std::pow(r.F, -2.0 / 3.0)));
  return {worst <= 1e-6, fmt("max |R - F^(4/3)/2 - F^(-2/3)| = %.3g", worst)};
}

Outcome c5() {
  double worst = 0;
  for (const auto& m : builtin_models())
    for (const auto& r : bernoulli_slope_sweep(m, sample_s(m, 20)))
      worst = std::max(worst, std::abs(r.defect));
  return {worst <= 1e-5, fmt("80 samples, max |R' - s(1 - F^-2)| = %.3g", worst)};
}

Outcome c6() {
  const double s = std::sqrt(2.0) - 1;
  const auto st = solve_stream(VorticityModel::zero(), s);
  const double ts = *tau_star(st).tau_star, oracle = tau_star_zero(s);
  const double err = std::abs(ts - oracle);

  std::vector<double> taus(1000);
  for (int i = 0; i < 1000; ++i) taus[i] = 2 * ts * i / 999;
  const auto sg = sigma_sweep(st, taus);
  bool increasing = true;
  for (std::size_t i = 1; i < sg.size(); ++i) increasing = increasing && sg[i] > sg[i - 1];

  std::mt19937_64 rng(7);
  const auto models = builtin_models();
  int mismatch = 0;
  for (int i = 0; i < 50; ++i) {
    const auto& m = models[rng() % models.size()];
    const auto c = bernoulli_curve(m);
    const double u = std::uniform_real_distribution<double>(0.05, 3.0)(rng);
    const double sr = m.s0() + u * (c.s_c - m.s0());
    const auto sti = solve_stream(m, sr);
    if ((sigma(sti, 0.0) > 0) != (sti.F() > 1)) ++mismatch;
  }
  return {err <= 1e-8 && increasing && mismatch == 0,
          fmt("|tau* - oracle| = %.3g, increasing = %g, sign mismatches = %g", err, increasing,
              mismatch)};
}

Outcome c7() {
  const auto st = solve_stream(VorticityModel::zero(), 2.0);
  const double nu = interval_eigenvalues(st, 1, 2048).at(0), oracle = nu0_zero(2.0);
  const double rel = std::abs(nu - oracle) / oracle;
  double min_nu = INFINITY;
  for (const auto& m : builtin_models()) {
    const auto c = bernoulli_curve(m);
    for (double f : {1.2, 2.0, 4.0}) {
      const auto sti = solve_stream(m, f * c.s_c);
      if (sti.F() > 1) min_nu = std::min(min_nu, interval_eigenvalues(sti, 1, 1024).at(0));
    }
  }
  return {rel <= 1e-4 && min_nu > 0,
          fmt("nu0 rel err %.3g (oracle %.8g); min nu0 over F > 1 streams %.4g", rel, oracle,
              min_nu)};
}

Outcome c8() {
  const auto st = solve_stream(VorticityModel::zero(), 2.0);
  const double nu = nu0_zero(2.0), L = default_truncation(st);
  std::vector<double> err;
  double t128 = 0;
  for (int n : {32, 64, 128}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto sp = physical_spectrum(uniform_wave(st, L, n, n), 1);
    if (n == 128) t128 = seconds_since(t0);
    err.push_back(std::abs(sp.eigenvalues.at(0) - nu) / nu);
  }
  const double order = std::log2(err[1] / err[2]);
  return {err[2] <= 0.02 && order > 1.7 && order < 2.3 && t128 < 60,
          fmt("rel err at 128^2 %.3g, observed order %.3f, %.2f s", err[2], order, t128)};
}

struct BranchRun {
  BranchSetup setup;
  BranchState state;
};

const BranchRun& branch_run() {
  static const BranchRun run = [] {
    const auto m = VorticityModel::zero();
    BranchRun r;
    r.setup = make_branch_setup(m, bernoulli_curve(m).R_c + 0.01);
    r.state = branch_extend(r.setup, branch_start(r.setup), 1e-3, 5);
    return r;
  }();
  return run;
}

Outcome c9() {
  const auto& b = branch_run();
  const auto& pts = b.state.points;
  bool ok = !b.state.stopped && pts.size() == 6;
  bool signs = true;
  for (std::size_t i = 1; i < pts.size(); ++i)
    signs = signs && pts[i].spectrum_done && pts[i].mu0 < 0 && pts[i].mu1 > 0;
  const auto fit = fit_lambda2(b.setup, b.state);
  const auto ex = lambda2_mu2(b.setup.stream);
  const double rel = std::abs(fit.lambda2 - ex.lambda2) / std::abs(ex.lambda2);
  return {ok && signs && fit.lambda2 < 0 && rel <= 0.05 && ex.mu2 > 0,
          fmt("fit lambda2 %.6g, expansion %.6g, mu2 %.4g", fit.lambda2, ex.lambda2, ex.mu2) +
              (signs ? ", mu0 < 0 < mu1 at every point" : ", hodograph sign violated")};
}

Outcome c10() {
  const auto& b = branch_run();
  double worst = 0;
  for (std::size_t i = 1; i < b.state.points.size(); ++i) {
    const auto w = reconstruct_physical(b.setup, b.state.points[i].field, 64, 64);
    std::vector<double> x(8);
    for (int k = 0; k < 8; ++k) x[k] = w.L * k / 7;
    const auto S = flow_force(w, x);
    const auto [lo, hi] = std::minmax_element(S.begin(), S.end());
    worst = std::max(worst, (*hi - *lo) / std::abs(S[0]));
  }
  const auto st = solve_stream(VorticityModel::zero(), 2.0);
  const auto w = uniform_wave(st, 10.0, 16, 16);
  const double printed = flow_force_printed(w, {0.0})[0], invariant = flow_force(w, {0.0})[0];
  const double e1 = std::abs(printed - 3.125), e2 = std::abs(invariant - 4.25);
  return {worst <= 1e-5 && e1 <= 1e-9 && e2 <= 1e-9,
          fmt("max relative spread %.3g; uniform S %.3g off 3.125, invariant form %.3g off 4.25",
              worst, e1, e2)};
}

Outcome c11() {
  const auto m = VorticityModel::zero();
  const auto setup = make_branch_setup(m, bernoulli_curve(m).R_c + 0.01);
  const auto sp = hodograph_spectrum(setup, uniform_field(setup), 4);
  int small = 0, which = -1;
  for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i)
    if (std::abs(sp.eigenvalues[i]) <= 1e-4) {
      ++small;
      which = static_cast<int>(i);
    }
  if (small != 1) return {false, fmt("%g near-zero eigenvalues", small)};

  const auto& g = setup.grid;
  const double s = setup.stream.s(), d = 1 / s, tau = tau_star_zero(s);
  const auto& v = sp.eigenvectors[which];
  std::vector<double> o(v.size());
  for (int i = 0; i <= g.M; ++i)
    for (int j = 1; j <= g.N; ++j)
      o[g.index(i, j)] = std::sinh(tau * d * g.p[j]) * std::cos(2 * M_PI * g.q[i] / g.Lambda0);
  auto normalise = [](std::vector<double>& x) {
    int lead = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
      if (std::abs(x[i]) > std::abs(x[lead])) lead = static_cast<int>(i);
    const double a = x[lead];
    for (auto& e : x) e /= a;
  };
  std::vector<double> vv = v;
  normalise(vv);
  normalise(o);
  double diff = 0;
  for (std::size_t i = 0; i < o.size(); ++i) diff = std::max(diff, std::abs(vv[i] - o[i]));
  return {diff <= 1e-3, fmt("one near-zero eigenvalue %.3g; eigenvector mismatch %.3g",
                            sp.eigenvalues[which], diff)};
}

Outcome c12() {
  int streams = 0, violations = 0;
  std::string flagged;
  for (const auto& m : builtin_models()) {
    const auto c = bernoulli_curve(m);
    for (double dR : {0.01, 0.03, 0.05}) {
      const double R = c.R_c + dR;
      if (c.R_0_finite && R >= c.R_0) continue;
      const auto st = solve_stream(m, *invert_bernoulli(m, c, R).s_plus);
      const auto ex = lambda2_mu2(st, 1024);
      ++streams;
      if (!(ex.c1 < 0 && ex.lambda2 < 0 && ex.mu2 > 0)) {
        ++violations;
        flagged += " [" + m.describe() + ", R - R_c = " + fmt("%g", dR) + "]";
      }
    }
  }
  return {violations == 0 && streams > 0,
          fmt("%g streams, %g violations", streams, violations) + flagged};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, Outcome (*)()>> criteria{
      {1, c1}, {2, c2}, {3, c3}, {4, c4},  {5, c5},   {6, c6},
      {7, c7}, {8, c8}, {9, c9}, {10, c10}, {11, c11}, {12, c12}};
  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
