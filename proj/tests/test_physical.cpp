#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "wavebranch/continuation.hpp"
#include "wavebranch/error.hpp"
#include "wavebranch/physical.hpp"
#include "wavebranch/spectra.hpp"

using namespace wavebranch;

namespace {

std::vector<double> stations(const PhysicalWave& w) {
  std::vector<double> x(8);
  for (int i = 0; i < 8; ++i) x[i] = w.L * i / 7;
  return x;
}

struct Branch {
  BranchSetup setup;
  BranchState state;
};

const Branch& branch() {
  static const Branch b = [] {
    const auto m = VorticityModel({1.0, -2.0});
    Branch r;
    r.setup = make_branch_setup(m, bernoulli_curve(m).R_c + 0.02);
    r.state = branch_extend(r.setup, branch_start(r.setup), 0.02, 3, {}, false);
    return r;
  }();
  return b;
}

}  // namespace

TEST_CASE("flat strip spectrum is the tensor decomposition") {
  const auto st = solve_stream(VorticityModel::zero(), 2.0);
  const double L = 10.0;
  const double nu = interval_eigenvalues(st, 1, 4096)[0];
  const auto sp = physical_spectrum(uniform_wave(st, L, 64, 64), 3);
  // Neumann at both ends: lateral eigenvalues (k pi / L)^2.
  for (int k = 0; k < 3; ++k) {
    const double expect = nu + std::pow(k * M_PI / L, 2);
    CHECK(std::abs(sp.eigenvalues[k] - expect) <= 0.02 * expect);
  }
  CHECK(sp.negative_count == 0);
  CHECK(sp.truncation_warning);
}

TEST_CASE("uniform flow force values") {
  const auto st = solve_stream(VorticityModel::zero(), 2.0);
  const auto w = uniform_wave(st, 10.0, 16, 16);
  for (double S : flow_force(w, stations(w))) CHECK(S == doctest::Approx(4.25).epsilon(1e-12));
  CHECK(flow_force_printed(w, {3.0})[0] == doctest::Approx(3.125).epsilon(1e-12));
}

TEST_CASE("Robin coefficient of uniform streams") {
  const auto st = solve_stream(VorticityModel({1.0, -2.0}), 1.7);
  const auto rc = robin_coefficient(uniform_wave(st, 5.0, 16, 64));
  for (double r : rc.rho) CHECK(r == doctest::Approx(st.rho0()).epsilon(1e-7));
}

TEST_CASE("stagnant surface raises a stagnation error") {
  const auto st = solve_stream(VorticityModel::zero(), 2.0);
  auto w = uniform_wave(st, 5.0, 16, 16);
  for (int i = 0; i <= w.n_x(); ++i)
    for (int k = w.n_y() - 4; k <= w.n_y(); ++k) w.psi(i, k) = 1.0;
  try {
    robin_coefficient(w);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Stagnation);
  }
}

TEST_CASE("reconstructed waves") {
  const auto& b = branch();
  REQUIRE_FALSE(b.state.stopped);
  std::vector<PhysicalWave> waves;
  for (std::size_t i = 1; i < b.state.points.size(); ++i)
    waves.push_back(reconstruct_physical(b.setup, b.state.points[i].field, 64, 64));
  for (const auto& w : waves) {
    CHECK(w.periodic);
    const auto S = flow_force(w, stations(w));
    const auto [lo, hi] = std::minmax_element(S.begin(), S.end());
    CHECK(*hi - *lo <= 1e-5 * std::abs(S[0]));
    const auto rc = robin_coefficient(w);
    for (std::size_t i = 0; i < rc.rho.size(); ++i)
      CHECK(std::abs(rc.rho[i] - w.rho_exact[i]) <= 2e-5 * std::max(1.0, std::abs(w.rho_exact[i])));
    CHECK(psi_x_residual(w) <= 1e-2);

    const auto sp = physical_spectrum(w, 2);
    CHECK(sp.negative_count == 1);
    CHECK(sp.eigenvalues[1] >= -1e-6);
    // Ground state keeps one sign away from the bed.
    const auto& v = sp.eigenvectors[0];
    const int ny = w.n_y();
    double vmin = INFINITY, vmax = -INFINITY;
    for (int i = 0; i <= w.n_x(); ++i)
      for (int k = 1; k <= ny; ++k) {
        const double x = v[static_cast<std::size_t>(i) * ny + (k - 1)];
        vmin = std::min(vmin, x);
        vmax = std::max(vmax, x);
      }
    CHECK(vmin * vmax >= 0);
  }
  const auto ser = negative_count_series(waves, 2, Exec::Serial);
  const auto par = negative_count_series(waves, 2, Exec::Parallel);
  CHECK(ser == par);
  CHECK(std::all_of(ser.begin(), ser.end(), [](int n) { return n == 1; }));
}
