#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "wavebranch/error.hpp"
#include "wavebranch/sweeps.hpp"

using namespace wavebranch;

TEST_CASE("serial and parallel sweeps agree exactly") {
  const VorticityModel m({1.0, -2.0});
  std::vector<double> s;
  for (int i = 0; i < 12; ++i) s.push_back(0.75 + 0.2 * i);
  const auto a = stream_sweep(m, s, Exec::Serial), b = stream_sweep(m, s, Exec::Parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].s == b[i].s);
    CHECK(a[i].R == b[i].R);
    CHECK(a[i].F == b[i].F);
    CHECK(a[i].rho0 == b[i].rho0);
  }
  const auto st = solve_stream(m, 0.9);
  std::vector<double> taus{0.0, 0.5, 1.0, 2.0, 4.0};
  CHECK(sigma_sweep(st, taus, Exec::Serial) == sigma_sweep(st, taus, Exec::Parallel));
  const auto fa = froude_sweep(m, s, Exec::Serial), fb = froude_sweep(m, s, Exec::Parallel);
  for (std::size_t i = 0; i < fa.size(); ++i) CHECK(fa[i].F_hodograph == fb[i].F_hodograph);
}

TEST_CASE("slope identity on the irrotational family") {
  std::vector<double> s;
  for (int i = 0; i < 20; ++i) s.push_back(0.3 + 0.15 * i);
  for (const auto& r : bernoulli_slope_sweep(VorticityModel::zero(), s)) {
    // R = s^2/2 + 1/s, F^2 = s^3.
    CHECK(r.rhs == doctest::Approx(r.s * (1 - std::pow(r.s, -3))).epsilon(1e-9));
    CHECK(std::abs(r.defect) <= 1e-5);
  }
}

TEST_CASE("errors inside a parallel sweep surface after the loop") {
  const VorticityModel m({1.0, -2.0});  // s0 = sqrt(1/2)
  CHECK_THROWS_AS(stream_sweep(m, {1.0, 0.1, 2.0}), Error);
}

TEST_CASE("thread cap honours WAVEBRANCH_THREADS") {
  setenv("WAVEBRANCH_THREADS", "3", 1);
  CHECK(thread_cap() == 3);
  setenv("WAVEBRANCH_THREADS", "0", 1);
  CHECK(thread_cap() >= 1);
  unsetenv("WAVEBRANCH_THREADS");
}
