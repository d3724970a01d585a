#include <doctest.h>

#include <cmath>
#include <random>

#include "wavebranch/dispersion.hpp"
#include "wavebranch/sweeps.hpp"

using namespace wavebranch;

namespace {

// omega = 0: gamma = sinh(tau Y), sigma = s tau coth(tau d) - 1/s.
double sigma_zero(double s, double tau) {
  const double d = 1 / s;
  const double ratio = tau == 0 ? 1 / d : tau / std::tanh(tau * d);
  return s * ratio - 1 / s;
}

}  // namespace

TEST_CASE("irrotational sigma matches the closed form") {
  for (double s : {0.4, 0.8, 1.5}) {
    const auto st = solve_stream(VorticityModel::zero(), s);
    for (double tau : {0.0, 0.1, 0.7, 2.0, 6.0}) CHECK(sigma(st, tau) == doctest::Approx(sigma_zero(s, tau)).epsilon(1e-8));
  }
}

TEST_CASE("tau* against an independent bisection") {
  const double s = std::sqrt(2.0) - 1, d = 1 / s;
  double a = 1e-6, b = 50;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    (m / std::tanh(m * d) < 1 / (s * s) ? a : b) = m;
  }
  const auto ts = tau_star(solve_stream(VorticityModel::zero(), s));
  REQUIRE(ts.tau_star);
  CHECK(std::abs(*ts.tau_star - a) <= 1e-8);
  CHECK(*ts.Lambda0 == doctest::Approx(2 * M_PI / a).epsilon(1e-8));
}

TEST_CASE("sigma has a single increasing root on [0, 10 tau*]") {
  const auto st = solve_stream(VorticityModel::zero(), 0.6);
  const double ts = *tau_star(st).tau_star;
  std::vector<double> taus(10001);
  for (int i = 0; i <= 10000; ++i) taus[i] = 10 * ts * i / 10000;
  const auto sg = sigma_sweep(st, taus);
  int changes = 0;
  for (std::size_t i = 1; i < sg.size(); ++i) {
    CHECK(sg[i] > sg[i - 1]);
    if ((sg[i] < 0) != (sg[i - 1] < 0)) ++changes;
  }
  CHECK(changes == 1);
}

TEST_CASE("sign of sigma(0) follows F - 1 on random streams") {
  const std::vector<VorticityModel> models{VorticityModel({0.0}), VorticityModel({1.0, -2.0}),
                                           VorticityModel({0.0, 0.3}), VorticityModel({-0.5}),
                                           VorticityModel({0.4, 0.2, -0.3})};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int i = 0; i < 50; ++i) {
    const auto& m = models[rng() % models.size()];
    const auto c = bernoulli_curve(m);
    const double s = m.s0() + u(rng) * (c.s_c - m.s0());
    const auto st = solve_stream(m, s);
    const double s0 = sigma(st, 0.0);
    CHECK((s0 < 0) == (st.F() < 1));
    CHECK((st.F() < 1) == (s < c.s_c));
  }
}

TEST_CASE("sigma(0) identity report") {
  const auto st = solve_stream(VorticityModel::zero(), 0.5);
  const auto id = sigma_zero_identity(st);
  const double F2 = std::pow(0.5, 3);
  CHECK(id.direct == doctest::Approx((F2 - 1) / 0.5).epsilon(1e-9));
  CHECK(id.lhs == doctest::Approx(id.direct).epsilon(1e-9));
  CHECK(id.rhs == doctest::Approx(1.5 * id.direct).epsilon(1e-9));
}

TEST_CASE("supercritical streams have no tau*") {
  const auto ts = tau_star(solve_stream(VorticityModel::zero(), 2.0));
  CHECK_FALSE(ts.tau_star);
  CHECK(ts.sigma0 > 0);
}
