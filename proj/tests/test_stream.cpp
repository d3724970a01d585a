#include <doctest.h>

#include <cmath>

#include "wavebranch/error.hpp"
#include "wavebranch/stream.hpp"

using namespace wavebranch;

TEST_CASE("irrotational stream matches the linear profile") {
  for (double s : {0.3, 1.0, 2.0, 5.0}) {
    const auto st = solve_stream(VorticityModel::zero(), s);
    CHECK(st.d() == doctest::Approx(1 / s).epsilon(1e-12));
    CHECK(st.R() == doctest::Approx(s * s / 2 + 1 / s).epsilon(1e-12));
    CHECK(st.F() == doctest::Approx(std::pow(s, 1.5)).epsilon(1e-10));
    CHECK(st.kappa() == doctest::Approx(s).epsilon(1e-12));
    CHECK(st.rho0() == doctest::Approx(1 / (s * s)).epsilon(1e-10));
    for (int i = 0; i <= 10; ++i) {
      const double Y = st.d() * i / 10;
      CHECK(st.U(Y) == doctest::Approx(s * Y).epsilon(1e-9));
    }
  }
}

TEST_CASE("constant vorticity closed forms") {
  // omega = -1/2: U_Y^2 = s^2 + U.
  const VorticityModel m({-0.5});
  for (double s : {0.2, 0.8, 1.7}) {
    const auto st = solve_stream(m, s);
    const double r = std::sqrt(s * s + 1);
    CHECK(st.d() == doctest::Approx(2 * (r - s)).epsilon(1e-10));
    const double inv_f2 = 2 * (1 / s - 1 / r);
    CHECK(st.F() == doctest::Approx(1 / std::sqrt(inv_f2)).epsilon(1e-9));
    CHECK(st.R() == doctest::Approx(s * s / 2 + 2 * (r - s) + 0.5).epsilon(1e-10));
  }
}

TEST_CASE("depth decreases and R, F increase past criticality") {
  for (const auto& m : {VorticityModel({0.0}), VorticityModel({1.0, -2.0}),
                        VorticityModel({0.0, 0.3}), VorticityModel({-0.5})}) {
    double prev = INFINITY;
    for (int i = 0; i < 30; ++i) {
      const double d = depth(m, m.s0() + 0.01 + i * 0.33).value;
      CHECK(d < prev);
      prev = d;
    }
    const auto c = bernoulli_curve(m);
    double pr = -INFINITY, pf = -INFINITY;
    for (int i = 1; i <= 15; ++i) {
      const auto st = solve_stream(m, c.s_c + 0.5 * i);
      CHECK(st.R() > pr);
      CHECK(st.F() > pf);
      pr = st.R();
      pf = st.F();
    }
  }
}

TEST_CASE("three Froude formulas agree") {
  for (const auto& m : {VorticityModel({1.0, -2.0}), VorticityModel({0.0, 0.3})}) {
    const auto c = bernoulli_curve(m);
    for (double f : {0.5, 0.9, 1.5, 3.0}) {
      const auto rep = froude(solve_stream(m, m.s0() + f * (c.s_c - m.s0())));
      CHECK(std::abs(rep.F - rep.F_depth_slope) <= 1e-5);
      CHECK(std::abs(rep.F - rep.F_hodograph) <= 1e-5);
    }
  }
}

TEST_CASE("criticality and inversion for the irrotational stream") {
  const auto m = VorticityModel::zero();
  const auto c = bernoulli_curve(m);
  CHECK(c.s_c == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c.R_c == doctest::Approx(1.5).epsilon(1e-10));
  CHECK_FALSE(c.R_0_finite);
  // s^3 - 5 s + 2 = (s - 2)(s^2 + 2 s - 1).
  const auto r = invert_bernoulli(m, 2.5);
  CHECK(std::abs(*r.s_minus - 2.0) <= 1e-8);
  CHECK(std::abs(*r.s_plus - (std::sqrt(2.0) - 1)) <= 1e-8);
}

TEST_CASE("height function satisfies its ODE and surface condition") {
  const auto m = VorticityModel({1.0, -2.0});
  const auto st = solve_stream(m, 1.1);
  for (int i = 1; i < 50; ++i) {
    const double p = i / 50.0, h = 1e-5;
    const double hpp = (st.H_p(p + h) - st.H_p(p - h)) / (2 * h);
    CHECK(std::abs(hpp - std::pow(st.H_p(p), 3) * m.omega(p)) <= 1e-7);
  }
  CHECK(std::abs(0.5 / std::pow(st.H_p(1.0), 2) + st.H(1.0) - st.R()) <= 1e-9);
  // H inverts U.
  for (int i = 1; i < 10; ++i) {
    const double Y = st.d() * i / 10;
    CHECK(st.H(st.U(Y)) == doctest::Approx(Y).epsilon(1e-8));
  }
}

TEST_CASE("asymptotic R(F) for the irrotational stream") {
  for (const auto& row : r_asymptotic_check(VorticityModel::zero(), {8, 64, 512}))
    CHECK(std::abs(row.defect - std::pow(row.F, -2.0 / 3.0)) <= 1e-6);
}

TEST_CASE("R below R_c is a no-solution error") {
  try {
    invert_bernoulli(VorticityModel::zero(), 1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.name() == "stream.no_solution");
  }
}
