#include <doctest.h>

#include <cmath>

#include "wavebranch/dispersion.hpp"
#include "wavebranch/expansion.hpp"

using namespace wavebranch;

namespace {

StreamSolution near_critical(const VorticityModel& m, double dR) {
  const auto c = bernoulli_curve(m);
  return solve_stream(m, *invert_bernoulli(m, c, c.R_c + dR).s_plus);
}

}  // namespace

TEST_CASE("irrotational kernel mode is sinh(tau* d p)") {
  const auto st = near_critical(VorticityModel::zero(), 0.01);
  const auto km = kernel_mode(st);
  const double d = st.d(), ts = km.tau_star;
  // Normalise both at p = 1.
  const double a1 = km.alpha0.back(), o1 = std::sinh(ts * d);
  for (std::size_t i = 0; i < km.p.size(); i += 64)
    CHECK(km.alpha0[i] / a1 == doctest::Approx(std::sinh(ts * d * km.p[i]) / o1).epsilon(1e-6).scale(1));
  CHECK(km.operator_residual <= 1e-6);
}

TEST_CASE("c1 is negative for subcritical streams") {
  for (const auto& m : {VorticityModel({0.0}), VorticityModel({1.0, -2.0}),
                        VorticityModel({0.0, 0.3}), VorticityModel({-0.5})}) {
    const auto c = bernoulli_curve(m);
    for (double f : {0.5, 0.8, 0.95}) {
      const auto st = solve_stream(m, m.s0() + f * (c.s_c - m.s0()));
      REQUIRE(st.F() < 1);
      CHECK(c1_coefficient(st) < 0);
    }
  }
}

TEST_CASE("corrector mean part matches its closed form") {
  const auto st = near_critical(VorticityModel({1.0, -2.0}), 0.01);
  const auto cr = corrector_v1(st);
  CHECK(cr.closed_form_defect <= 1e-8);
  CHECK(cr.solve_residual <= 1e-8);
}

TEST_CASE("plug-back residual is third order") {
  for (const auto& m : {VorticityModel({0.0}), VorticityModel({0.0, 0.3})}) {
    const auto st = near_critical(m, 0.01);
    const auto ex = expand(st);
    const auto pb = plug_back(st, ex, {1e-2, 5e-3, 2.5e-3});
    CHECK(pb.exponent >= 2.7);
  }
}

TEST_CASE("leading-order lambda2 near tau* = 0") {
  const auto st = solve_stream(VorticityModel::zero(), 0.9993);
  const auto ts = *tau_star(st).tau_star;
  REQUIRE(ts <= 0.1);
  const auto r = lambda2_mu2(st);
  CHECK(std::abs(r.lambda2_corrected - r.lambda2) <= 0.2 * std::abs(r.lambda2));
  CHECK(r.lambda2_leading < 0);
  CHECK(r.lambda2 < 0);
}

TEST_CASE("sign ledger near criticality") {
  for (const auto& m : {VorticityModel({0.0}), VorticityModel({1.0, -2.0}),
                        VorticityModel({0.0, 0.3}), VorticityModel({-0.5})}) {
    const auto r = lambda2_mu2(near_critical(m, 0.02), 1024);
    CHECK(r.c1 < 0);
    CHECK(r.lambda2 < 0);
    CHECK(r.mu2 > 0);
  }
}

TEST_CASE("far from criticality lambda2 changes sign") {
  const auto st = near_critical(VorticityModel::zero(), 1.0);
  const auto r = lambda2_mu2(st);
  CHECK(r.lambda2 > 0);
  CHECK(r.mu2 < 0);
}
