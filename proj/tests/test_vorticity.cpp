#include <doctest.h>

#include <cmath>

#include "wavebranch/error.hpp"
#include "wavebranch/vorticity.hpp"

using namespace wavebranch;

namespace {

// Composite Simpson, 2000 panels; exact for cubics, ample for degree <= 8 here.
double simpson(const VorticityModel& m, double t) {
  const int n = 2000;
  const double h = t / n;
  double s = m.omega(0) + m.omega(t);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * m.omega(i * h);
  return s * h / 3;
}

}  // namespace

TEST_CASE("closed-form Omega matches quadrature of omega") {
  const VorticityModel m({0.3, -1.2, 0.7, 0.0, 0.25, -0.1, 0.05, 0.02, -0.01});
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    CHECK(m.capital_omega(t) == doctest::Approx(simpson(m, t)).epsilon(1e-10));
  }
}

TEST_CASE("s0 and case tags of the built-in vorticities") {
  const VorticityModel zero({0.0}), lin({1.0, -2.0}), up({0.0, 0.3}), neg({-0.5});
  CHECK(zero.s0() == 0.0);
  CHECK(zero.case_tag() == VorticityCase::CaseI);
  // Omega = p - p^2 peaks at 1/4 inside (0, 1).
  CHECK(lin.s0() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(lin.case_tag() == VorticityCase::CaseI);
  // Omega = 0.15 p^2 peaks at the surface where omega(1) > 0.
  CHECK(up.s0() == doctest::Approx(std::sqrt(0.3)).epsilon(1e-12));
  CHECK(up.case_tag() == VorticityCase::CaseIII);
  // Omega = -p / 2 peaks at the bed where omega(0) < 0.
  CHECK(neg.s0() == 0.0);
  CHECK(neg.case_tag() == VorticityCase::CaseII);
}

TEST_CASE("s0^2 - 2 Omega stays non-negative") {
  for (const auto& m : {VorticityModel({1.0, -2.0}), VorticityModel({0.0, 0.3}),
                        VorticityModel({-0.5}), VorticityModel({2.0, -9.0, 8.0})}) {
    for (int i = 0; i <= 2000; ++i) {
      const double t = i / 2000.0;
      CHECK(m.s0() * m.s0() - 2 * m.capital_omega(t) >= -1e-12);
    }
  }
}

TEST_CASE("classification is stable under tiny coefficient perturbations") {
  const VorticityModel a({1.0, -2.0}), b({1.0 + 1e-14, -2.0 - 1e-14});
  CHECK(a.case_tag() == b.case_tag());
  CHECK(a.s0() == doctest::Approx(b.s0()).epsilon(1e-10));
  const VorticityModel c({0.0, 0.3}), d({1e-14, 0.3});
  CHECK(c.case_tag() == d.case_tag());
}

TEST_CASE("degree above eight is rejected") {
  try {
    VorticityModel m(std::vector<double>(10, 1.0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
  }
}
