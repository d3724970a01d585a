#include <doctest.h>

#include <cmath>
#include <random>

#include "wavebranch/continuation.hpp"
#include "wavebranch/expansion.hpp"

using namespace wavebranch;

namespace {

const BranchSetup& setup() {
  static const BranchSetup s = [] {
    const auto m = VorticityModel::zero();
    return make_branch_setup(m, bernoulli_curve(m).R_c + 0.01);
  }();
  return s;
}

double norm(const HodographResidual& r) {
  return std::max(r.interior.lpNorm<Eigen::Infinity>(), r.boundary.lpNorm<Eigen::Infinity>());
}

}  // namespace

TEST_CASE("Frechet derivative has a quadratic remainder") {
  const auto& s = setup();
  const auto& g = s.grid;
  auto state = branch_extend(s, branch_start(s), 2e-3, 1, {}, false);
  const auto& field = state.points.back().field;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  // Smooth random w: a few random cosine modes times p-polynomials, zero at the bed.
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(g.M + 1, g.N + 1);
  for (int m = 0; m < 4; ++m) {
    const double a = u(rng), b = u(rng);
    for (int i = 0; i <= g.M; ++i)
      for (int j = 0; j <= g.N; ++j)
        w(i, j) += (a * g.p[j] + b * g.p[j] * g.p[j]) * std::cos(2 * M_PI * m * g.q[i] / g.Lambda0);
  }
  std::vector<double> ratio;
  for (double eps : {1e-4, 1e-5, 1e-6}) {
    const auto r = residual(s, field, eps * w);
    auto lin = frechet_apply(s, field, w);
    lin.boundary = -lin.boundary;  // frechet_apply reports boundary rows with the operator sign
    HodographResidual d{r.interior - eps * lin.interior, r.boundary - eps * lin.boundary};
    ratio.push_back(norm(d) / (eps * eps));
  }
  for (double q : ratio) CHECK(q < 10 * ratio[0] + 1.0);
}

TEST_CASE("Newton converges along the first steps") {
  const auto& s = setup();
  const auto state = branch_extend(s, branch_start(s), 1e-3, 3);
  CHECK_FALSE(state.stopped);
  REQUIRE(state.points.size() == 4);
  for (std::size_t i = 1; i < state.points.size(); ++i) {
    const auto& p = state.points[i];
    CHECK(p.status == "converged");
    CHECK(p.field.final_residual <= 1e-10);
    CHECK(p.amplitude == doctest::Approx(1e-3 * i).epsilon(1e-9));
    CHECK(amplitude_of(s.grid, p.field.h) == doctest::Approx(p.amplitude).epsilon(1e-9));
    CHECK(p.mu0 < 0);
    CHECK(p.mu1 > 0);
  }
}

TEST_CASE("lambda fit is stable under halving the amplitude step") {
  const auto& s = setup();
  const auto a = fit_lambda2(s, branch_extend(s, branch_start(s), 1e-3, 3, {}, false));
  const auto b = fit_lambda2(s, branch_extend(s, branch_start(s), 5e-4, 3, {}, false));
  CHECK(a.lambda2 < 0);
  CHECK(std::abs(a.c2 - b.c2) <= 0.05 * std::abs(b.c2));
}

TEST_CASE("non-positive steps are rejected") {
  const auto& s = setup();
  const auto state = branch_extend(s, branch_start(s), 0.0, 3);
  CHECK(state.points.size() == 1);
  CHECK(state.stop_reason == "duplicate point rejected");
}

TEST_CASE("amplitude zero has a simple kernel and one negative eigenvalue") {
  const auto& s = setup();
  const auto sp = hodograph_spectrum(s, uniform_field(s), 4);
  REQUIRE(sp.eigenvalues.size() == 4);
  CHECK(sp.eigenvalues[0] < 0);
  CHECK(std::abs(sp.eigenvalues[1]) <= 1e-8);
  CHECK(sp.eigenvalues[2] > 1e-2);
  CHECK(sp.problem_tag == ProblemTag::Hodograph2D);
}

TEST_CASE("supercritical R without a subcritical stream is an error") {
  const auto m = VorticityModel({-0.5});
  const auto c = bernoulli_curve(m);
  REQUIRE(c.R_0_finite);
  CHECK_THROWS(make_branch_setup(m, c.R_0 + 1.0));
}
