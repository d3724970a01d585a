#include <doctest.h>

#include <cmath>

#include "wavebranch/continuation.hpp"
#include "wavebranch/hodograph.hpp"

using namespace wavebranch;

namespace {

const BranchSetup& setup() {
  static const BranchSetup s = [] {
    const auto m = VorticityModel({1.0, -2.0});
    return make_branch_setup(m, bernoulli_curve(m).R_c + 0.02, 32, 32);
  }();
  return s;
}

// Uniform field plus a smooth even bump that vanishes at the bed.
Eigen::MatrixXd bumped(const BranchSetup& s, double eps) {
  const auto& g = s.grid;
  Eigen::MatrixXd h = uniform_field(s).h;
  for (int i = 0; i <= g.M; ++i)
    for (int j = 0; j <= g.N; ++j)
      h(i, j) += eps * g.p[j] * g.p[j] *
                 (std::cos(2 * M_PI * g.q[i] / g.Lambda0) + 0.3 * std::cos(4 * M_PI * g.q[i] / g.Lambda0));
  return h;
}

}  // namespace

TEST_CASE("grid is odd with M = (n_q - 1) / 2") {
  const auto& g = setup().grid;
  CHECK(g.n_q % 2 == 1);
  CHECK(g.M == (g.n_q - 1) / 2);
  CHECK(g.q.size() == static_cast<std::size_t>(g.M + 1));
  CHECK(g.p.size() == static_cast<std::size_t>(g.N + 1));
  CHECK(g.unknowns() == (g.M + 1) * g.N);
}

TEST_CASE("collocation derivative is exact for resolved cosines") {
  const auto& g = setup().grid;
  const double k = 2 * M_PI / g.Lambda0;
  for (int mode : {1, 3, 7}) {
    Eigen::VectorXd f(g.M + 1);
    for (int i = 0; i <= g.M; ++i) f(i) = std::cos(mode * k * g.q[i]);
    const Eigen::VectorXd df = g.D_even * f;
    for (int i = 0; i <= g.M; ++i) CHECK(df(i) == doctest::Approx(-mode * k * std::sin(mode * k * g.q[i])).epsilon(1e-9).scale(1));
  }
}

TEST_CASE("cosine interpolant reproduces cosines between nodes") {
  const auto& g = setup().grid;
  const double k = 2 * M_PI / g.Lambda0;
  Eigen::VectorXd f(g.M + 1);
  for (int i = 0; i <= g.M; ++i) f(i) = 1 + std::cos(2 * k * g.q[i]);
  const CosineInterpolant c(g, f);
  for (double q : {0.1, 0.37 * g.Lambda0, 0.5 * g.Lambda0}) {
    CHECK(c(q) == doctest::Approx(1 + std::cos(2 * k * q)).epsilon(1e-11));
    CHECK(c.derivative(q) == doctest::Approx(-2 * k * std::sin(2 * k * q)).epsilon(1e-9).scale(1));
  }
  // Trough weights are the interpolant at Lambda0 / 2.
  CHECK(g.trough_weights.dot(f) == doctest::Approx(c(0.5 * g.Lambda0)).epsilon(1e-12));
}

TEST_CASE("uniform field solves the equations") {
  const auto& s = setup();
  const auto E = hodograph_equations(s.grid, uniform_field(s).h, 1.0, s.R);
  CHECK(E.lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("serial and parallel equations agree exactly") {
  const auto& s = setup();
  const auto h = bumped(s, 1e-2);
  const auto a = hodograph_equations(s.grid, h, 1.01, s.R, Exec::Serial);
  const auto b = hodograph_equations(s.grid, h, 1.01, s.R, Exec::Parallel);
  CHECK((a - b).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("Jacobian matches central differences") {
  const auto& s = setup();
  const auto& g = s.grid;
  const auto h = bumped(s, 2e-2);
  const double lambda = 0.99;
  Eigen::VectorXd dl;
  const Eigen::MatrixXd J = hodograph_jacobian(g, h, lambda, &dl);
  const double e = 1e-6;
  for (auto [i, j] : {std::pair{0, 1}, {3, 10}, {g.M, g.N}, {7, g.N}, {g.M / 2, g.N / 2}}) {
    Eigen::MatrixXd hp = h, hm = h;
    hp(i, j) += e;
    hm(i, j) -= e;
    const Eigen::VectorXd col =
        (hodograph_equations(g, hp, lambda, s.R) - hodograph_equations(g, hm, lambda, s.R)) / (2 * e);
    CHECK((col - J.col(g.index(i, j))).lpNorm<Eigen::Infinity>() <= 1e-5 * std::max(1.0, col.lpNorm<Eigen::Infinity>()));
  }
  const Eigen::VectorXd cl = (hodograph_equations(g, h, lambda + e, s.R) -
                              hodograph_equations(g, h, lambda - e, s.R)) / (2 * e);
  CHECK((cl - dl).lpNorm<Eigen::Infinity>() <= 1e-5 * std::max(1.0, cl.lpNorm<Eigen::Infinity>()));
}

TEST_CASE("discrete dispersion root gives the grid period") {
  const auto& s = setup();
  CHECK(std::abs(discrete_dispersion(s.base.h, s.tau_star_h)) <= 1e-9);
  CHECK(s.grid.Lambda0 == doctest::Approx(2 * M_PI / s.tau_star_h).epsilon(1e-12));
  CHECK(std::abs(s.tau_star_h - s.tau_star) <= 1e-2 * s.tau_star);
}
