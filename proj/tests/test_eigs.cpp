#include <doctest.h>

#include <cmath>

#include "wavebranch/eigs.hpp"

using namespace wavebranch;

namespace {

// Dirichlet Laplacian on n interior points of (0, 1), shifted by c.
Eigen::SparseMatrix<double> laplacian(int n, double c) {
  const double h = 1.0 / (n + 1);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 2 / (h * h) + c);
    if (i > 0) t.emplace_back(i, i - 1, -1 / (h * h));
    if (i + 1 < n) t.emplace_back(i, i + 1, -1 / (h * h));
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

double exact(int n, int k, double c) {
  const double h = 1.0 / (n + 1);
  return 4 / (h * h) * std::pow(std::sin(k * M_PI * h / 2), 2) + c;
}

}  // namespace

TEST_CASE("lowest eigenvalues of a shifted Laplacian") {
  const int n = 400;
  const auto A = laplacian(n, -30.0);
  const auto p = eigs::lowest(A, Eigen::VectorXd::Ones(n), 4);
  REQUIRE(p.values.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(p.values[k] == doctest::Approx(exact(n, k + 1, -30.0)).epsilon(1e-9));
  CHECK(p.max_imag <= 1e-8);
  for (double r : p.residuals) CHECK(r <= 1e-8);
}

TEST_CASE("zero mass rows are discarded") {
  const int n = 50;
  const auto A = laplacian(n, 0.0);
  Eigen::VectorXd B = Eigen::VectorXd::Ones(n);
  B(n - 1) = 0;
  const auto p = eigs::nearest(A, B, 3, 0.0);
  for (double v : p.values) CHECK(std::isfinite(v));
  CHECK(p.values.size() == 3);
}

TEST_CASE("negative inertia counts eigenvalues below zero") {
  const int n = 200;
  const double c = -exact(n, 3, 0.0) - 1.0;  // first three eigenvalues negative
  CHECK(eigs::negative_inertia(laplacian(n, c)) == 3);
  CHECK(eigs::negative_inertia(laplacian(n, 0.0)) == 0);
}
