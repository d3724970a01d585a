#include "wavebranch/eigs.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "wavebranch/error.hpp"

namespace wavebranch::eigs {
namespace {

double norm_inf(const Eigen::SparseMatrix<double>& A) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(A.rows());
  for (int c = 0; c < A.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it)
      rows(it.row()) += std::abs(it.value());
  return rows.size() ? rows.maxCoeff() : 0.0;
}

}  // namespace

Pairs nearest(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& B, int k,
              double sigma, double tol) {
  const int n = static_cast<int>(A.rows());
  Eigen::SparseMatrix<double> S = A;
  for (int i = 0; i < n; ++i)
    if (B(i) != 0.0) S.coeffRef(i, i) -= sigma * B(i);
  S.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(S);
  if (lu.info() != Eigen::Success) {
    throw Error("spectra", ErrorKind::DiscretizationFailure, "shifted matrix is singular");
  }
  auto op = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return lu.solve(B.cwiseProduct(x));
  };
  const int finite = static_cast<int>((B.array() != 0.0).count());
  k = std::min(k, finite);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd v0(n);
  for (int i = 0; i < n; ++i) v0(i) = 1.0 + 0.5 * uni(rng);
  v0 = op(v0);
  v0.normalize();

  const double anorm = std::max(norm_inf(A), 1e-300);
  int m = std::min(finite, std::max(2 * k + 20, 40));
  Pairs out;
  for (;;) {
    Eigen::MatrixXd V(n, m + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    V.col(0) = v0;
    int built = m;
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd w = op(V.col(j));
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd c = V.leftCols(j + 1).transpose() * w;
        w.noalias() -= V.leftCols(j + 1) * c;
        H.col(j).head(j + 1) += c;
      }
      const double beta = w.norm();
      H(j + 1, j) = beta;
      if (beta < 1e-14 * H.col(j).head(j + 1).norm()) {
        built = j + 1;
        break;
      }
      V.col(j + 1) = w / beta;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(built, built));
    const auto theta = es.eigenvalues();
    const auto Y = es.eigenvectors();
    std::vector<int> order(built);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(theta(a)) > std::abs(theta(b)); });
    const double hnext = H(built, built - 1);
    bool ok = true;
    out = Pairs{};
    std::vector<std::pair<double, int>> picked;
    for (int r = 0, taken = 0; r < built && taken < k; ++r) {
      const int i = order[r];
      if (std::abs(theta(i)) < 1e-300) continue;
      const std::complex<double> mu = sigma + 1.0 / theta(i);
      // Skip the conjugate partner of an already taken pair.
      if (theta(i).imag() < 0.0 && taken > 0 &&
          std::abs(std::conj(theta(i)) - theta(order[r - 1])) < 1e-12 * std::abs(theta(i)))
        continue;
      const double est = std::abs(hnext * Y(built - 1, i)) / std::abs(theta(i));
      if (est > tol * std::max(1.0, std::abs(1.0 / theta(i)))) ok = false;
      out.max_imag = std::max(out.max_imag, std::abs(mu.imag()));
      picked.emplace_back(mu.real(), i);
      ++taken;
    }
    if (!ok && m < finite) {
      m = std::min(finite, 2 * m);
      continue;
    }
    out.converged = ok;
    std::sort(picked.begin(), picked.end());
    for (const auto& [mu, i] : picked) {
      Eigen::VectorXd x = V.leftCols(built) * Y.col(i).real();
      if (x.norm() < 1e-12) x = V.leftCols(built) * Y.col(i).imag();
      x.normalize();
      const double r = (A * x - mu * B.cwiseProduct(x)).norm() / anorm;
      out.values.push_back(mu);
      out.vectors.push_back(std::move(x));
      out.residuals.push_back(r);
    }
    return out;
  }
}

Pairs lowest(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& B, int k, double sigma0,
             double tol) {
  double sigma = sigma0;
  Pairs p;
  for (int round = 0; round < 8; ++round) {
    p = nearest(A, B, k + 2, sigma, tol);
    if (p.values.empty()) return p;
    const double lo = p.values.front();
    if (lo > sigma) break;
    sigma = lo - std::max(1.0, 0.1 * std::abs(lo));
  }
  if (static_cast<int>(p.values.size()) > k) {
    p.values.resize(k);
    p.vectors.resize(k);
    p.residuals.resize(k);
  }
  return p;
}

int negative_inertia(const Eigen::SparseMatrix<double>& A) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  ldlt.compute(A);
  if (ldlt.info() != Eigen::Success) {
    throw Error("spectra", ErrorKind::DiscretizationFailure, "LDL^T factorisation failed");
  }
  const Eigen::VectorXd D = ldlt.vectorD();
  int neg = 0;
  for (int i = 0; i < D.size(); ++i)
    if (D(i) < 0.0) ++neg;
  return neg;
}

}  // namespace wavebranch::eigs
