#pragma once

#include <vector>

namespace wavebranch::tridiag {

/// Symmetric tridiagonal matrix: diag (n), off (n - 1).
struct Symmetric {
  std::vector<double> diag, off;
  int size() const { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues strictly below x (Sturm sequence).
int count_below(const Symmetric& t, double x);

/// Gershgorin interval containing the spectrum.
void gershgorin(const Symmetric& t, double& lo, double& hi);

/// The eigenvalue with index `i` (ascending, 0-based) by bisection.
double eigenvalue(const Symmetric& t, int i);

/// Lowest k eigenvalues, ascending.
std::vector<double> lowest(const Symmetric& t, int k);

/// Unit eigenvector for a computed eigenvalue, by inverse iteration.
std::vector<double> eigenvector(const Symmetric& t, double lambda);

/// y = T x.
std::vector<double> apply(const Symmetric& t, const std::vector<double>& x);

/// Solves (T - shift I) x = b with partial pivoting.
std::vector<double> solve(const Symmetric& t, const std::vector<double>& b, double shift = 0.0);

}  // namespace wavebranch::tridiag
