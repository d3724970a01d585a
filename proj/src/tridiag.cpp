#include "wavebranch/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavebranch::tridiag {

int count_below(const Symmetric& t, double x) {
  const int n = t.size();
  int count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  for (int i = 0; i < n; ++i) {
    const double b2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
    q = (t.diag[i] - x) - (i > 0 ? b2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

void gershgorin(const Symmetric& t, double& lo, double& hi) {
  const int n = t.size();
  lo = INFINITY;
  hi = -INFINITY;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
}

double eigenvalue(const Symmetric& t, int i) {
  double lo, hi;
  gershgorin(t, lo, hi);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  lo -= 1e-12 * scale + 1e-300;
  hi += 1e-12 * scale + 1e-300;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (count_below(t, mid) > i) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)))
      break;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> lowest(const Symmetric& t, int k) {
  k = std::min(k, t.size());
  std::vector<double> out(k);
  for (int i = 0; i < k; ++i) out[i] = eigenvalue(t, i);
  return out;
}

std::vector<double> apply(const Symmetric& t, const std::vector<double>& x) {
  const int n = t.size();
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    double v = t.diag[i] * x[i];
    if (i > 0) v += t.off[i - 1] * x[i - 1];
    if (i + 1 < n) v += t.off[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

std::vector<double> solve(const Symmetric& t, const std::vector<double>& b, double shift) {
  // Gaussian elimination with partial pivoting on a tridiagonal matrix
  // (the pivoted factor gains one extra superdiagonal).
  const int n = t.size();
  std::vector<double> dl(n, 0.0), d(n), du(n, 0.0), du2(n, 0.0), x(b);
  for (int i = 0; i < n; ++i) {
    d[i] = t.diag[i] - shift;
    if (i + 1 < n) {
      du[i] = t.off[i];
      dl[i] = t.off[i];
    }
  }
  const double tiny = 1e-300;
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double m = dl[i] / d[i];
      d[i + 1] -= m * du[i];
      x[i + 1] -= m * x[i];
      if (i + 2 < n) du2[i] = 0.0;
      dl[i] = 0.0;
    } else {
      const double m = d[i] / dl[i];
      d[i] = dl[i];
      std::swap(x[i], x[i + 1]);
      x[i + 1] -= m * x[i];
      const double tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - m * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -m * du[i + 1];
      }
      dl[i] = 0.0;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;
  x[n - 1] /= d[n - 1];
  if (n > 1) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  for (int i = n - 3; i >= 0; --i) {
    x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
  }
  return x;
}

std::vector<double> eigenvector(const Symmetric& t, double lambda) {
  const int n = t.size();
  double lo, hi;
  gershgorin(t, lo, hi);
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  const double shift = lambda + 1e-13 * scale;
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = 1.0 + 0.01 * std::sin(0.7 * i + 0.3);
  for (int it = 0; it < 4; ++it) {
    x = solve(t, x, shift);
    double nrm = 0.0;
    for (double v : x) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (double& v : x) v /= nrm;
  }
  return x;
}

}  // namespace wavebranch::tridiag
