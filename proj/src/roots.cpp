#include "wavebranch/roots.hpp"

#include <cmath>

namespace wavebranch::roots {

std::optional<Root> bracketed(const std::function<double(double)>& f, double a, double b,
                              Options opt) {
  return bracketed(f, a, f(a), b, f(b), opt);
}

std::optional<Root> bracketed(const std::function<double(double)>& f, double a, double fa,
                              double b, double fb, Options opt) {
  if (fa == 0.0) return Root{a, fa, 0};
  if (fb == 0.0) return Root{b, fb, 0};
  if (std::signbit(fa) == std::signbit(fb) || !std::isfinite(fa) || !std::isfinite(fb)) {
    return std::nullopt;
  }
  // Keep `lo` on the negative side.
  double lo = a, flo = fa, hi = b, fhi = fb;
  if (flo > 0) {
    std::swap(lo, hi);
    std::swap(flo, fhi);
  }
  double x = lo, fx = flo;
  bool last_was_secant = false;
  for (int it = 1; it <= opt.max_iter; ++it) {
    const double width = std::abs(hi - lo);
    double cand = lo - flo * (hi - lo) / (fhi - flo);
    const double left = std::min(lo, hi), right = std::max(lo, hi);
    // Fall back to bisection when the secant leaves the bracket or after two
    // secant steps in a row that did not halve the bracket.
    const bool inside = cand > left + 0.01 * width && cand < right - 0.01 * width;
    if (!inside || last_was_secant) {
      cand = 0.5 * (lo + hi);
      last_was_secant = false;
    } else {
      last_was_secant = true;
    }
    x = cand;
    fx = f(x);
    if (!std::isfinite(fx)) {
      x = 0.5 * (lo + hi);
      fx = f(x);
      last_was_secant = false;
    }
    if (fx < 0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (std::abs(fx) <= opt.f_tol ||
        std::abs(hi - lo) <= opt.x_tol * std::max(1.0, std::abs(x))) {
      return Root{x, fx, it};
    }
  }
  return Root{x, fx, opt.max_iter};
}

}  // namespace wavebranch::roots
