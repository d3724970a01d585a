#pragma once

#include <functional>
#include <optional>

namespace wavebranch::roots {

struct Options {
  double f_tol = 1e-12;       // stop when |f| <= f_tol
  double x_tol = 1e-13;       // stop when bracket width <= x_tol * max(1, |x|)
  int max_iter = 400;
};

struct Root {
  double x;
  double fx;
  int iterations;
};

/// Bracketed bisection refined by secant steps. Requires f(a) and f(b) of
/// opposite sign (or one of them zero). Returns nullopt if not bracketed.
std::optional<Root> bracketed(const std::function<double(double)>& f, double a, double b,
                              Options opt = {});

/// Same, with f(a), f(b) already known.
std::optional<Root> bracketed(const std::function<double(double)>& f, double a, double fa,
                              double b, double fb, Options opt = {});

}  // namespace wavebranch::roots
