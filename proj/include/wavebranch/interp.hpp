#pragma once

#include <span>
#include <vector>

namespace wavebranch {

/// Piecewise cubic Hermite interpolant on strictly increasing abscissae.
/// Slopes may be supplied (exact derivatives); otherwise Fritsch-Carlson
/// slopes are used. By default the Fritsch-Carlson limiter is applied, so
/// monotone data give a monotone interpolant; pass `limit = false` to keep
/// exact slopes on data that is not monotone.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes,
                bool limit = true);

  double operator()(double t) const;
  double derivative(double t) const;

  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t segment(double t) const;
  void limit();

  std::vector<double> x_, y_, m_;
};

}  // namespace wavebranch
