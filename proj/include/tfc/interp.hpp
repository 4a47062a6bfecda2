#pragma once

#include <vector>

namespace tfc {

// Monotone cubic Hermite interpolant (Fritsch-Carlson slopes).  Stays within
// the local data range, so nonnegative samples interpolate nonnegatively.
class Pchip {
public:
  Pchip(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;

  // Constant continuation on the left, zero on the right; used when a density
  // is evaluated outside the grid it was sampled on.
  double eval_clamped(double x) const;

private:
  std::vector<double> x_, y_, d_;
};

}  // namespace tfc
