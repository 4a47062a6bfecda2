#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace tfc {

// Adaptive Gauss-Kronrod (G7, K15) on [a, b].  Handles integrable endpoint
// and interior log singularities by bisection; used for one-off kernel
// integrals and as an implementation-independent oracle in tests.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, double rel_tol = 1e-12,
                          int max_depth = 48);

}  // namespace tfc
