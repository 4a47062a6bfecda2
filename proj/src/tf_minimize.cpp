#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tfc/errors.hpp"
#include "tfc/thomas_fermi.hpp"

namespace tfc {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Discretized functional and gradient in one pass.  The Coulomb part is the
// grid's Gram form D = sum_k c_k Q_k^2 + Q_N^2/(2 r_max); its gradient needs
// one forward (prefix) and one backward (suffix) sweep over cells.
struct Objective {
  const RadialGrid& g;
  double Z;
  double gamma_tf;
  std::vector<double> a;   // node measure 4 pi r^2 w_cell
  std::vector<double> r3;  // 4 pi r^3 (u-space charge integrand factor)

  Objective(const RadialGrid& grid, double Z_, int q) : g(grid), Z(Z_) {
    gamma_tf = std::pow(6.0 * std::numbers::pi * std::numbers::pi / double(q), 2.0 / 3.0);
    const auto& r = g.nodes();
    a.resize(g.size());
    r3.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      a[i] = g.cell_weights()[i] * kFourPi * r[i] * r[i];
      r3[i] = kFourPi * r[i] * r[i] * r[i];
    }
  }

  double charge(const std::vector<double>& rho) const {
    double q = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) q += a[i] * rho[i];
    return q;
  }

  double value(const std::vector<double>& rho) const {
    const auto& r = g.nodes();
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i)
      acc += a[i] * (0.3 * gamma_tf * std::pow(rho[i], 5.0 / 3.0) - Z * rho[i] / r[i]);
    return acc + coulomb_bilinear(g, rho, rho);
  }

  // grad F and F together
  double value_grad(const std::vector<double>& rho, std::vector<double>& grad) const {
    const auto& r = g.nodes();
    const std::size_t n = g.size();
    grad.assign(n, 0.0);

    double local = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      local += a[i] * (0.3 * gamma_tf * std::pow(rho[i], 5.0 / 3.0) - Z * rho[i] / r[i]);
      grad[i] = a[i] * (0.5 * gamma_tf * std::cbrt(rho[i] * rho[i]) - Z / r[i]);
    }

    // Q_k at nodes from the per-cell rule
    std::vector<double> au(n);
    for (std::size_t i = 0; i < n; ++i) au[i] = r3[i] * rho[i];
    std::vector<double> qk(n, 0.0);
    double acc = 0.0;
    for (std::size_t c = 0; c + 1 < n; ++c) {
      const int s = g.cell_stencil_start(c);
      const auto& cw = g.cell_stencil_weights(c);
      double ci = 0.0;
      for (int m = 0; m < 4; ++m) ci += cw[m] * au[s + m];
      acc += ci;
      qk[c + 1] = acc;
    }

    double dval = 0.0;
    std::vector<double> suffix(n - 1, 0.0);  // S_c = sum_{k>c} c_k Q_k + Q_N/(2 r_max)
    {
      double sfx = 0.5 * qk[n - 1] / g.r_max();
      dval += 0.5 * qk[n - 1] * qk[n - 1] / g.r_max();
      for (std::size_t c = n - 1; c-- > 0;) {
        const std::size_t k = c + 1;
        const double ck = 0.5 * g.cell_weights()[k] / (g.nodes()[k] * g.nodes()[k]);
        dval += ck * qk[k] * qk[k];
        sfx += ck * qk[k];
        suffix[c] = sfx;
      }
      const double c0 = 0.5 * g.cell_weights()[0] / (g.nodes()[0] * g.nodes()[0]);
      dval += c0 * qk[0] * qk[0];  // Q_0 = 0; kept for symmetry with the D form
    }
    for (std::size_t c = 0; c + 1 < n; ++c) {
      const int s = g.cell_stencil_start(c);
      const auto& cw = g.cell_stencil_weights(c);
      for (int m = 0; m < 4; ++m) grad[s + m] += 2.0 * r3[s + m] * cw[m] * suffix[c];
    }
    return local + dval;
  }

  // clamp at zero, then rescale uniformly if the charge exceeds Z
  void project(std::vector<double>& rho) const {
    for (double& v : rho)
      if (!(v > 0.0)) v = 0.0;
    const double q = charge(rho);
    if (q > Z) {
      const double s = Z / q;
      for (double& v : rho) v *= s;
    }
  }
};

}  // namespace

DirectMinimizeResult tf_minimize_direct(double Z, const RadialGrid& grid,
                                        std::size_t max_iter, int q) {
  if (!(Z > 0.0)) throw std::invalid_argument("tf_minimize_direct: Z must be positive");
  const Objective obj(grid, Z, q);
  const std::size_t n = grid.size();

  // exponential start with charge Z on the Thomas-Fermi length scale
  std::vector<double> rho(n);
  const double lam = 1.8 * std::cbrt(Z);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.nodes()[i];
    rho[i] = Z * lam * lam * lam * std::exp(-lam * r) / (8.0 * std::numbers::pi);
  }
  obj.project(rho);

  std::vector<double> grad(n), dir(n), rho_new(n), grad_new(n);
  double f = obj.value_grad(rho, grad);

  // descent in the quadrature metric: d_i = grad_i / a_i is the discrete
  // Euler-Lagrange expression, scale-free across nodes
  auto precondition = [&](const std::vector<double>& gr, std::vector<double>& d) {
    for (std::size_t i = 0; i < n; ++i) d[i] = gr[i] / obj.a[i];
  };
  precondition(grad, dir);

  double alpha = 1e-3;
  double prev_f = f;
  std::vector<double> rho_prev, dir_prev;
  std::size_t it = 0;
  int stall = 0;
  for (; it < max_iter; ++it) {
    // Barzilai-Borwein step in the metric, safeguarded by Armijo backtracking
    if (!rho_prev.empty()) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double s = rho[i] - rho_prev[i];
        const double y = dir[i] - dir_prev[i];
        num += obj.a[i] * s * s;
        den += obj.a[i] * s * y;
      }
      if (den > 0.0 && num > 0.0) alpha = std::clamp(num / den, 1e-8, 1e4);
    }

    double step = alpha;
    bool accepted = false;
    bool converged = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < n; ++i) rho_new[i] = rho[i] - step * dir[i];
      obj.project(rho_new);
      double dist2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = rho_new[i] - rho[i];
        dist2 += obj.a[i] * d * d;
      }
      if (bt == 0 && dist2 <= 1e-28 * std::max(1.0, f * f)) {
        converged = true;  // projected step no longer moves the iterate
        break;
      }
      const double fn = obj.value(rho_new);
      // sufficient decrease with an allowance for rounding at convergence
      if (fn <= f - 1e-4 * dist2 / std::max(step, 1e-300) + 1e-15 * std::abs(f)) {
        rho_prev = rho;
        dir_prev = dir;
        rho = rho_new;
        f = obj.value_grad(rho, grad);
        precondition(grad, dir);
        accepted = true;
        break;
      }
      step *= 0.5;
      if (step < 1e-18) break;
    }
    if (converged) break;
    if (!accepted)
      throw SolverError("tf_minimize_direct: step-size failure, objective not decreasing");

    if (std::abs(prev_f - f) <= 1e-14 * std::abs(f)) {
      if (++stall > 40) break;
    } else {
      stall = 0;
    }
    prev_f = f;
  }

  DirectMinimizeResult out{RadialDensity(grid, rho), f, it, alpha};
  return out;
}

}  // namespace tfc
