#include "tfc/thomas_fermi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tfc/errors.hpp"
#include "tfc/interp.hpp"

namespace tfc {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
// exponent of the decaying correction around the 144/x^3 tail
const double kLambda = (std::sqrt(73.0) - 7.0) / 2.0;

struct State {
  double phi;
  double dphi;
};

State tf_rhs(double x, const State& s) {
  const double p = s.phi > 0.0 ? s.phi : 0.0;
  return {s.dphi, p * std::sqrt(p) / std::sqrt(x)};
}

// Baker series around x = 0 with slope b:
// phi = 1 + b x + (4/3)x^{3/2} + (2b/5)x^{5/2} + (1/3)x^3 + (3b^2/70)x^{7/2}
//       + (2b/15)x^4 + (2/27 - b^3/252)x^{9/2} + ...
State series_start(double x, double b) {
  const double s = std::sqrt(x);
  const double a3 = 4.0 / 3.0, a5 = 0.4 * b, a6 = 1.0 / 3.0;
  const double a7 = 3.0 * b * b / 70.0, a8 = 2.0 * b / 15.0;
  const double a9 = 2.0 / 27.0 - b * b * b / 252.0;
  double phi = 1.0 + b * x + a3 * x * s + a5 * x * x * s + a6 * x * x * x +
               a7 * x * x * x * s + a8 * x * x * x * x + a9 * x * x * x * x * s;
  double dphi = b + 1.5 * a3 * s + 2.5 * a5 * x * s + 3.0 * a6 * x * x +
                3.5 * a7 * x * x * s + 4.0 * a8 * x * x * x + 4.5 * a9 * x * x * x * s;
  return {phi, dphi};
}

// Dormand-Prince 5(4) embedded step; returns error estimate.
State dp45_step(double x, const State& y, double h, double& err) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  auto axpy = [](const State& y0, double h1, std::initializer_list<std::pair<double, State>> ks) {
    State out = y0;
    for (const auto& [c, k] : ks) {
      out.phi += h1 * c * k.phi;
      out.dphi += h1 * c * k.dphi;
    }
    return out;
  };

  const State k1 = tf_rhs(x, y);
  const State k2 = tf_rhs(x + c2 * h, axpy(y, h, {{a21, k1}}));
  const State k3 = tf_rhs(x + c3 * h, axpy(y, h, {{a31, k1}, {a32, k2}}));
  const State k4 = tf_rhs(x + c4 * h, axpy(y, h, {{a41, k1}, {a42, k2}, {a43, k3}}));
  const State k5 = tf_rhs(x + c5 * h, axpy(y, h, {{a51, k1}, {a52, k2}, {a53, k3}, {a54, k4}}));
  const State k6 =
      tf_rhs(x + h, axpy(y, h, {{a61, k1}, {a62, k2}, {a63, k3}, {a64, k4}, {a65, k5}}));
  const State y5 = axpy(y, h, {{b1, k1}, {b3, k3}, {b4, k4}, {b5, k5}, {b6, k6}});
  const State k7 = tf_rhs(x + h, y5);

  const double ephi = h * (e1 * k1.phi + e3 * k3.phi + e4 * k4.phi + e5 * k5.phi +
                           e6 * k6.phi + e7 * k7.phi);
  const double edphi = h * (e1 * k1.dphi + e3 * k3.dphi + e4 * k4.dphi + e5 * k5.dphi +
                            e6 * k6.dphi + e7 * k7.dphi);
  err = std::max(std::abs(ephi), std::abs(edphi));
  return y5;
}

enum class Verdict { Crossed, Diverged, Survived };

// Integrate from (x0, y0) to x_end with adaptive steps.  On_sample, when
// given, receives accepted step endpoints.  Classification for the shooting
// dichotomy: phi < 0 is a crossing, phi above twice the 144/x^3 envelope past
// x = 20 is divergence.
Verdict integrate(double x0, State y0, double x_end, double rtol,
                  std::vector<double>* xs, std::vector<State>* ys) {
  double x = x0;
  State y = y0;
  double h = (x_end > x0 ? 1.0 : -1.0) * std::max(1e-6, std::abs(x0) * 1e-3);
  const double dir = x_end > x0 ? 1.0 : -1.0;
  while (dir * (x_end - x) > 0.0) {
    if (dir * (x + h - x_end) > 0.0) h = x_end - x;
    double err = 0.0;
    const State ynew = dp45_step(x, y, h, err);
    const double scale =
        1e-14 + rtol * std::max({std::abs(y.phi), std::abs(h * y.dphi), 1e-3});
    if (err <= scale) {
      x += h;
      y = ynew;
      if (xs) {
        xs->push_back(x);
        ys->push_back(y);
      }
      if (y.phi < 0.0) return Verdict::Crossed;
      // the screening branch stays below phi(0) = 1; growth past it means the
      // trajectory left the branch and is heading for finite-x blow-up
      if (dir > 0.0 && y.phi > 2.0) return Verdict::Diverged;
      if (dir > 0.0 && x > 20.0 && y.phi > 2.0 * 144.0 / (x * x * x)) return Verdict::Diverged;
    }
    const double fac = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 2.0;
    h *= std::clamp(fac, 0.2, 2.5);
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x)))
      throw SolverError("tf screening: step size underflow");
  }
  return Verdict::Survived;
}

Verdict shoot(double b, double x_max, double rtol) {
  const double x0 = 1e-3;
  const Verdict v = integrate(x0, series_start(x0, b), x_max, rtol, nullptr, nullptr);
  if (v != Verdict::Survived) return v;
  // Survivors at x_max sit between the branches; classify by the logarithmic
  // slope, which is < 3 in magnitude on the diverging side.
  std::vector<double> xs;
  std::vector<State> ys;
  integrate(x0, series_start(x0, b), x_max, rtol, &xs, &ys);
  const State& end = ys.back();
  const double m = -x_max * end.dphi / end.phi;
  return m < 3.0 ? Verdict::Diverged : Verdict::Crossed;
}

// Universal coefficients F_n of the tail series phi = (144/x^3) sum F_n w^n,
// w = beta x^{-lambda}; F_0 = F_1 = 1, the rest from a Cauchy-product
// recursion for S^{3/2}.
std::vector<double> tail_coeffs(int nmax) {
  std::vector<double> F(nmax + 1, 0.0), T(nmax + 1, 0.0);
  F[0] = 1.0;
  F[1] = 1.0;
  T[0] = 1.0;
  for (int n = 1; n <= nmax; ++n) {
    if (n >= 2) {
      // partial T_n from F_1..F_{n-1}
      double t = 0.0;
      for (int k = 1; k < n; ++k) t += (2.5 * k - n) * F[k] * T[n - k];
      t /= n;
      const double denom = (3.0 + n * kLambda) * (4.0 + n * kLambda) - 18.0;
      F[n] = 12.0 * t / denom;
    }
    // complete T_n including the F_n term
    double t = 0.0;
    for (int k = 1; k <= n; ++k) t += (2.5 * k - n) * F[k] * T[n - k];
    T[n] = t / n;
  }
  return F;
}

State tail_state(double x, double beta, const std::vector<double>& F) {
  const double w = beta * std::pow(x, -kLambda);
  double S = 0.0, dSdw_w = 0.0;
  double wn = 1.0;
  for (std::size_t n = 0; n < F.size(); ++n) {
    S += F[n] * wn;
    dSdw_w += double(n) * F[n] * wn;
    wn *= w;
  }
  const double pre = 144.0 / (x * x * x);
  const double phi = pre * S;
  // d/dx [144 x^{-3} S(w)] with dw/dx = -lambda w / x
  const double dphi = pre * (-3.0 * S - kLambda * dSdw_w) / x;
  return {phi, dphi};
}

}  // namespace

void TFSolution::init_constants() {
  gamma_tf_ = std::pow(6.0 * std::numbers::pi * std::numbers::pi / double(q_), 2.0 / 3.0);
  b1_ = 0.5 * gamma_tf_ * std::pow(kFourPi, -2.0 / 3.0);
}

double TFSolution::phi(double x) const {
  if (x <= 0.0) return 1.0;
  if (x < xs_.front()) return series_start(x, slope0_).phi;
  if (x > xs_.back()) {
    static const std::vector<double> F = tail_coeffs(6);
    return tail_state(x, tail_c1_, F).phi;
  }
  const std::size_t i =
      std::size_t(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin()) - 1;
  const std::size_t j = std::min(i, xs_.size() - 2);
  const double h = xs_[j + 1] - xs_[j];
  const double t = (x - xs_[j]) / h;
  if (have_dphi_) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * phis_[j] + (t3 - 2 * t2 + t) * h * dphis_[j] +
           (-2 * t3 + 3 * t2) * phis_[j + 1] + (t3 - t2) * h * dphis_[j + 1];
  }
  return (1.0 - t) * phis_[j] + t * phis_[j + 1];
}

double TFSolution::phi_prime(double x) const {
  if (x <= 0.0) return slope0_;
  if (x < xs_.front()) return series_start(x, slope0_).dphi;
  if (x > xs_.back()) {
    static const std::vector<double> F = tail_coeffs(6);
    return tail_state(x, tail_c1_, F).dphi;
  }
  const std::size_t i =
      std::size_t(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin()) - 1;
  const std::size_t j = std::min(i, xs_.size() - 2);
  const double h = xs_[j + 1] - xs_[j];
  const double t = (x - xs_[j]) / h;
  if (have_dphi_) {
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * phis_[j] + (3 * t2 - 4 * t + 1) * h * dphis_[j] +
            (-6 * t2 + 6 * t) * phis_[j + 1] + (3 * t2 - 2 * t) * h * dphis_[j + 1]) /
           h;
  }
  return (phis_[j + 1] - phis_[j]) / h;
}

TFSolution TFSolution::from_samples(std::vector<double> xs, std::vector<double> phis,
                                    double slope0, double tol, int q, double x_switch,
                                    double tail_c1, double tail_c2) {
  TFSolution s;
  s.xs_ = std::move(xs);
  s.phis_ = std::move(phis);
  s.slope0_ = slope0;
  s.tol_ = tol;
  s.q_ = q;
  s.x_switch_ = x_switch;
  s.tail_c1_ = tail_c1;
  s.tail_c2_ = tail_c2;
  s.have_dphi_ = false;
  s.init_constants();
  if (s.xs_.size() < 16) throw std::invalid_argument("tf solution: too few samples");
  return s;
}

TFSolution solve_tf_screening(double tol, int q) {
  if (!(tol >= 1e-12 && tol <= 1e-4))
    throw std::invalid_argument("solve_tf_screening: tol must lie in [1e-12, 1e-4]");
  if (q < 1) throw std::invalid_argument("solve_tf_screening: q must be >= 1");

  const double rtol = std::clamp(tol * 1e-2, 1e-12, 1e-8);
  const double x_max = 50.0;
  double lo = -2.0, hi = -1.0;
  if (shoot(lo, x_max, rtol) != Verdict::Crossed || shoot(hi, x_max, rtol) != Verdict::Diverged)
    throw SolverError("tf screening: initial bracket does not straddle the neutral branch");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (shoot(mid, x_max, rtol) == Verdict::Crossed)
      lo = mid;
    else
      hi = mid;
  }
  const double slope0 = 0.5 * (lo + hi);

  TFSolution sol;
  sol.slope0_ = slope0;
  sol.tol_ = tol;
  sol.q_ = q;
  sol.init_constants();

  // Dense forward trajectory on [x0, x_switch]; the forward solution is clean
  // there (the growing mode has not yet amplified the slope bracket).
  const double x_switch = 18.0;
  sol.x_switch_ = x_switch;
  const double x0 = 1e-3;
  std::vector<double> fx{x0};
  std::vector<State> fy{series_start(x0, slope0)};
  integrate(x0, fy.front(), x_switch, rtol, &fx, &fy);

  // One-parameter tail family integrated backward from deep in the Sommerfeld
  // region; beta matched so the tail hits the forward value at x_switch.
  static const std::vector<double> F = tail_coeffs(6);
  const double x_far = 3000.0;
  const double phi_match = fy.back().phi;
  auto tail_at_switch = [&](double beta) {
    std::vector<double> bx;
    std::vector<State> by;
    integrate(x_far, tail_state(x_far, beta, F), x_switch, rtol, &bx, &by);
    return by.back().phi;
  };
  double beta0 = -12.0, beta1 = -14.0;
  double f0 = tail_at_switch(beta0) - phi_match;
  double f1 = tail_at_switch(beta1) - phi_match;
  for (int it = 0; it < 60 && std::abs(beta1 - beta0) > 1e-13 * std::abs(beta1); ++it) {
    const double beta2 = beta1 - f1 * (beta1 - beta0) / (f1 - f0);
    beta0 = beta1;
    f0 = f1;
    beta1 = beta2;
    f1 = tail_at_switch(beta1) - phi_match;
  }
  sol.tail_c1_ = beta1;
  sol.tail_c2_ = F[2];

  std::vector<double> bx{x_far};
  std::vector<State> by{tail_state(x_far, beta1, F)};
  integrate(x_far, by.front(), x_switch, rtol, &bx, &by);

  // Stitch: forward samples up to x_switch, reversed backward samples beyond.
  sol.xs_.reserve(fx.size() + bx.size());
  sol.phis_.reserve(fx.size() + bx.size());
  sol.dphis_.reserve(fx.size() + bx.size());
  for (std::size_t i = 0; i < fx.size(); ++i) {
    sol.xs_.push_back(fx[i]);
    sol.phis_.push_back(fy[i].phi);
    sol.dphis_.push_back(fy[i].dphi);
  }
  for (std::size_t i = bx.size(); i-- > 0;) {
    if (bx[i] <= sol.xs_.back()) continue;
    sol.xs_.push_back(bx[i]);
    sol.phis_.push_back(by[i].phi);
    sol.dphis_.push_back(by[i].dphi);
  }
  sol.have_dphi_ = true;
  return sol;
}

RadialGrid tf_default_grid(std::size_t n) {
  // r_max covers the x^{-6} density tail: the charge beyond x_max is
  // ~ 4*144/x_max^3, so 300 units of the TF length keep it near 2e-5.
  const double b1 = 0.5 * std::pow(3.0 * std::numbers::pi * std::numbers::pi, 2.0 / 3.0) *
                    std::pow(kFourPi, -2.0 / 3.0);
  return build_grid(GridKind::LogUniform, 1e-10, 300.0 * b1, n);
}

RadialDensity tf_density(const TFSolution& sol, double Z, const RadialGrid& grid) {
  if (!(Z > 0.0)) throw std::invalid_argument("tf_density: Z must be positive");
  // direct sampling of rho_Z(r) = (2 Phi_Z / gamma_TF)^{3/2},
  // Phi_Z = Z phi(r/b_Z)/r, b_Z = b_1 Z^{-1/3}
  const double b = sol.length_scale() * std::pow(Z, -1.0 / 3.0);
  std::vector<double> v(grid.size());
  const double pref = 2.0 * Z / sol.gamma_tf();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.nodes()[i];
    const double t = pref * sol.phi(r / b) / r;
    v[i] = t > 0.0 ? t * std::sqrt(t) : 0.0;
  }
  return RadialDensity(grid, std::move(v));
}

RadialDensity tf_density(const TFSolution& sol, double Z) {
  // constructed at Z = 1 and mapped by the exact scaling relation, so that
  // Z-scaling identities hold to rounding
  RadialDensity rho1 = tf_density(sol, 1.0, tf_default_grid());
  if (Z == 1.0) return rho1;
  return rescale_density(rho1, 1.0 / Z);
}

std::vector<double> tf_potential(const TFSolution& sol, double Z, const RadialGrid& grid) {
  if (!(Z > 0.0)) throw std::invalid_argument("tf_potential: Z must be positive");
  const RadialDensity rho = tf_density(sol, Z, grid);
  const auto phi_rho = newton_potential(rho);
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[i] = Z / grid.nodes()[i] - phi_rho[i];
  return out;
}

namespace {

EnergyBreakdown energy_of_density(const RadialDensity& rho, double Z, double gamma_tf) {
  const auto& g = rho.grid();
  const auto& r = g.nodes();
  const auto& v = rho.values();
  std::vector<double> fk(v.size()), fa(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    fk[i] = kFourPi * r[i] * r[i] * std::pow(v[i], 5.0 / 3.0);
    fa[i] = kFourPi * r[i] * v[i];
  }
  EnergyBreakdown e;
  e.kinetic = 0.3 * gamma_tf * g.integrate(fk);
  e.attraction = Z * g.integrate(fa);
  e.repulsion = coulomb_pair(rho, rho).value;
  e.total = e.kinetic - e.attraction + e.repulsion;
  return e;
}

}  // namespace

EnergyBreakdown tf_energy(const TFSolution& sol, double Z, const RadialGrid& grid) {
  return energy_of_density(tf_density(sol, Z, grid), Z, sol.gamma_tf());
}

EnergyBreakdown tf_energy(const TFSolution& sol, double Z) {
  // the default-grid density is the exact scaling image of the Z = 1 one, so
  // E(Z)/Z^{7/3} is constant to rounding
  return energy_of_density(tf_density(sol, Z), Z, sol.gamma_tf());
}

double tf_functional(const RadialDensity& rho, double Z, int q) {
  const double gamma_tf =
      std::pow(6.0 * std::numbers::pi * std::numbers::pi / double(q), 2.0 / 3.0);
  const auto& g = rho.grid();
  const auto& r = g.nodes();
  const auto& v = rho.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = g.cell_weights()[i] * kFourPi * r[i] * r[i];
    acc += a * (0.3 * gamma_tf * std::pow(v[i], 5.0 / 3.0) - Z * v[i] / r[i]);
  }
  return acc + coulomb_bilinear(g, v, v);
}

}  // namespace tfc
