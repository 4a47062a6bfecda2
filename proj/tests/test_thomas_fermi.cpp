#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tfc/coulomb.hpp"
#include "tfc/thomas_fermi.hpp"

using namespace tfc;

namespace {

// Fixed-step RK4 on phi'' = phi^{3/2}/sqrt(x); independent of the production
// integrator, used to cross-check trajectories and the shooting dichotomy.
struct Rk4Result {
  double x_cross = -1.0;   // where phi crossed zero, if it did
  double x_diverge = -1.0; // where phi exceeded twice the Sommerfeld envelope
  std::vector<double> xs, phis;
};

Rk4Result rk4_shoot(double slope, double x_end, double h) {
  auto rhs = [](double x, double phi, double dphi, double& f1, double& f2) {
    const double p = phi > 0.0 ? phi : 0.0;
    f1 = dphi;
    f2 = p * std::sqrt(p / x);
  };
  double x = 1e-3;
  // series start consistent with the module's expansion
  double phi = 1.0 + slope * x + (4.0 / 3.0) * std::pow(x, 1.5) + 0.4 * slope * std::pow(x, 2.5);
  double dphi = slope + 2.0 * std::sqrt(x) + slope * std::pow(x, 1.5);
  Rk4Result out;
  while (x < x_end) {
    double k1p, k1d, k2p, k2d, k3p, k3d, k4p, k4d;
    rhs(x, phi, dphi, k1p, k1d);
    rhs(x + 0.5 * h, phi + 0.5 * h * k1p, dphi + 0.5 * h * k1d, k2p, k2d);
    rhs(x + 0.5 * h, phi + 0.5 * h * k2p, dphi + 0.5 * h * k2d, k3p, k3d);
    rhs(x + h, phi + h * k3p, dphi + h * k3d, k4p, k4d);
    phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    dphi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    x += h;
    out.xs.push_back(x);
    out.phis.push_back(phi);
    if (phi < 0.0 && out.x_cross < 0.0) {
      out.x_cross = x;
      break;
    }
    if (x > 20.0 && phi > 2.0 * 144.0 / (x * x * x) && out.x_diverge < 0.0) {
      out.x_diverge = x;
      break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("screening solve: boundary condition, slope, monotonicity") {
  const auto sol = solve_tf_screening(1e-12);
  CHECK(sol.phi(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sol.slope0() == doctest::Approx(-1.588071).epsilon(0.0).scale(1.0));
  CHECK(std::abs(sol.slope0() + 1.588071) < 1e-5);

  // strictly decreasing and positive on the stored range
  double prev = sol.phi(1e-6);
  for (double x = 1e-3; x < 2500.0; x *= 1.15) {
    const double p = sol.phi(x);
    CHECK(p > 0.0);
    CHECK(p < prev);
    prev = p;
  }

  // tolerance robustness of the bracketed slope
  const auto sol10 = solve_tf_screening(1e-10);
  CHECK(std::abs(sol10.slope0() - sol.slope0()) < 1e-7);
}

TEST_CASE("144/x^3 solves the equation exactly and is the large-x envelope") {
  // substitution: (144/x^3)'' = 1728 x^-5 = (144/x^3)^{3/2} / sqrt(x)
  for (double x : {5.0, 17.0, 120.0}) {
    const double lhs = 12.0 * 144.0 * std::pow(x, -5.0);
    const double rhs = std::pow(144.0 / (x * x * x), 1.5) / std::sqrt(x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
  }
  const auto sol = solve_tf_screening(1e-12);
  // phi approaches the envelope from below
  double prev_ratio = 0.0;
  for (double x : {100.0, 300.0, 1000.0, 2500.0}) {
    const double ratio = sol.phi(x) * x * x * x / 144.0;
    CHECK(ratio > prev_ratio);
    CHECK(ratio < 1.0);
    prev_ratio = ratio;
  }
  CHECK(prev_ratio > 0.75);
}

TEST_CASE("stored trajectory matches an independent RK4 integration") {
  const auto sol = solve_tf_screening(1e-12);
  const auto ref = rk4_shoot(sol.slope0(), 15.0, 2e-5);
  CHECK(ref.x_cross < 0.0);
  CHECK(ref.x_diverge < 0.0);
  for (std::size_t i = 0; i < ref.xs.size(); i += 50000) {
    const double x = ref.xs[i];
    CHECK(sol.phi(x) == doctest::Approx(ref.phis[i]).epsilon(2e-6));
  }
}

TEST_CASE("shooting dichotomy: steeper slopes cross, shallower slopes diverge") {
  const auto sol = solve_tf_screening(1e-10);
  const auto steeper = rk4_shoot(sol.slope0() - 1e-3, 50.0, 1e-4);
  CHECK(steeper.x_cross > 0.0);
  const auto shallower = rk4_shoot(sol.slope0() + 1e-3, 50.0, 1e-4);
  CHECK(shallower.x_diverge > 0.0);
}

TEST_CASE("solve_tf_screening validates tol") {
  CHECK_THROWS_AS(solve_tf_screening(1e-13), std::invalid_argument);
  CHECK_THROWS_AS(solve_tf_screening(1e-3), std::invalid_argument);
}

TEST_CASE("tf_density: neutral charge, scaling relation, cusp coefficient") {
  const auto sol = solve_tf_screening(1e-12);

  const auto rho1 = tf_density(sol, 1.0);
  CHECK(rho1.charge() == doctest::Approx(1.0).epsilon(1e-4));
  const auto rho10 = tf_density(sol, 10.0);
  CHECK(rho10.charge() == doctest::Approx(10.0).epsilon(1e-4));

  // rho_Z equals the inverse rescaling of rho_1 exactly (same construction)
  const auto rho10_scaled = rescale_density(rho1, 0.1);
  for (std::size_t i = 0; i < rho10.grid().size(); i += 500) {
    CHECK(rho10.values()[i] ==
          doctest::Approx(rho10_scaled.values()[i]).epsilon(1e-12));
  }

  // small-r behavior rho * r^{3/2} -> (2/gamma_TF)^{3/2}
  const double target = std::pow(2.0 / sol.gamma_tf(), 1.5);
  const double at1 = rho1.values()[0] * std::pow(rho1.grid().nodes()[0], 1.5);
  CHECK(at1 == doctest::Approx(target).epsilon(1e-4));

  CHECK_THROWS_AS(tf_density(sol, -1.0), std::invalid_argument);
}

TEST_CASE("tf_potential: nuclear limit, positivity, Euler-Lagrange relation") {
  const auto sol = solve_tf_screening(1e-12);
  const double Z = 5.0;
  const auto grid = build_grid(GridKind::LogUniform, 1e-8, 120.0, 3000);
  const auto pot = tf_potential(sol, Z, grid);
  const auto rho = tf_density(sol, Z, grid);

  // r Phi -> Z at the origin
  CHECK(grid.nodes().front() * pot.front() == doctest::Approx(Z).epsilon(1e-3));

  std::size_t positive = 0;
  for (double p : pot) positive += (p > 0.0);
  CHECK(positive == pot.size());

  // (gamma_TF/2) rho^{2/3} = Phi on interior nodes
  const double b = sol.length_scale() * std::pow(Z, -1.0 / 3.0);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < grid.size(); i += 53) {
    const double x = grid.nodes()[i] / b;
    if (x < 1e-4 || x > 12.0) continue;
    const double lhs =
        0.5 * sol.gamma_tf() * std::pow(rho.values()[i], 2.0 / 3.0);
    CHECK(lhs == doctest::Approx(pot[i]).epsilon(1e-4));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("tf_energy: frozen value, Z^{7/3} scaling, virial ratios") {
  const auto sol = solve_tf_screening(1e-12);

  const auto e1 = tf_energy(sol, 1.0);
  CHECK(e1.total == doctest::Approx(-0.7687).epsilon(1e-3));
  CHECK(e1.total == doctest::Approx(e1.kinetic - e1.attraction + e1.repulsion).epsilon(1e-15));

  const double ref = e1.total;
  for (double Z : {10.0, 100.0}) {
    const auto eZ = tf_energy(sol, Z);
    CHECK(eZ.total / std::pow(Z, 7.0 / 3.0) == doctest::Approx(ref).epsilon(1e-6));
  }

  // kinetic : attraction : repulsion = 3 : 7 : 1 and total = -kinetic
  CHECK(e1.attraction / e1.kinetic == doctest::Approx(7.0 / 3.0).epsilon(1e-3));
  CHECK(e1.repulsion / e1.kinetic == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  CHECK(e1.total == doctest::Approx(-e1.kinetic).epsilon(1e-3));
}

TEST_CASE("direct minimization agrees with the shooting path") {
  const auto sol = solve_tf_screening(1e-12);
  const double Z = 1.0;
  const auto grid = build_grid(GridKind::LogUniform, 1e-10, 150.0, 800);

  const auto res = tf_minimize_direct(Z, grid, 40000);
  for (double v : res.density.values()) CHECK(v >= 0.0);
  CHECK(res.density.charge() <= Z * (1.0 + 1e-12));

  const auto e_ode = tf_energy(sol, Z);
  CHECK(std::abs(res.objective - e_ode.total) <= 1e-4 * std::abs(e_ode.total));
  CHECK(res.objective >= e_ode.total - 1e-4 * std::abs(e_ode.total));

  // Coulomb distance between the two paths at matched resolution
  const auto rho_ode = tf_density(sol, Z, grid);
  const double dist = coulomb_distance(res.density, rho_ode);
  const double norm = coulomb_norm(rho_ode);
  CHECK(dist < 1e-2 * norm);

  // the ODE density evaluated through the same discrete functional cannot
  // beat the direct minimizer by more than the convergence gap
  const double f_ode = tf_functional(rho_ode, Z);
  CHECK(res.objective <= f_ode + 1e-6);
}
