#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tfc/coulomb.hpp"
#include "tfc/density.hpp"
#include "tfc/grid.hpp"

namespace tfc {

// Neutral-atom Thomas-Fermi screening solution.  The screening function
// solves phi'' = phi^{3/2}/sqrt(x) with phi(0) = 1 and phi -> 0, obtained by
// bisection on the initial slope.  Beyond x_switch the stored trajectory is
// continued by the decaying-correction form
//   phi(x) = (144/x^3)(1 + c1 x^{-lam} + c2 x^{-2 lam}),  lam = (sqrt(73)-7)/2,
// with c1, c2 fitted to the integrated trajectory; the raw trajectory loses
// the neutral branch there because the growing mode amplifies slope error.
class TFSolution {
public:
  double phi(double x) const;
  double phi_prime(double x) const;

  double slope0() const { return slope0_; }
  double tol() const { return tol_; }
  int q() const { return q_; }
  double gamma_tf() const { return gamma_tf_; }
  // r = length_scale() * x at Z = 1; scales as Z^{-1/3}.
  double length_scale() const { return b1_; }
  double x_switch() const { return x_switch_; }
  double tail_c1() const { return tail_c1_; }
  double tail_c2() const { return tail_c2_; }

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& phis() const { return phis_; }

  // Serialization used by the CLI cache (CSV "x,phi" plus JSON sidecar).
  static TFSolution from_samples(std::vector<double> xs, std::vector<double> phis,
                                 double slope0, double tol, int q, double x_switch,
                                 double tail_c1, double tail_c2);

  friend TFSolution solve_tf_screening(double tol, int q);

private:
  void init_constants();

  std::vector<double> xs_, phis_, dphis_;
  double slope0_ = 0.0;
  double tol_ = 0.0;
  int q_ = 2;
  double gamma_tf_ = 0.0;
  double b1_ = 0.0;
  double x_switch_ = 0.0;
  double tail_c1_ = 0.0, tail_c2_ = 0.0;
  bool have_dphi_ = false;
};

// tol bounds the final slope bracket width; admissible range [1e-12, 1e-4].
TFSolution solve_tf_screening(double tol, int q = 2);

struct EnergyBreakdown {
  double kinetic = 0.0;     // (3/10) gamma_TF ∫ rho^{5/3}
  double attraction = 0.0;  // Z ∫ rho/|x|, reported positive
  double repulsion = 0.0;   // D(rho, rho)
  double total = 0.0;       // kinetic - attraction + repulsion
  std::optional<double> scott_term;      // (q/4 - s(gamma)) Z^2 when present
  std::optional<std::string> remainder;  // symbolic order of the neglected rest
};

// rho_Z^TF on a radial grid; constructed at Z = 1 from phi and mapped by the
// exact scaling relation rho_Z(x) = Z^2 rho_1(Z^{1/3} x) for other Z.
RadialDensity tf_density(const TFSolution& sol, double Z);
RadialDensity tf_density(const TFSolution& sol, double Z, const RadialGrid& grid);

// Default grid used by tf_density(sol, Z) before scaling.
RadialGrid tf_default_grid(std::size_t n = 4000);

// Phi_Z(r) = Z/r - ∫ rho_Z/|x-y| at the grid nodes, via Newton's theorem
// applied to the sampled density.
std::vector<double> tf_potential(const TFSolution& sol, double Z, const RadialGrid& grid);

EnergyBreakdown tf_energy(const TFSolution& sol, double Z);
EnergyBreakdown tf_energy(const TFSolution& sol, double Z, const RadialGrid& grid);

// Independent oracle: projected-gradient minimization of the discretized
// functional over rho >= 0 with charge <= Z.  Stays away from the ODE path.
struct DirectMinimizeResult {
  RadialDensity density;
  double objective = 0.0;
  std::size_t iterations = 0;
  double final_step = 0.0;
};
DirectMinimizeResult tf_minimize_direct(double Z, const RadialGrid& grid,
                                        std::size_t max_iter = 40000, int q = 2);

// Discretized TF functional value for any sampled density (same quadrature
// that the minimizer uses).
double tf_functional(const RadialDensity& rho, double Z, int q = 2);

}  // namespace tfc
