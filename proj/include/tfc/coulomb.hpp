#pragma once

#include <utility>
#include <vector>

#include "tfc/density.hpp"
#include "tfc/grid.hpp"

namespace tfc {

struct CoulombValue {
  double value = 0.0;                      // Hartree
  double estimated_quadrature_error = 0.0;
};

// D(ρ,σ) = ½ ∫∫ ρ(x)σ(y)/|x-y| dx dy for spherical densities, evaluated with
// Newton's theorem.  The implementation writes 1/max(r,s) = ∫_{t>r,s} dt/t²
// and integrates the enclosed charges:
//
//   D(ρ,σ) = ½ ∫_0^∞ Q_ρ(t) Q_σ(t) dt/t²,   Q_ρ(t) = ∫_{s<t} 4π s² ρ(s) ds,
//
// with the exact tail Q_ρ(R)Q_σ(R)/(2R) beyond the grid.  Both cumulative and
// outer integrals use the grid's per-cell cubic rule, so the discrete D is a
// Gram form: symmetric, bilinear and positive semidefinite by construction.
CoulombValue coulomb_pair(const RadialDensity& rho, const RadialDensity& sigma);

// ‖ρ‖_C = D(ρ,ρ)^(1/2)
double coulomb_norm(const RadialDensity& rho);

// Closed-form pairings for surface charges (Newton's theorem):
//   shell/shell:  q₁q₂ / (2 max(a,b));  shell/density: q (Q_ρ(a)/a + W_ρ(a))/2.
double coulomb_pair(const SphericalShell& s1, const SphericalShell& s2);
double coulomb_pair(const SphericalShell& shell, const RadialDensity& rho);
double coulomb_norm(const SphericalShell& shell);

// D on signed node samples over one grid (differences of densities).
double coulomb_bilinear(const RadialGrid& grid, const std::vector<double>& f,
                        const std::vector<double>& g);

// ‖ρ-σ‖_C via the bilinear form on a common grid (σ resampled if needed).
double coulomb_distance(const RadialDensity& rho, const RadialDensity& sigma);

// Returns (‖ρ-σ‖_C², Z^{7/3} ‖rescale(ρ,Z)-rescale(σ,Z)‖_C²); the two entries
// agree within quadrature and interpolation tolerance.
std::pair<double, double> coulomb_scaling_check(const RadialDensity& rho,
                                                const RadialDensity& sigma, double Z);

// Screened potentials of a charge distribution at the grid nodes and at
// arbitrary radii:  Φ_ρ(r) = Q_ρ(r)/r + W_ρ(r),  W_ρ(r) = ∫_{s>r} 4π s ρ ds.
std::vector<double> newton_potential(const RadialDensity& rho);
double newton_potential_at(const RadialDensity& rho, double r);

// Enclosed charge Q_ρ(r).
double enclosed_charge_at(const RadialDensity& rho, double r);

}  // namespace tfc
