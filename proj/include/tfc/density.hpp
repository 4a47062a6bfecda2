#pragma once

#include <string>
#include <vector>

#include "tfc/grid.hpp"

namespace tfc {

// Nonnegative radial particle density sampled on a grid, with cached total
// charge ∫ 4π r² ρ dr.  Instances are immutable.
class RadialDensity {
public:
  RadialDensity(RadialGrid grid, std::vector<double> values);

  const RadialGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double charge() const { return charge_; }

  // samples 4π r² ρ(r) (the dr-integrand of the charge)
  std::vector<double> charge_integrand() const;

  // Monotone cubic resampling on log r, clamped at zero.
  RadialDensity resampled(const RadialGrid& target) const;

  bool same_grid(const RadialDensity& other) const;

private:
  RadialGrid grid_;
  std::vector<double> values_;
  double charge_ = 0.0;
};

// Idealized spherical surface charge; enters Coulomb pairings through closed
// forms only (it has no grid representation).
struct SphericalShell {
  double charge = 1.0;
  double radius = 1.0;
};

// ρ̂(x) = Z^{-2} ρ(Z^{-1/3} x) on the image of the input grid.  Total charge
// is divided by Z.  Exact node map, no interpolation.
RadialDensity rescale_density(const RadialDensity& rho, double Z);

// CSV with header "r,rho", radii ascending; rejects non-monotone radii and
// negative densities.
RadialDensity read_density_csv(const std::string& path);
void write_density_csv(const std::string& path, const RadialDensity& rho);

}  // namespace tfc
