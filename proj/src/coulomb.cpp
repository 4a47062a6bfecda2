#include "tfc/coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tfc {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

std::vector<double> charge_integrand(const RadialGrid& g, const std::vector<double>& v) {
  std::vector<double> f(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) f[i] = kFourPi * g.nodes()[i] * g.nodes()[i] * v[i];
  return f;
}

double bilinear_on_grid(const RadialGrid& g, const std::vector<double>& fv,
                        const std::vector<double>& gv) {
  const auto qf = g.cumulative(charge_integrand(g, fv));
  const auto qg = g.cumulative(charge_integrand(g, gv));
  const auto& r = g.nodes();
  const auto& w = g.cell_weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) acc += w[i] * qf[i] * qg[i] / (r[i] * r[i]);
  acc += qf.back() * qg.back() / r.back();
  return 0.5 * acc;
}

// Same value on every second node; the difference estimates quadrature error.
double bilinear_coarse(const RadialGrid& g, const std::vector<double>& fv,
                       const std::vector<double>& gv) {
  std::vector<double> r2, f2, g2;
  for (std::size_t i = 0; i < g.size(); i += 2) {
    r2.push_back(g.nodes()[i]);
    f2.push_back(fv[i]);
    g2.push_back(gv[i]);
  }
  if (r2.back() != g.nodes().back()) {
    r2.push_back(g.nodes().back());
    f2.push_back(fv.back());
    g2.push_back(gv.back());
  }
  if (r2.size() < 16) return bilinear_on_grid(g, fv, gv);
  const RadialGrid gc = RadialGrid::from_nodes(std::move(r2));
  return bilinear_on_grid(gc, f2, g2);
}

}  // namespace

double coulomb_bilinear(const RadialGrid& grid, const std::vector<double>& f,
                        const std::vector<double>& g) {
  if (f.size() != grid.size() || g.size() != grid.size())
    throw std::invalid_argument("coulomb_bilinear: sample count mismatch");
  return bilinear_on_grid(grid, f, g);
}

CoulombValue coulomb_pair(const RadialDensity& rho, const RadialDensity& sigma) {
  const RadialDensity* b = &sigma;
  RadialDensity tmp = sigma;
  if (!rho.same_grid(sigma)) {
    tmp = sigma.resampled(rho.grid());
    b = &tmp;
  }
  CoulombValue out;
  out.value = bilinear_on_grid(rho.grid(), rho.values(), b->values());
  out.estimated_quadrature_error =
      std::abs(out.value - bilinear_coarse(rho.grid(), rho.values(), b->values()));
  return out;
}

double coulomb_norm(const RadialDensity& rho) {
  const double d = bilinear_on_grid(rho.grid(), rho.values(), rho.values());
  return std::sqrt(std::max(0.0, d));
}

double coulomb_pair(const SphericalShell& s1, const SphericalShell& s2) {
  return s1.charge * s2.charge / (2.0 * std::max(s1.radius, s2.radius));
}

double coulomb_pair(const SphericalShell& shell, const RadialDensity& rho) {
  return 0.5 * shell.charge * newton_potential_at(rho, shell.radius);
}

double coulomb_norm(const SphericalShell& shell) {
  return std::abs(shell.charge) / std::sqrt(2.0 * shell.radius);
}

double coulomb_distance(const RadialDensity& rho, const RadialDensity& sigma) {
  const RadialDensity* b = &sigma;
  RadialDensity tmp = sigma;
  if (!rho.same_grid(sigma)) {
    tmp = sigma.resampled(rho.grid());
    b = &tmp;
  }
  std::vector<double> diff(rho.values().size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = rho.values()[i] - b->values()[i];
  const double d = bilinear_on_grid(rho.grid(), diff, diff);
  return std::sqrt(std::max(0.0, d));
}

std::pair<double, double> coulomb_scaling_check(const RadialDensity& rho,
                                                const RadialDensity& sigma, double Z) {
  if (!(Z > 0.0)) throw std::invalid_argument("coulomb_scaling_check: Z must be positive");
  const double lhs_dist = coulomb_distance(rho, sigma);
  const RadialDensity rs = rescale_density(rho, Z);
  const RadialDensity ss = rescale_density(
      rho.same_grid(sigma) ? sigma : sigma.resampled(rho.grid()), Z);
  const double rhs_dist = coulomb_distance(rs, ss);
  return {lhs_dist * lhs_dist, std::pow(Z, 7.0 / 3.0) * rhs_dist * rhs_dist};
}

std::vector<double> newton_potential(const RadialDensity& rho) {
  const auto& g = rho.grid();
  const auto& r = g.nodes();
  const auto q = g.cumulative(rho.charge_integrand());
  std::vector<double> slope(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) slope[i] = kFourPi * r[i] * rho.values()[i];
  const auto wcum = g.cumulative(slope);
  const double wtot = wcum.back();
  std::vector<double> phi(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) phi[i] = q[i] / r[i] + (wtot - wcum[i]);
  return phi;
}

double newton_potential_at(const RadialDensity& rho, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("newton_potential_at: r must be positive");
  const auto& g = rho.grid();
  const auto qr = g.cumulative_at(rho.charge_integrand(), r);
  std::vector<double> slope(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    slope[i] = kFourPi * g.nodes()[i] * rho.values()[i];
  const double wtail = g.cumulative_at(slope, g.r_max()) - g.cumulative_at(slope, r);
  return qr / r + wtail;
}

double enclosed_charge_at(const RadialDensity& rho, double r) {
  return rho.grid().cumulative_at(rho.charge_integrand(), r);
}

}  // namespace tfc
