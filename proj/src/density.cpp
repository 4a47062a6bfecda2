#include "tfc/density.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tfc/interp.hpp"
#include "tfc/numformat.hpp"

namespace tfc {

RadialDensity::RadialDensity(RadialGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("radial density: sample count mismatch");
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("radial density: values must be finite and >= 0");
  }
  charge_ = grid_.integrate(charge_integrand());
}

std::vector<double> RadialDensity::charge_integrand() const {
  std::vector<double> f(values_.size());
  const auto& r = grid_.nodes();
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = 4.0 * std::numbers::pi * r[i] * r[i] * values_[i];
  return f;
}

RadialDensity RadialDensity::resampled(const RadialGrid& target) const {
  Pchip p(grid_.log_nodes(), values_);
  std::vector<double> v(target.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double y = p.eval_clamped(target.log_nodes()[i]);
    v[i] = y > 0.0 ? y : 0.0;
  }
  return RadialDensity(target, std::move(v));
}

bool RadialDensity::same_grid(const RadialDensity& other) const {
  if (grid_.size() != other.grid_.size()) return false;
  return grid_.nodes() == other.grid_.nodes();
}

RadialDensity rescale_density(const RadialDensity& rho, double Z) {
  if (!(Z > 0.0)) throw std::invalid_argument("rescale_density: Z must be positive");
  const double s = std::cbrt(Z);
  const double f = 1.0 / (Z * Z);
  std::vector<double> v(rho.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f * rho.values()[i];
  return RadialDensity(rho.grid().scaled(s), std::move(v));
}

RadialDensity read_density_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open density file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty density file: " + path);
  if (line.size() && line.back() == '\r') line.pop_back();
  if (line != "r,rho")
    throw std::invalid_argument("density file must start with header 'r,rho': " + path);
  std::vector<double> r, v;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.size() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b))
      throw std::invalid_argument(path + ": malformed row " + std::to_string(lineno));
    const double ri = std::stod(a), vi = std::stod(b);
    if (!r.empty() && !(ri > r.back()))
      throw std::invalid_argument(path + ": radii not strictly increasing at row " +
                                  std::to_string(lineno));
    if (vi < 0.0)
      throw std::invalid_argument(path + ": negative density at row " + std::to_string(lineno));
    r.push_back(ri);
    v.push_back(vi);
  }
  return RadialDensity(RadialGrid::from_nodes(std::move(r)), std::move(v));
}

void write_density_csv(const std::string& path, const RadialDensity& rho) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write density file: " + path);
  out << "r,rho\n";
  for (std::size_t i = 0; i < rho.grid().size(); ++i)
    out << format_double(rho.grid().nodes()[i]) << ',' << format_double(rho.values()[i]) << '\n';
}

}  // namespace tfc
