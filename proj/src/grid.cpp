#include "tfc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tfc/errors.hpp"

namespace tfc {

std::string to_string(GridKind kind) {
  switch (kind) {
    case GridKind::LogUniform: return "log-uniform";
    case GridKind::MappedGauss: return "mapped-gauss";
    case GridKind::Custom: return "custom";
  }
  return "?";
}

GridKind grid_kind_from_string(const std::string& s) {
  if (s == "log-uniform") return GridKind::LogUniform;
  if (s == "mapped-gauss") return GridKind::MappedGauss;
  if (s == "custom") return GridKind::Custom;
  throw std::invalid_argument("unknown grid kind: " + s);
}

void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t k = 0; k < m; ++k) {
    // Tricomi-type initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (double(k) + 0.75) / (double(n) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * double(j) + 1.0) * z * p1 - double(j) * p2) / (double(j) + 1.0);
      }
      pp = double(n) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[k] = -z;
    x[n - 1 - k] = z;
    const double wk = 2.0 / ((1.0 - z * z) * pp * pp);
    w[k] = wk;
    w[n - 1 - k] = wk;
  }
}

namespace {

// Weights of ∫_a^b L_k(u) du for the cubic Lagrange basis on nodes t[0..3],
// computed in coordinates shifted by a for conditioning.
std::array<double, 4> lagrange_cell_weights(const double t[4], double a, double b) {
  std::array<double, 4> out{};
  const double h = b - a;
  for (int k = 0; k < 4; ++k) {
    double roots[3];
    int m = 0;
    for (int j = 0; j < 4; ++j)
      if (j != k) roots[m++] = t[j] - a;
    const double e1 = roots[0] + roots[1] + roots[2];
    const double e2 = roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2];
    const double e3 = roots[0] * roots[1] * roots[2];
    double den = 1.0;
    for (int j = 0; j < 4; ++j)
      if (j != k) den *= (t[k] - t[j]);
    // ∫_0^h (v^3 - e1 v^2 + e2 v - e3) dv
    const double num = h * h * h * h / 4.0 - e1 * h * h * h / 3.0 + e2 * h * h / 2.0 - e3 * h;
    out[k] = num / den;
  }
  return out;
}

}  // namespace

void RadialGrid::init_cells_and_weights() {
  const std::size_t n = r_.size();
  cell_start_.assign(n - 1, 0);
  cell_w_.assign(n - 1, {});
  uw_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int s = int(std::clamp<long>(long(i) - 1, 0, long(n) - 4));
    cell_start_[i] = s;
    double t[4] = {u_[s], u_[s + 1], u_[s + 2], u_[s + 3]};
    cell_w_[i] = lagrange_cell_weights(t, u_[i], u_[i + 1]);
    for (int k = 0; k < 4; ++k) uw_[s + k] += cell_w_[i][k];
  }
  wcell_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) wcell_[i] = uw_[i] * r_[i];
  for (std::size_t i = 0; i < n; ++i) {
    if (uw_[i] <= 0.0) throw SolverError("radial grid produced a non-positive cell weight");
  }
}

RadialGrid build_grid(GridKind kind, double r_min, double r_max, std::size_t n) {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw std::invalid_argument("build_grid: need 0 < r_min < r_max");
  if (n < 16) throw std::invalid_argument("build_grid: need n >= 16");
  if (kind == GridKind::Custom)
    throw std::invalid_argument("build_grid: custom grids come from explicit nodes");

  RadialGrid g;
  g.kind_ = kind;
  g.u_.resize(n);
  g.r_.resize(n);
  const double ua = std::log(r_min), ub = std::log(r_max);
  if (kind == GridKind::LogUniform) {
    const double h = (ub - ua) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) g.u_[i] = ua + h * double(i);
    g.u_.front() = ua;
    g.u_.back() = ub;
    for (std::size_t i = 0; i < n; ++i) g.r_[i] = std::exp(g.u_[i]);
    g.r_.front() = r_min;
    g.r_.back() = r_max;
    g.init_cells_and_weights();
    g.w_ = g.wcell_;
  } else {
    std::vector<double> x, wx;
    gauss_legendre(n, x, wx);
    g.w_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      g.u_[i] = 0.5 * (ua + ub) + 0.5 * (ub - ua) * x[i];
      g.r_[i] = std::exp(g.u_[i]);
      g.w_[i] = 0.5 * (ub - ua) * wx[i] * g.r_[i];
    }
    g.init_cells_and_weights();
  }
  return g;
}

RadialGrid RadialGrid::from_nodes(std::vector<double> radii) {
  if (radii.size() < 16) throw std::invalid_argument("radial grid: need at least 16 nodes");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw std::invalid_argument("radial grid: radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw std::invalid_argument("radial grid: radii must be strictly increasing");
  }
  RadialGrid g;
  g.kind_ = GridKind::Custom;
  g.r_ = std::move(radii);
  g.u_.resize(g.r_.size());
  for (std::size_t i = 0; i < g.r_.size(); ++i) g.u_[i] = std::log(g.r_[i]);
  g.init_cells_and_weights();
  g.w_ = g.wcell_;
  return g;
}

int RadialGrid::advertised_order() const {
  return kind_ == GridKind::MappedGauss ? 0 : 4;
}

double RadialGrid::integrate(const std::vector<double>& f) const {
  if (f.size() != r_.size()) throw std::invalid_argument("integrate: sample count mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += w_[i] * f[i];
  return acc;
}

std::vector<double> RadialGrid::cumulative(const std::vector<double>& f) const {
  if (f.size() != r_.size()) throw std::invalid_argument("cumulative: sample count mismatch");
  const std::size_t n = r_.size();
  std::vector<double> out(n, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int s = cell_start_[i];
    double c = 0.0;
    for (int k = 0; k < 4; ++k) c += cell_w_[i][k] * f[s + k] * r_[s + k];
    acc += c;
    out[i + 1] = acc;
  }
  return out;
}

double RadialGrid::cumulative_at(const std::vector<double>& f, double t) const {
  if (f.size() != r_.size()) throw std::invalid_argument("cumulative_at: sample count mismatch");
  if (t <= r_.front()) return 0.0;
  const std::size_t n = r_.size();
  double acc = 0.0;
  if (t >= r_.back()) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const int s = cell_start_[i];
      for (int k = 0; k < 4; ++k) acc += cell_w_[i][k] * f[s + k] * r_[s + k];
    }
    return acc;
  }
  const double ut = std::log(t);
  const std::size_t cell =
      std::size_t(std::upper_bound(u_.begin(), u_.end(), ut) - u_.begin()) - 1;
  for (std::size_t i = 0; i < cell; ++i) {
    const int s = cell_start_[i];
    for (int k = 0; k < 4; ++k) acc += cell_w_[i][k] * f[s + k] * r_[s + k];
  }
  const int s = cell_start_[cell];
  double tN[4] = {u_[s], u_[s + 1], u_[s + 2], u_[s + 3]};
  const auto pw = lagrange_cell_weights(tN, u_[cell], ut);
  for (int k = 0; k < 4; ++k) acc += pw[k] * f[s + k] * r_[s + k];
  return acc;
}

RadialGrid RadialGrid::scaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("RadialGrid::scaled: factor must be positive");
  RadialGrid g(*this);
  const double lus = std::log(s);
  for (std::size_t i = 0; i < g.r_.size(); ++i) {
    g.r_[i] *= s;
    g.u_[i] += lus;
    g.w_[i] *= s;
    g.wcell_[i] *= s;
  }
  return g;
}

}  // namespace tfc
