#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace tfc {

enum class GridKind {
  LogUniform,   // nodes uniform in u = ln r, composite 4-point Newton-Cotes weights
  MappedGauss,  // Gauss-Legendre nodes in u = ln r, spectral weights
  Custom,       // nodes taken from a file; weights from the per-cell rule
};

std::string to_string(GridKind kind);
GridKind grid_kind_from_string(const std::string& s);

// Quadrature nodes and weights for integrals over (0, r_max), truncated at
// [r_min, r_max] and evaluated in the log variable u = ln r.  All radii in
// Bohr, integrals are plain ∫ f(r) dr; integrands carry their own r^2 factors.
//
// Besides the advertised node weights, the grid owns a per-cell cubic rule
// (4-node stencils, exact for cubics in u) used for cumulative integrals.
// The per-cell rule keeps Coulomb integrals symmetric and positive
// semidefinite; see coulomb.hpp.
class RadialGrid {
public:
  RadialGrid() = default;

  GridKind kind() const { return kind_; }
  std::size_t size() const { return r_.size(); }
  const std::vector<double>& nodes() const { return r_; }
  const std::vector<double>& log_nodes() const { return u_; }
  const std::vector<double>& weights() const { return w_; }
  double r_min() const { return r_.front(); }
  double r_max() const { return r_.back(); }

  // 4 for the composite cubic rule; 0 means super-algebraic (mapped Gauss).
  int advertised_order() const;

  // Σ w_i f_i  ~  ∫ f dr over [r_min, r_max].
  double integrate(const std::vector<double>& f) const;

  // Cumulative integral of f over [r_min, r_k] at every node (entry 0 is 0),
  // via the per-cell cubic rule.  Same linear map for every input.
  std::vector<double> cumulative(const std::vector<double>& f) const;

  // ∫ f dr over [r_min, min(t, r_max)] via full cells plus a partial cell.
  double cumulative_at(const std::vector<double>& f, double t) const;

  // Assembled per-cell weights (also ~ ∫ f dr); positive, used where the
  // quadrature must match the cumulative rule exactly.
  const std::vector<double>& cell_weights() const { return wcell_; }

  // Per-cell rule internals (stencil start and the 4 u-space weights); the
  // direct functional minimizer differentiates through the cumulative map.
  std::size_t cell_count() const { return cell_w_.size(); }
  int cell_stencil_start(std::size_t cell) const { return cell_start_[cell]; }
  const std::array<double, 4>& cell_stencil_weights(std::size_t cell) const {
    return cell_w_[cell];
  }

  // Exact geometric copy with nodes scaled by s > 0: same u-space rule,
  // nodes and weights multiplied by s.  Used by the density rescaling map so
  // that scaling identities hold to rounding.
  RadialGrid scaled(double s) const;

  // Grid on explicitly given increasing positive radii (CSV import).
  static RadialGrid from_nodes(std::vector<double> radii);

  friend RadialGrid build_grid(GridKind kind, double r_min, double r_max, std::size_t n);

private:
  void init_cells_and_weights();

  GridKind kind_ = GridKind::LogUniform;
  std::vector<double> r_;
  std::vector<double> u_;
  std::vector<double> w_;       // advertised dr-weights
  std::vector<double> uw_;      // assembled u-space weights of the cell rule
  std::vector<double> wcell_;   // uw_ * r (dr-weights of the cell rule)
  std::vector<int> cell_start_; // stencil start per cell
  std::vector<std::array<double, 4>> cell_w_;  // u-space stencil weights per cell
};

// Preconditions: 0 < r_min < r_max, n >= 16.
RadialGrid build_grid(GridKind kind, double r_min, double r_max, std::size_t n);

// Gauss-Legendre rule on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w);

}  // namespace tfc
