#pragma once

#include <vector>

namespace anisospec {

// One-dimensional grids on [-L, L].
//
//   trapezoid_uniform        n nodes including both endpoints, spacing
//                            h = 2L/(n-1), weights h (h/2 at the ends)
//   gauss_legendre_composite equal panels, an m-point Legendre rule mapped
//                            onto each
//   fourier_collocation      periodic grid x_j = -L + 2Lj/n (left endpoint
//                            included, right excluded), uniform weights
//                            2L/n, node count a power of two
enum class GridScheme { trapezoid_uniform, gauss_legendre_composite, fourier_collocation };

struct Grid {
  std::vector<double> nodes;   // strictly increasing
  std::vector<double> weights; // positive; quadrature schemes sum to 2L
  double cutoff_L = 0.0;
  GridScheme scheme = GridScheme::trapezoid_uniform;

  int n() const { return static_cast<int>(nodes.size()); }
  bool is_quadrature() const { return scheme != GridScheme::fourier_collocation; }
};

Grid trapezoid_grid(double L, int n);
Grid gauss_legendre_composite(double L, int panels, int nodes_per_panel);
Grid fourier_collocation_grid(double L, int n);

// Nodes/weights of the m-point Gauss-Legendre rule on [-1, 1], computed by
// Newton iteration on the Legendre polynomial from the Chebyshev-like
// initial guesses cos(pi*(i - 1/4)/(m + 1/2)).
void gauss_legendre_rule(int m, std::vector<double>& x, std::vector<double>& w);

} // namespace anisospec
