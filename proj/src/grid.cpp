#include "anisospec/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace anisospec {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

Grid trapezoid_grid(double L, int n) {
  if (!(L > 0.0)) throw std::invalid_argument("trapezoid_grid: L must be > 0");
  if (n < 2) throw std::invalid_argument("trapezoid_grid: need n >= 2");
  Grid g;
  g.cutoff_L = L;
  g.scheme = GridScheme::trapezoid_uniform;
  g.nodes.resize(n);
  g.weights.resize(n);
  const double h = 2.0 * L / (n - 1);
  for (int i = 0; i < n; ++i) {
    g.nodes[i] = -L + h * i;
    g.weights[i] = h;
  }
  g.nodes[n - 1] = L; // exact right endpoint
  g.weights[0] = 0.5 * h;
  g.weights[n - 1] = 0.5 * h;
  return g;
}

Grid gauss_legendre_composite(double L, int panels, int nodes_per_panel) {
  if (!(L > 0.0)) throw std::invalid_argument("gauss_legendre_composite: L must be > 0");
  if (panels < 1 || nodes_per_panel < 1) {
    throw std::invalid_argument("gauss_legendre_composite: bad panel counts");
  }
  std::vector<double> x, w;
  gauss_legendre_rule(nodes_per_panel, x, w);
  Grid g;
  g.cutoff_L = L;
  g.scheme = GridScheme::gauss_legendre_composite;
  const double width = 2.0 * L / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = -L + width * p;
    const double mid = a + 0.5 * width;
    for (int i = 0; i < nodes_per_panel; ++i) {
      g.nodes.push_back(mid + 0.5 * width * x[i]);
      g.weights.push_back(0.5 * width * w[i]);
    }
  }
  return g;
}

Grid fourier_collocation_grid(double L, int n) {
  if (!(L > 0.0)) throw std::invalid_argument("fourier_collocation_grid: L must be > 0");
  if (!is_pow2(n)) {
    throw std::invalid_argument("fourier_collocation_grid: n must be a power of two");
  }
  Grid g;
  g.cutoff_L = L;
  g.scheme = GridScheme::fourier_collocation;
  g.nodes.resize(n);
  g.weights.resize(n);
  const double h = 2.0 * L / n;
  for (int j = 0; j < n; ++j) {
    g.nodes[j] = -L + h * j;
    g.weights[j] = h;
  }
  return g;
}

void gauss_legendre_rule(int m, std::vector<double>& x, std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  const double pi = 3.14159265358979323846;
  // Symmetric rule: compute the positive half, mirror the rest.
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(pi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence up to degree m at z; p1 = P_m, p2 = P_{m-1}.
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = m * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[m - 1 - i] = z;
    const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[i] = wi;
    w[m - 1 - i] = wi;
  }
}

} // namespace anisospec
