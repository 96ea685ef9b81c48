#include "anisospec/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace anisospec {

SymbolValues eval_symbols(const SymbolEval& se, double x, double xi) {
  if (!(se.alpha > 0.0)) throw std::invalid_argument("eval_symbols: alpha must be positive");
  const double tv = tau(se.theta, x);
  const double t = se.alpha * tv;
  SymbolValues s;
  s.g = std::sqrt(1.0 + t);
  const double axg = se.alpha * std::abs(xi) * s.g;
  s.b_l = std::exp(-axg) / s.g;
  s.a = std::abs(xi) + 0.5 * tv;
  // r1 = 1/g + t/2 - 1, rewritten without cancellation:
  //   = t^2 (g + 2) / (2 g (g + 1)^2)
  s.r1 = t * t * (s.g + 2.0) / (2.0 * s.g * (s.g + 1.0) * (s.g + 1.0));
  // r2 = (alpha*|xi|*g - (1 - exp(-alpha*|xi|*g))) / g
  s.r2 = se.alpha * std::abs(xi) + std::expm1(-axg) / s.g;
  s.r = s.r1 + s.r2;
  return s;
}

double zeta(double x) {
  if (x < 0.0) throw std::invalid_argument("zeta: negative input");
  return std::min(x, 2.0);
}

double e1_value(const SymbolEval& se, double x) {
  const SymbolValues s = eval_symbols(se, x, 0.0);
  const double bx = std::sqrt(1.0 + x * x); // <x>
  const double w = std::pow(bx, se.theta.gamma);
  return s.r1 / (w * zeta(se.alpha * w));
}

BoundReport verify_e1_bound(const SymbolEval& se, const std::vector<double>& alphas,
                            const std::vector<double>& xs) {
  if (alphas.empty()) throw std::invalid_argument("verify_e1_bound: empty alpha list");
  for (size_t i = 0; i + 1 < alphas.size(); ++i) {
    if (!(alphas[i] > alphas[i + 1])) {
      throw std::invalid_argument("verify_e1_bound: alphas must be strictly decreasing");
    }
  }
  BoundReport rep;
  rep.alphas = alphas;
  for (double a : alphas) {
    SymbolEval local = se;
    local.alpha = a;
    double sup = 0.0;
    const int m = static_cast<int>(xs.size());
#pragma omp parallel for schedule(static) reduction(max : sup)
    for (int i = 0; i < m; ++i) {
      sup = std::max(sup, std::abs(e1_value(local, xs[i])));
    }
    rep.sups.push_back(sup);
    rep.ratios.push_back(sup / a);
  }
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  for (size_t i = 0; i + 1 < rep.ratios.size(); ++i) {
    if (rep.ratios[i] <= 0.0) continue; // identically zero remainder
    const double decades = std::log10(alphas[i] / alphas[i + 1]);
    const double factor = std::pow(rep.ratios[i + 1] / rep.ratios[i], 1.0 / decades);
    if (factor > 1.10) rep.growth_within_10pct = false;
  }
  return rep;
}

double schur_bound(const std::function<double(double, double)>& kernel, bool symmetric,
                   const Grid& grid) {
  if (!grid.is_quadrature()) {
    throw std::invalid_argument("schur_bound: requires a quadrature grid");
  }
  const int n = grid.n();
  const std::vector<double>& x = grid.nodes;
  const std::vector<double>& w = grid.weights;
  double m1 = 0.0;
  std::vector<double> col(n, 0.0);
#pragma omp parallel
  {
    std::vector<double> local_col(n, 0.0);
#pragma omp for schedule(static) reduction(max : m1)
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        const double k = std::abs(kernel(x[i], x[j]));
        row += k * w[j];
        local_col[j] += k * w[i];
      }
      m1 = std::max(m1, row);
    }
#pragma omp critical
    for (int j = 0; j < n; ++j) col[j] += local_col[j];
  }
  const double m2 = symmetric ? m1 : *std::max_element(col.begin(), col.end());
  return std::sqrt(m1 * m2);
}

double schur_bound(const KernelSpec& spec, const Grid& grid) {
  return schur_bound(
      [&spec](double xx, double yy) { return eval_kernel(spec, xx, yy); },
      kernel_is_symmetric(spec.family), grid);
}

} // namespace anisospec
