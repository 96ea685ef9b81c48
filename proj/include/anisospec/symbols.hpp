#pragma once

#include <functional>
#include <vector>

#include "anisospec/grid.hpp"
#include "anisospec/kernels.hpp"
#include "anisospec/theta.hpp"

namespace anisospec {

// Evaluation context for the rescaled symbol family at a fixed anisotropy
// weight. `vark` is the exponent used by the weighted remainder estimate;
// it must lie in (0, 1].
struct SymbolEval {
  ThetaSpec theta;
  double alpha = 0.0;
  double vark = 0.5;
};

// All symbol quantities at one point (x, xi):
//   g   = sqrt(1 + alpha*tau(x))            (>= 1)
//   b_l = exp(-alpha*|xi|*g) / g             (in (0, 1])
//   a   = |xi| + tau(x)/2
//   r   = b_l - (1 - alpha*a), split as r = r1 + r2 with
//   r1  = 1/g + alpha*tau(x)/2 - 1           (xi-independent part)
//   r2  = alpha*|xi| + expm1(-alpha*|xi|*g)/g (>= 0)
// Both remainder parts are evaluated in cancellation-free closed forms.
struct SymbolValues {
  double g = 0.0;
  double b_l = 0.0;
  double a = 0.0;
  double r = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

SymbolValues eval_symbols(const SymbolEval& se, double x, double xi);

// Cutoff profile: zeta(x) = min(x, 2). Equals x on [0,1], equals 2 on
// [2,inf), is nondecreasing, and satisfies zeta(x1*x2) <= 2*zeta(x1)*x2
// for x1 >= 0, x2 >= 1. Negative input rejected.
double zeta(double x);

// Weighted first remainder e1(x) = r1(x) / (<x>^gamma * zeta(alpha*<x>^gamma))
// with <x> = sqrt(1 + x^2).
double e1_value(const SymbolEval& se, double x);

// Result of checking sup_x |e1| <= C*alpha over a decreasing alpha list.
struct BoundReport {
  std::vector<double> alphas;
  std::vector<double> sups;    // sup over the sample points, per alpha
  std::vector<double> ratios;  // sups[i] / alphas[i]
  double max_ratio = 0.0;
  // True when the ratio sequence shows no growth trend above 10% per
  // decade of alpha between consecutive entries.
  bool growth_within_10pct = true;
};

// Evaluates e1 on the sample points `xs` for each alpha (overriding
// se.alpha) and reports the sup/alpha ratios. Report-only: no throw on a
// violated trend, the flag records it.
BoundReport verify_e1_bound(const SymbolEval& se, const std::vector<double>& alphas,
                            const std::vector<double>& xs);

// Schur test on the quadrature-discretized kernel: returns sqrt(M1*M2)
// where M1 = max_i sum_j |k(x_i,x_j)| w_j and M2 is the column counterpart.
// This dominates the spectral norm of the weighted Nystrom matrix. The
// callable overload serves composite kernels (e.g. differences of two
// families); `symmetric` skips the column pass when rows suffice.
double schur_bound(const std::function<double(double, double)>& kernel, bool symmetric,
                   const Grid& grid);
double schur_bound(const KernelSpec& spec, const Grid& grid);

} // namespace anisospec
