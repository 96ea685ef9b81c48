#pragma once

#include <cmath>
#include <stdexcept>

#include "anisospec/theta.hpp"

namespace anisospec {

// Kernel families on the line (all strictly positive):
//
//   K_beta          (1/pi) / (1 + (x-y)^2 + beta^2 * Theta(x,y))
//   B_alpha         (alpha/pi) / (alpha^2 + (x-y)^2 + alpha^3 * Theta(x,y))
//   K_beta_desym    (1/pi) / (1 + (x-y)^2 + beta^2 * tau(x))      [not symmetric]
//   B_alpha_desym   (alpha/pi) / (alpha^2 + (x-y)^2 + alpha^3 * tau(x))
//   S_alpha_h       (alpha/pi) / (alpha^2 + (x-y)^2 + h)
//   m_t             (t/pi) / (t^2 + (x-y)^2)
//
// The unitary dilation x -> x/alpha turns K_beta into alpha * B_alpha with
// alpha = beta^(2/(gamma+1)), so the two families share their spectra; the
// de-symmetrized variants replace Theta(x,y) by its diagonal trace tau(x)
// and lose symmetry whenever tau is non-constant.
enum class KernelFamily { K_beta, B_alpha, K_beta_desym, B_alpha_desym, S_alpha_h, m_t };

struct KernelSpec {
  KernelFamily family = KernelFamily::m_t;
  ThetaSpec theta;          // used by the K/B families only
  bool has_theta = false;
  double beta_or_alpha = 1; // beta (K), alpha (B/S), t (m_t)
  double h = 0.0;           // shift of S_alpha_h only

  static KernelSpec K(double beta, ThetaSpec th) {
    if (!(beta >= 0.0)) throw std::invalid_argument("K_beta: beta must be >= 0");
    return KernelSpec{KernelFamily::K_beta, std::move(th), true, beta, 0.0};
  }
  static KernelSpec B(double alpha, ThetaSpec th) {
    if (!(alpha > 0.0)) throw std::invalid_argument("B_alpha: alpha must be > 0");
    return KernelSpec{KernelFamily::B_alpha, std::move(th), true, alpha, 0.0};
  }
  static KernelSpec K_desym(double beta, ThetaSpec th) {
    if (!(beta >= 0.0)) throw std::invalid_argument("K_beta_desym: beta must be >= 0");
    return KernelSpec{KernelFamily::K_beta_desym, std::move(th), true, beta, 0.0};
  }
  static KernelSpec B_desym(double alpha, ThetaSpec th) {
    if (!(alpha > 0.0)) throw std::invalid_argument("B_alpha_desym: alpha must be > 0");
    return KernelSpec{KernelFamily::B_alpha_desym, std::move(th), true, alpha, 0.0};
  }
  static KernelSpec S(double alpha, double h) {
    if (!(alpha > 0.0) || !(h >= 0.0)) {
      throw std::invalid_argument("S_alpha_h: need alpha > 0, h >= 0");
    }
    return KernelSpec{KernelFamily::S_alpha_h, ThetaSpec{}, false, alpha, h};
  }
  static KernelSpec m(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("m_t: t must be > 0");
    return KernelSpec{KernelFamily::m_t, ThetaSpec{}, false, t, 0.0};
  }
};

inline bool kernel_is_symmetric(KernelFamily f) {
  return f != KernelFamily::K_beta_desym && f != KernelFamily::B_alpha_desym;
}

// Kernel value at (x, y). The denominator is accumulated as a single fused
// expression, so no catastrophic cancellation occurs for large arguments.
inline double eval_kernel(const KernelSpec& spec, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::invalid_argument("eval_kernel: non-finite input");
  }
  constexpr double inv_pi = 0.31830988618379067154;
  const double d = x - y;
  const double p = spec.beta_or_alpha;
  switch (spec.family) {
    case KernelFamily::K_beta:
      // p = 0 degenerates to the Cauchy kernel (the norm-1 limit family).
      return inv_pi / (1.0 + d * d + p * p * eval_theta(spec.theta, x, y));
    case KernelFamily::B_alpha:
      return p * inv_pi / (p * p + d * d + p * p * p * eval_theta(spec.theta, x, y));
    case KernelFamily::K_beta_desym:
      return inv_pi / (1.0 + d * d + p * p * tau(spec.theta, x));
    case KernelFamily::B_alpha_desym:
      return p * inv_pi / (p * p + d * d + p * p * p * tau(spec.theta, x));
    case KernelFamily::S_alpha_h:
      return p * inv_pi / (p * p + d * d + spec.h);
    case KernelFamily::m_t:
      return p * inv_pi / (p * p + d * d);
  }
  return 0.0;
}

// alpha = beta^(2/(gamma+1)); the dilation exponent linking the K and B
// families. The inverse map is beta = alpha^((gamma+1)/2).
inline double rescale_beta_to_alpha(double beta, double gamma) {
  if (!(beta > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("rescale_beta_to_alpha: beta, gamma must be > 0");
  }
  return std::pow(beta, 2.0 / (gamma + 1.0));
}

// Fourier transform of m_t: (1/sqrt(2*pi)) * exp(-t|xi|).
inline double fourier_m_hat(double t, double xi) {
  if (!(t > 0.0)) throw std::invalid_argument("fourier_m_hat: t must be > 0");
  constexpr double inv_sqrt_two_pi = 0.39894228040143267794;
  return inv_sqrt_two_pi * std::exp(-t * std::abs(xi));
}

} // namespace anisospec
