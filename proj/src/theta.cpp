#include "anisospec/theta.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace anisospec {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string("non-finite input: ") + what);
  }
}

// Periodic Fritsch-Carlson slopes for a monotone cubic through
// (angles[i], values[i]) with period 2*pi. A zero slope is forced at local
// extrema (secant sign change), which is what prevents overshoot and keeps
// the interpolant inside the local data range -- hence positive for a
// positive table.
std::vector<double> pchip_periodic_slopes(const std::vector<double>& a,
                                          const std::vector<double>& v) {
  const size_t m = a.size();
  std::vector<double> slopes(m, 0.0);
  if (m < 2) return slopes;
  std::vector<double> h(m), d(m);
  for (size_t i = 0; i < m; ++i) {
    const double a1 = (i + 1 < m) ? a[i + 1] : a[0] + two_pi;
    const double v1 = (i + 1 < m) ? v[i + 1] : v[0];
    h[i] = a1 - a[i];
    d[i] = (v1 - v[i]) / h[i];
  }
  for (size_t i = 0; i < m; ++i) {
    const size_t prev = (i == 0) ? m - 1 : i - 1;
    if (d[prev] * d[i] <= 0.0) {
      slopes[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[prev];
      const double w2 = h[i] + 2.0 * h[prev];
      slopes[i] = (w1 + w2) / (w1 / d[prev] + w2 / d[i]);
    }
  }
  return slopes;
}

// Cubic Hermite evaluation of the periodic table at angle phi in [-pi, pi].
double pchip_eval(const ThetaSpec& s, double phi) {
  const size_t m = s.angles.size();
  if (m == 1) return s.values[0];
  if (phi < s.angles[0]) phi += two_pi;
  // interval index: last i with angles[i] <= phi (periodic last interval
  // [angles[m-1], angles[0] + 2*pi] included).
  size_t i =
      static_cast<size_t>(std::upper_bound(s.angles.begin(), s.angles.end(), phi) -
                          s.angles.begin());
  i = (i == 0) ? m - 1 : i - 1;
  const double a0 = s.angles[i];
  const double a1 = (i + 1 < m) ? s.angles[i + 1] : s.angles[0] + two_pi;
  const double v0 = s.values[i];
  const double v1 = (i + 1 < m) ? s.values[i + 1] : s.values[0];
  const double h = a1 - a0;
  const double t = (phi - a0) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * v0 + h10 * h * s.pchip_slopes[i] + h01 * v1 +
         h11 * h * s.pchip_slopes[(i + 1) % m];
}

} // namespace

ThetaSpec ThetaSpec::radial(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("radial_power: sigma must be positive");
  }
  ThetaSpec s;
  s.kind = ThetaKind::radial_power;
  s.sigma = sigma;
  s.gamma = 2.0 * sigma;
  return s;
}

ThetaSpec ThetaSpec::abssum(double p, double gamma) {
  if (!(p > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("abs_sum: p and gamma must be positive");
  }
  ThetaSpec s;
  s.kind = ThetaKind::abs_sum;
  s.p = p;
  s.gamma = gamma;
  return s;
}

ThetaSpec ThetaSpec::custom_table(std::vector<double> angles,
                                  std::vector<double> values, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("custom: gamma must be positive");
  if (angles.empty() || angles.size() != values.size()) {
    throw std::invalid_argument("custom: angles/values must be same nonzero size");
  }
  for (size_t i = 0; i < angles.size(); ++i) {
    require_finite(angles[i], "angle");
    require_finite(values[i], "value");
    if (angles[i] < -3.1415926535897932 || angles[i] >= 3.1415926535897932) {
      throw std::invalid_argument("custom: angles must lie in [-pi, pi)");
    }
    if (i > 0 && angles[i] <= angles[i - 1]) {
      throw std::invalid_argument("custom: angles must be strictly increasing");
    }
  }
  ThetaSpec s;
  s.kind = ThetaKind::custom;
  s.gamma = gamma;
  s.angles = std::move(angles);
  s.values = std::move(values);
  s.pchip_slopes = pchip_periodic_slopes(s.angles, s.values);
  return s;
}

double theta_on_circle(const ThetaSpec& spec, double angle) {
  switch (spec.kind) {
    case ThetaKind::radial_power:
      return 1.0; // (cos^2 + sin^2)^sigma
    case ThetaKind::abs_sum: {
      const double c = std::abs(std::cos(angle)), s = std::abs(std::sin(angle));
      return std::pow(std::pow(c, spec.p) + std::pow(s, spec.p),
                      spec.gamma / spec.p);
    }
    case ThetaKind::custom:
      return pchip_eval(spec, angle);
  }
  return 0.0;
}

double eval_theta(const ThetaSpec& spec, double x, double y) {
  require_finite(x, "x");
  require_finite(y, "y");
  switch (spec.kind) {
    case ThetaKind::radial_power:
      return std::pow(x * x + y * y, spec.sigma);
    case ThetaKind::abs_sum:
      return std::pow(std::pow(std::abs(x), spec.p) + std::pow(std::abs(y), spec.p),
                      spec.gamma / spec.p);
    case ThetaKind::custom: {
      const double r = std::hypot(x, y);
      if (r == 0.0) return 0.0;
      return std::pow(r, spec.gamma) * pchip_eval(spec, std::atan2(y, x));
    }
  }
  return 0.0;
}

double tau(const ThetaSpec& spec, double x) {
  require_finite(x, "x");
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  switch (spec.kind) {
    case ThetaKind::radial_power:
      // Theta(+-1,+-1) = 2^sigma on both diagonals.
      return std::pow(2.0, spec.sigma) * std::pow(ax, spec.gamma);
    case ThetaKind::abs_sum:
      // Theta(+-1,+-1) = 2^(gamma/p).
      return std::pow(2.0, spec.gamma / spec.p) * std::pow(ax, spec.gamma);
    case ThetaKind::custom: {
      // Theta(1,1) on the ray angle pi/4, Theta(-1,-1) on -3*pi/4;
      // Theta(+-1,+-1) = 2^(gamma/2) * tab(angle).
      const double angle = (x > 0.0) ? 0.25 * 3.1415926535897932
                                     : -0.75 * 3.1415926535897932;
      return std::pow(2.0, 0.5 * spec.gamma) * pchip_eval(spec, angle) *
             std::pow(ax, spec.gamma);
    }
  }
  return 0.0;
}

ThetaValidationReport validate(const ThetaSpec& spec, int samples) {
  ThetaValidationReport rep;
  const int ns = std::max(samples, 64);
  const bool closed_form = spec.kind != ThetaKind::custom;
  const double homog_tol = closed_form ? 1e-10 : 1e-6;
  const double sym_tol = closed_form ? 1e-12 : 1e-8;

  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);

  // Symmetry: Theta(x,y) vs Theta(y,x), relative to the magnitude.
  for (int i = 0; i < ns; ++i) {
    const double x = coord(rng), y = coord(rng);
    const double a = eval_theta(spec, x, y), b = eval_theta(spec, y, x);
    const double ref = std::max({std::abs(a), std::abs(b), 1e-300});
    rep.max_symmetry_defect = std::max(rep.max_symmetry_defect, std::abs(a - b) / ref);
  }
  if (rep.max_symmetry_defect > sym_tol) {
    rep.failures.push_back("symmetry defect " + std::to_string(rep.max_symmetry_defect));
  }

  // Homogeneity: Theta(t x, t y) vs t^gamma Theta(x, y).
  for (int i = 0; i < ns; ++i) {
    const double x = coord(rng), y = coord(rng), t = scale(rng);
    const double lhs = eval_theta(spec, t * x, t * y);
    const double rhs = std::pow(t, spec.gamma) * eval_theta(spec, x, y);
    const double ref = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    rep.max_homogeneity_defect =
        std::max(rep.max_homogeneity_defect, std::abs(lhs - rhs) / ref);
  }
  if (rep.max_homogeneity_defect > homog_tol) {
    rep.failures.push_back("homogeneity defect " +
                           std::to_string(rep.max_homogeneity_defect));
  }

  // Circle bounds 0 < c <= Theta <= C on x^2 + y^2 = 1.
  rep.circle_min = std::numeric_limits<double>::infinity();
  rep.circle_max = 0.0;
  for (int i = 0; i < ns; ++i) {
    const double phi = -3.1415926535897932 + two_pi * (i + 0.5) / ns;
    const double v = eval_theta(spec, std::cos(phi), std::sin(phi));
    rep.circle_min = std::min(rep.circle_min, v);
    rep.circle_max = std::max(rep.circle_max, v);
  }
  if (!(rep.circle_min > 0.0)) {
    rep.failures.push_back("circle lower bound not positive: c = " +
                           std::to_string(rep.circle_min));
  }

  // Lipschitz constant near t = +-1 from difference quotients of
  // t |-> Theta(t, 1) and t |-> Theta(t, -1).
  for (const double base : {1.0, -1.0}) {
    const double ref = eval_theta(spec, base, 1.0);
    const double refm = eval_theta(spec, base, -1.0);
    for (const double d : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
      for (const double sgn : {-1.0, 1.0}) {
        const double t = base + sgn * d;
        rep.lipschitz_estimate =
            std::max({rep.lipschitz_estimate,
                      std::abs(eval_theta(spec, t, 1.0) - ref) / d,
                      std::abs(eval_theta(spec, t, -1.0) - refm) / d});
      }
    }
  }

  rep.pass = rep.failures.empty();
  return rep;
}

} // namespace anisospec
