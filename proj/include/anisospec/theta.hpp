#pragma once

#include <string>
#include <vector>

namespace anisospec {

// Homogeneous symmetric weight families Theta(x,y) of degree gamma:
//
//   radial_power:  Theta = (x^2 + y^2)^sigma,            gamma = 2*sigma
//   abs_sum:       Theta = (|x|^p + |y|^p)^(gamma/p)
//   custom:        Theta = (x^2 + y^2)^(gamma/2) * tab(atan2(y,x)),
//                  tab given by a table on the unit circle, interpolated
//                  by a periodic monotone cubic (Fritsch-Carlson) in the
//                  angle so positivity and the circle bounds survive
//                  interpolation.
//
// The diagonal trace tau(x) = Theta(x,x) is evaluated through the closed
// piecewise form |x|^gamma * Theta(+-1,+-1) rather than through
// eval_theta, which keeps it exact for large |x|.
enum class ThetaKind { radial_power, abs_sum, custom };

struct ThetaSpec {
  ThetaKind kind = ThetaKind::radial_power;
  double gamma = 2.0; // homogeneity degree, > 0
  double sigma = 1.0; // radial_power parameter (gamma = 2*sigma)
  double p = 1.0;     // abs_sum parameter

  // custom kind: strictly increasing angles in [-pi, pi) with finite table
  // values (nonnegative for a kernel weight; an all-zero table gives the
  // free operator). pchip_slopes holds the periodic monotone-cubic node
  // slopes and is derived at construction / deserialization time.
  std::vector<double> angles;
  std::vector<double> values;
  std::vector<double> pchip_slopes;

  // constant of the one-sided Lipschitz condition on the circle,
  // |Theta(t,1) - Theta(1,1)| <= C|t-1| near t = +-1; estimated by
  // validate() (relevant for custom tables, closed forms get it too).
  double lipschitz_const = 0.0;

  static ThetaSpec radial(double sigma);
  static ThetaSpec abssum(double p, double gamma);
  static ThetaSpec custom_table(std::vector<double> angles,
                                std::vector<double> values, double gamma);
};

// Theta(x,y). Non-finite inputs are rejected (std::invalid_argument).
double eval_theta(const ThetaSpec& spec, double x, double y);

// tau(x) = Theta(x,x) via the closed piecewise form; even iff
// Theta(1,1) = Theta(-1,-1).
double tau(const ThetaSpec& spec, double x);

// Circle trace value tab(angle) for any kind (radial/abs_sum evaluate the
// closed form on the unit circle); used by validation and the policy rule.
double theta_on_circle(const ThetaSpec& spec, double angle);

struct ThetaValidationReport {
  bool pass = false;
  double max_symmetry_defect = 0.0;    // relative, over sampled pairs
  double max_homogeneity_defect = 0.0; // relative, over sampled (t, x, y)
  double circle_min = 0.0;             // c in  c <= Theta <= C  on the circle
  double circle_max = 0.0;             // C
  double lipschitz_estimate = 0.0;     // max difference quotient near t = +-1
  std::vector<std::string> failures;   // human-readable defect descriptions
};

// Samples symmetry, homogeneity, circle bounds and the Lipschitz constant.
// Structured report, never throws on mathematical defects; sample counts
// below 64 are clamped up to 64. Homogeneity tolerance is 1e-10 for the
// closed forms and 1e-6 for tabulated ones (interpolation error dominates).
ThetaValidationReport validate(const ThetaSpec& spec, int samples);

} // namespace anisospec
