#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "anisospec/theta.hpp"

using namespace anisospec;

namespace {

std::vector<double> uniform_angles(int m) {
  std::vector<double> a(m);
  for (int i = 0; i < m; ++i) a[i] = -M_PI + 2.0 * M_PI * i / m;
  return a;
}

} // namespace

TEST_CASE("radial family evaluates the squared-radius power") {
  const ThetaSpec t1 = ThetaSpec::radial(1.0);
  CHECK(t1.gamma == doctest::Approx(2.0));
  CHECK(eval_theta(t1, 3.0, 4.0) == doctest::Approx(25.0).epsilon(1e-15));
  CHECK(eval_theta(t1, -3.0, 4.0) == doctest::Approx(25.0).epsilon(1e-15));

  const ThetaSpec t2 = ThetaSpec::radial(2.0);
  CHECK(t2.gamma == doctest::Approx(4.0));
  CHECK(eval_theta(t2, 1.0, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(eval_theta(t2, 0.0, 2.0) == doctest::Approx(16.0).epsilon(1e-15));
}

TEST_CASE("abs-sum family evaluates the p-norm power") {
  const ThetaSpec t = ThetaSpec::abssum(1.0, 1.0);
  CHECK(eval_theta(t, -2.0, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(eval_theta(t, 0.0, -5.0) == doctest::Approx(5.0).epsilon(1e-15));

  // p = 2 collapses onto the radial family.
  const ThetaSpec ta = ThetaSpec::abssum(2.0, 4.0);
  const ThetaSpec tr = ThetaSpec::radial(2.0);
  for (double x : {-1.7, 0.3, 2.2}) {
    for (double y : {-0.9, 0.0, 1.4}) {
      CHECK(eval_theta(ta, x, y) == doctest::Approx(eval_theta(tr, x, y)).epsilon(1e-14));
    }
  }
}

TEST_CASE("diagonal trace uses the closed piecewise form") {
  // radial sigma=1: tau(x) = 2 x^2
  CHECK(tau(ThetaSpec::radial(1.0), 3.0) == doctest::Approx(18.0).epsilon(1e-15));
  // radial sigma=2: tau(x) = 4 x^4
  CHECK(tau(ThetaSpec::radial(2.0), 2.0) == doctest::Approx(64.0).epsilon(1e-15));
  // abs_sum p=1, gamma=1: tau(x) = 2 |x|
  CHECK(tau(ThetaSpec::abssum(1.0, 1.0), -2.0) == doctest::Approx(4.0).epsilon(1e-15));
  // tau stays finite and exact at large arguments
  CHECK(tau(ThetaSpec::radial(1.0), 1e150) == doctest::Approx(2e300).epsilon(1e-14));
}

TEST_CASE("constant tables scale the radial profile") {
  const auto angles = uniform_angles(8);
  // value 2.0, gamma=4: tau(x) = 2^{4/2} * 2 * x^4 = 8 x^4
  const ThetaSpec c2 = ThetaSpec::custom_table(angles, std::vector<double>(8, 2.0), 4.0);
  CHECK(tau(c2, 1.0) == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(tau(c2, 2.0) == doctest::Approx(128.0).epsilon(1e-13));
  CHECK(eval_theta(c2, 1.0, 0.0) == doctest::Approx(2.0).epsilon(1e-13));
  // value 0.5, gamma=4: tau(x) = 2 x^4
  const ThetaSpec ch = ThetaSpec::custom_table(angles, std::vector<double>(8, 0.5), 4.0);
  CHECK(tau(ch, 2.0) == doctest::Approx(32.0).epsilon(1e-13));
  // the all-zero table is legal and gives the free operator weight
  const ThetaSpec cz = ThetaSpec::custom_table(angles, std::vector<double>(8, 0.0), 2.0);
  CHECK(tau(cz, 5.0) == doctest::Approx(0.0));
  CHECK(eval_theta(cz, 1.3, -0.4) == doctest::Approx(0.0));
}

TEST_CASE("table interpolation reproduces node values and symmetry") {
  const int m = 16;
  const auto angles = uniform_angles(m);
  std::vector<double> values(m);
  for (int i = 0; i < m; ++i) values[i] = 2.0 - std::cos(4.0 * angles[i]);
  const ThetaSpec t = ThetaSpec::custom_table(angles, values, 2.0);
  for (int i = 0; i < m; ++i) {
    CHECK(theta_on_circle(t, angles[i]) == doctest::Approx(values[i]).epsilon(1e-13));
  }
  // swap symmetry of the sampled table carries over to Theta
  for (double x : {0.7, -1.1, 2.5}) {
    for (double y : {0.2, -0.8}) {
      CHECK(eval_theta(t, x, y) == doctest::Approx(eval_theta(t, y, x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("homogeneity of degree gamma holds under scaling") {
  const ThetaSpec tr = ThetaSpec::radial(2.0);
  const ThetaSpec ta = ThetaSpec::abssum(1.0, 1.0);
  for (double s : {0.35, 2.0, 17.0}) {
    CHECK(eval_theta(tr, s * 1.2, s * -0.7) ==
          doctest::Approx(std::pow(s, 4.0) * eval_theta(tr, 1.2, -0.7)).epsilon(1e-13));
    CHECK(eval_theta(ta, s * 1.2, s * -0.7) ==
          doctest::Approx(s * eval_theta(ta, 1.2, -0.7)).epsilon(1e-13));
  }
}

TEST_CASE("circle trace matches the closed forms") {
  CHECK(theta_on_circle(ThetaSpec::radial(1.0), 0.3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(theta_on_circle(ThetaSpec::abssum(1.0, 1.0), M_PI / 4.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("validation passes the closed forms and a symmetric table") {
  for (const ThetaSpec& t : {ThetaSpec::radial(2.0), ThetaSpec::abssum(1.0, 1.0)}) {
    const ThetaValidationReport rep = validate(t, 256);
    CHECK(rep.pass);
    CHECK(rep.failures.empty());
    CHECK(rep.circle_min > 0.0);
    CHECK(rep.circle_max >= rep.circle_min);
  }
  const int m = 16;
  const auto angles = uniform_angles(m);
  std::vector<double> values(m);
  for (int i = 0; i < m; ++i) values[i] = 2.0 - std::cos(4.0 * angles[i]);
  const ThetaValidationReport rep = validate(ThetaSpec::custom_table(angles, values, 2.0), 256);
  CHECK(rep.pass);
  // the scan does not hit the node angles exactly; the interpolant stays
  // within the node range [1, 3]
  CHECK(rep.circle_min >= 1.0 - 1e-9);
  CHECK(rep.circle_min <= 1.05);
  CHECK(rep.circle_max <= 3.0 + 1e-9);
  CHECK(rep.circle_max >= 2.9);
}

TEST_CASE("validation reports a swap-asymmetric table as a defect") {
  const int m = 8;
  const auto angles = uniform_angles(m);
  std::vector<double> values(m);
  for (int i = 0; i < m; ++i) values[i] = 1.0 + 0.25 * i; // monotone in angle: asymmetric
  const ThetaValidationReport rep = validate(ThetaSpec::custom_table(angles, values, 2.0), 256);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.failures.empty());
  CHECK(rep.max_symmetry_defect > 1e-3);
}

TEST_CASE("factories reject malformed parameters") {
  CHECK_THROWS_AS(ThetaSpec::radial(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::radial(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::abssum(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::abssum(1.0, -2.0), std::invalid_argument);
  const auto angles = uniform_angles(4);
  CHECK_THROWS_AS(ThetaSpec::custom_table(angles, {1.0, 2.0}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::custom_table({0.0, 0.0, 1.0, 2.0}, {1, 1, 1, 1}, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::custom_table({-4.0, 0.0, 1.0, 2.0}, {1, 1, 1, 1}, 2.0),
                  std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(ThetaSpec::custom_table(angles, {1.0, nan, 1.0, 1.0}, 2.0),
                  std::invalid_argument);
}

TEST_CASE("non-finite evaluation points are rejected") {
  const ThetaSpec t = ThetaSpec::radial(1.0);
  CHECK_THROWS_AS(eval_theta(t, std::nan(""), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(eval_theta(t, 0.0, INFINITY), std::invalid_argument);
}
