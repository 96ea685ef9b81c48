#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "anisospec/discretize.hpp"
#include "anisospec/eigensolve.hpp"
#include "anisospec/grid.hpp"
#include "anisospec/kernels.hpp"
#include "anisospec/symbols.hpp"

using namespace anisospec;

namespace {

SymbolEval make_se(ThetaSpec theta, double alpha) {
  SymbolEval se;
  se.theta = std::move(theta);
  se.alpha = alpha;
  return se;
}

} // namespace

TEST_CASE("symbol values at a hand-checked point") {
  // alpha = 0.1, fourth-power radial weight, x = xi = 1 (tau = 4)
  const SymbolEval se = make_se(ThetaSpec::radial(2.0), 0.1);
  const SymbolValues v = eval_symbols(se, 1.0, 1.0);
  CHECK(v.g == doctest::Approx(1.1832159566199232).epsilon(1e-15));
  CHECK(v.b_l == doctest::Approx(0.75084374310535695).epsilon(1e-14));
  CHECK(v.a == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(v.r == doctest::Approx(0.050843743105356921).epsilon(1e-13));
  CHECK(v.r1 == doctest::Approx(0.045154254728516585).epsilon(1e-13));
  CHECK(v.r2 == doctest::Approx(0.0056894883768403414).epsilon(1e-13));
}

TEST_CASE("remainder split is exact: r = b_l - (1 - alpha a) = r1 + r2") {
  std::mt19937_64 rng(0x0123456789abcdefULL);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  std::uniform_real_distribution<double> uxi(-5.0, 5.0);
  std::uniform_real_distribution<double> ua(0.01, 0.5);
  const SymbolEval base = make_se(ThetaSpec::radial(2.0), 0.0);
  for (int i = 0; i < 10000; ++i) {
    SymbolEval se = base;
    se.alpha = ua(rng);
    const double x = ux(rng);
    const double xi = uxi(rng);
    const SymbolValues v = eval_symbols(se, x, xi);
    CHECK(std::abs(v.r - (v.b_l - (1.0 - se.alpha * v.a))) <= 1e-13);
    CHECK(std::abs(v.r - (v.r1 + v.r2)) <= 1e-15);
    CHECK(v.r2 >= 0.0);
    CHECK(v.g >= 1.0);
    CHECK(v.b_l > 0.0);
    CHECK(v.b_l <= 1.0);
  }
}

TEST_CASE("degenerate slices of the symbol") {
  const SymbolEval se = make_se(ThetaSpec::radial(1.0), 0.2);
  // x = 0: tau = 0, so g = 1 and the xi-free remainder vanishes
  const SymbolValues at_x0 = eval_symbols(se, 0.0, 2.0);
  CHECK(at_x0.g == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(at_x0.r1 == doctest::Approx(0.0));
  // xi = 0: b_l = 1/g and the tail remainder vanishes
  const SymbolValues at_xi0 = eval_symbols(se, 1.5, 0.0);
  CHECK(at_xi0.b_l == doctest::Approx(1.0 / at_xi0.g).epsilon(1e-15));
  CHECK(at_xi0.r2 == doctest::Approx(0.0));
}

TEST_CASE("g grows with alpha; r1 obeys the quadratic ceiling") {
  const ThetaSpec t = ThetaSpec::radial(2.0);
  const double g1 = eval_symbols(make_se(t, 0.1), 1.0, 0.0).g;
  const double g2 = eval_symbols(make_se(t, 0.2), 1.0, 0.0).g;
  CHECK(g2 > g1);

  // |r1| <= (3/8) t^2 with t = alpha*tau; spot check at t = 0.4 and random t
  const SymbolValues spot = eval_symbols(make_se(t, 0.1), 1.0, 0.0);
  CHECK(std::abs(spot.r1) <= 0.375 * 0.4 * 0.4);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ua(0.001, 0.8);
  for (int i = 0; i < 200; ++i) {
    const double alpha = ua(rng);
    const SymbolValues v = eval_symbols(make_se(t, alpha), 1.3, 0.7);
    const double tt = alpha * tau(t, 1.3);
    CHECK(v.r1 >= 0.0);
    CHECK(v.r1 <= 0.375 * tt * tt + 1e-15);
  }
}

TEST_CASE("cutoff profile: values, monotonicity, product bound") {
  CHECK(zeta(0.5) == doctest::Approx(0.5));
  CHECK(zeta(2.0) == doctest::Approx(2.0));
  CHECK(zeta(3.0) == doctest::Approx(2.0));
  CHECK(zeta(0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(zeta(-0.1), std::invalid_argument);
  // zeta(x1*x2) <= 2 zeta(x1) x2 for x1 >= 0, x2 >= 1
  CHECK(zeta(1.5 * 4.0) <= 2.0 * zeta(1.5) * 4.0);
  for (double x1 : {0.1, 0.9, 1.7, 5.0}) {
    for (double x2 : {1.0, 2.5, 30.0}) {
      CHECK(zeta(x1 * x2) <= 2.0 * zeta(x1) * x2 + 1e-15);
    }
  }
}

TEST_CASE("weighted remainder at a spot value") {
  // e1 = r1 / (<x>^gamma * zeta(alpha <x>^gamma)); at x=1, gamma=4:
  // <x>^4 = 4, zeta(0.4) = 0.4
  const SymbolEval se = make_se(ThetaSpec::radial(2.0), 0.1);
  CHECK(e1_value(se, 1.0) ==
        doctest::Approx(0.045154254728516585 / 1.6).epsilon(1e-13));
}

TEST_CASE("sup|e1|/alpha table over decreasing alpha") {
  std::vector<double> xs;
  for (int i = 1; i <= 20000; ++i) xs.push_back(10.0 * i / 20000.0);
  for (int i = 0; i < 2000; ++i) xs.push_back(std::pow(10.0, 1.0 + 5.0 * i / 1999.0));
  const std::vector<double> alphas = {1e-1, 1e-2, 1e-3};

  const BoundReport g2 = verify_e1_bound(make_se(ThetaSpec::radial(1.0), 0.0), alphas, xs);
  REQUIRE(g2.ratios.size() == 3);
  CHECK(std::abs(g2.ratios[0] - 0.581505) <= 2e-6);
  CHECK(std::abs(g2.ratios[1] - 1.066861) <= 2e-6);
  CHECK(std::abs(g2.ratios[2] - 1.339887) <= 2e-6);
  CHECK_FALSE(g2.growth_within_10pct);
  // analytic ceiling (3/8) Theta(1,1)^2 = 1.5
  CHECK(g2.max_ratio <= 1.5);

  const BoundReport g4 = verify_e1_bound(make_se(ThetaSpec::radial(2.0), 0.0), alphas, xs);
  CHECK(std::abs(g4.ratios[0] - 1.000000) <= 2e-6);
  CHECK(std::abs(g4.ratios[1] - 1.622139) <= 2e-6);
  CHECK(std::abs(g4.ratios[2] - 3.107708) <= 2e-6);
  CHECK_FALSE(g4.growth_within_10pct);
  CHECK(g4.max_ratio <= 6.0); // (3/8) * 16

  // a single alpha cannot show a trend
  const BoundReport single = verify_e1_bound(make_se(ThetaSpec::radial(1.0), 0.0), {0.1}, xs);
  CHECK(single.growth_within_10pct);

  CHECK_THROWS_AS(verify_e1_bound(make_se(ThetaSpec::radial(1.0), 0.0), {0.1, 0.1}, xs),
                  std::invalid_argument);
}

TEST_CASE("row-column bound dominates the spectral norm") {
  // the Cauchy-profile kernel has unit operator norm; the discrete bound
  // approaches it from below as the window grows
  const double m1 = schur_bound(KernelSpec::m(1.0), trapezoid_grid(60.0, 2048));
  CHECK(m1 >= 0.985);
  CHECK(m1 <= 1.0 + 1e-12);

  std::mt19937_64 rng(0xfeedbeefu);
  std::uniform_real_distribution<double> uL(5.0, 20.0);
  std::uniform_int_distribution<int> un(33, 128);
  std::uniform_real_distribution<double> up(0.05, 0.9);
  for (int inst = 0; inst < 20; ++inst) {
    const double L = uL(rng);
    const int n = un(rng);
    const double p = up(rng);
    const Grid g = trapezoid_grid(L, n);
    KernelSpec spec = KernelSpec::m(1.0);
    switch (inst % 4) {
      case 0: spec = KernelSpec::K(p, ThetaSpec::radial(1.0)); break;
      case 1: spec = KernelSpec::B(p, ThetaSpec::radial(2.0)); break;
      case 2: spec = KernelSpec::K_desym(p, ThetaSpec::abssum(1.0, 1.0)); break;
      case 3: spec = KernelSpec::S(p, 0.3); break;
    }
    const DiscreteOperator op = nystrom(spec, g);
    DiscreteOperator zero = op;
    zero.matrix.setZero();
    const double norm = operator_norm_diff(op, zero);
    const double bound = schur_bound(spec, g);
    CHECK(norm <= bound + 1e-12);
  }
}
