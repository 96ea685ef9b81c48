#pragma once

#include <Eigen/Dense>
#include <string>

#include "anisospec/grid.hpp"
#include "anisospec/kernels.hpp"
#include "anisospec/theta.hpp"

namespace anisospec {

struct DiscreteOperator {
  Eigen::MatrixXd matrix;
  Grid grid;
  bool symmetric = false;
  std::string provenance; // human-readable build record (kernel/operator, L, n)
};

// Nystrom discretization in the similarity-transformed form
// M_ij = sqrt(w_i) * k(x_i, x_j) * sqrt(w_j), which shares its spectrum and
// singular values with the plain quadrature matrix k(x_i, x_j) * w_j while
// being symmetric whenever the kernel is. Symmetric families are averaged
// with their transpose so the stored matrix is exactly symmetric;
// de-symmetrized families are stored as general matrices. Assembly is
// column-parallel (OpenMP); nystrom_serial is the plain-loop reference with
// identical arithmetic, kept for equivalence testing.
DiscreteOperator nystrom(const KernelSpec& spec, const Grid& grid);
DiscreteOperator nystrom_serial(const KernelSpec& spec, const Grid& grid);

// Collocation matrix of the operator u |-> |D|u + tau(x)/2 u on the periodic
// grid of [-L, L]: A = F* diag(|xi_k|) F + diag(tau(x_j)/2) with frequencies
// xi_k = pi*k/L, k = -n/2 .. n/2-1. The convolution part is written down in
// closed form: the inverse transform of |xi_k| gives the circulant
//   c_0 = pi*n/(4L),  c_d = 0 (even d != 0),
//   c_d = -pi / (n*L*sin^2(pi*d/n)) (odd d),
// which is exact, symmetric, and avoids an FFT round trip. With tau = 0 the
// eigenvalues are exactly {|pi*k/L|}.
DiscreteOperator model_operator(const ThetaSpec& theta, const Grid& grid);

// Same, but with an arbitrary diagonal term v(x) in place of tau(x)/2; the
// model operator above calls this with v = tau/2.
DiscreteOperator model_operator_with_potential(const std::vector<double>& v,
                                               const Grid& grid,
                                               std::string provenance);

// Largest singular value of (a - b), by power iteration on (a-b)^T (a-b) to
// relative tolerance 1e-10. Requires both operators on the same grid.
double operator_norm_diff(const DiscreteOperator& a, const DiscreteOperator& b);

// Maps alpha to a truncation cutoff and node count.
//
// Cutoff rule ("auto", L_fixed = 0): pick L with tau(L)*alpha^3 >= 1e4*alpha^2,
// i.e. L = (1e4 / (alpha * tau(1)))^(1/gamma), so the anisotropy term at the
// boundary exceeds the kernel peak scale by 1e4; capped by L_cap. The
// eigenfunction tail carries mass ~ R^-gamma, so for small gamma this rule
// explodes and a fixed cutoff (validated by an L-refinement check) is used
// instead.
//
// Node count: h = alpha/ppw_div resolves the kernel width alpha;
// n = ceil(2L/h), rounded up to a power of two when n_pow2 is set.
// Sweeps refine to 2n when 2n <= refine_cap (memory bound) and flag records
// whose top eigenvalue moves by more than the caller's flag tolerance.
struct GridPolicy {
  double L_fixed = 0.0;    // > 0: fixed cutoff; 0: auto rule
  double L_cap = 1e9;      // cap for the auto rule
  bool n_pow2 = true;      // round node count up to a power of two
  double ppw_div = 3.0;    // h = alpha / ppw_div
  int refine_cap = 15000;  // refine to 2n only when 2n <= refine_cap
  int n_min = 32;
  int n_fixed = 0;         // > 0: fixed node count, overriding the rule

  struct Resolved {
    double L;
    int n;
  };
  Resolved resolve(double alpha, const ThetaSpec& theta) const;
};

} // namespace anisospec
