#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "anisospec/discretize.hpp"
#include "anisospec/eigensolve.hpp"
#include "anisospec/grid.hpp"
#include "anisospec/theta.hpp"

namespace anisospec {

// One point of a beta-sweep: the top eigenpair of the rescaled operator on
// its resolved grid, together with refinement and certification diagnostics.
struct SweepRecord {
  double beta = 0.0;
  double alpha = 0.0;  // beta^{2/(gamma+1)}
  double gamma = 0.0;
  double mu = 0.0;       // top eigenvalue
  double deficit = 0.0;  // 1 - mu
  Eigen::VectorXd psi;   // unit eigenvector on `grid` (sign-normalized)
  Grid grid;
  double gap = 0.0;         // simplicity gap |mu - mu_2|
  double perron_min = 0.0;  // smallest eigenvector entry after sign fix
  // |mu(2n) - mu(n)| when the doubled grid was computed; negative when the
  // refinement was skipped (2n above the refinement cap).
  double flag_shift = -1.0;
  bool refined = false;       // stored values come from the doubled grid
  bool converged = true;      // eigensolver convergence on the stored grid
  bool grid_flagged = false;  // refinement shift exceeded the flag tolerance
};

// Runs one eigensolve per beta (strictly decreasing list in (0, 1]) on the
// grid resolved by `policy`. When the doubled grid fits under the policy's
// refinement cap, the record keeps the finer grid's values and stores the
// eigenvalue shift in flag_shift; a shift above flag_tol marks a
// non-converged grid (flagged, never silently dropped).
std::vector<SweepRecord> sweep(const ThetaSpec& theta, const std::vector<double>& betas,
                               const GridPolicy& policy, double eig_tol = 1e-10,
                               double flag_tol = 1e-7);

// Least-squares power-law fit of deficit vs beta in log-log coordinates.
struct FitResult {
  double exponent = 0.0;   // fitted slope
  double constant = 0.0;   // fitted prefactor exp(intercept)
  double r_squared = 0.0;  // in [0, 1]
  double window_beta_min = 0.0;
  double window_beta_max = 0.0;
  std::vector<double> rescaled;  // deficit/alpha for every input record
};

// Index range [first, first+count) of the geometrically-smallest half of a
// decreasing beta list of length m: the trailing (m+1)/2 entries.
std::pair<std::size_t, std::size_t> smallest_half_window(std::size_t m);

// Fits over an explicit window of the record list.
FitResult fit_power_law(const std::vector<SweepRecord>& records, std::size_t first,
                        std::size_t count);
// Default window: the geometrically-smallest half of the list (the
// asymptotic regime; large-beta records carry higher-order contamination).
FitResult fit_power_law(const std::vector<SweepRecord>& records);

// Fitted-exponent Richardson extrapolation from three cutoffs: assumes
// f(L) = f_inf + C*L^{-q}, solves for q by bisection, returns f_inf and q.
struct RichardsonFit {
  double value = 0.0;
  double q = 0.0;
};
RichardsonFit richardson_extrapolate(const std::array<double, 3>& Ls,
                                     const std::array<double, 3>& vals);

// Model-operator eigenvalue reference lambda_j with its own convergence
// certificate: two fitted Richardson extrapolations over {20,30,45} and
// {30,45,67.5}; accepted when they agree to 1e-6. `value` is the finer one.
struct LambdaRef {
  double value = 0.0;
  double pair_diff = 0.0;
  bool accepted = false;
  double q = 0.0;  // fitted decay exponent of the finer triple
};
std::vector<LambdaRef> lambda_references(const ThetaSpec& theta, int n, int j_max);
LambdaRef lambda1_reference(const ThetaSpec& theta, int n = 2048);

// L2 distance between two discrete eigenfunctions living on (possibly
// different) quadrature grids: both are mapped back to function values
// (u = v / sqrt(w)), linearly resampled onto a uniform grid on the common
// interval, sign-normalized, renormalized, and subtracted. Throws when the
// common interval captures less than half of either function's mass.
double function_distance(const Eigen::VectorXd& va, const Grid& ga,
                         const Eigen::VectorXd& vb, const Grid& gb);
double eigenfunction_distance(const SweepRecord& record, const Eigen::VectorXd& phi1,
                              const Grid& phi1_grid);

// Discrete weighted norm ||g_alpha^vark psi|| with g = sqrt(1 + alpha*tau).
double weighted_norm(const SweepRecord& record, const ThetaSpec& theta, double vark);

// Localization diagnostics for one sweep record.
struct LocalizationRow {
  double R = 0.0;
  bool fourier_applicable = false;  // alpha*R <= 1
  double fourier_mass = 0.0;        // ||psi_hat chi_R||^2 (normalized)
  double fourier_bound = 0.0;       // 1 - 4*lambda1/R
  bool fourier_pass = true;         // mass >= bound (vacuous when not applicable)
  double spatial_mass = 0.0;        // ||psi chi_R||
  double spatial_deficit = 0.0;     // 1 - spatial_mass
};
struct LocalizationReport {
  double alpha = 0.0;
  double lambda1 = 0.0;
  double gamma = 0.0;
  std::vector<LocalizationRow> rows;
  double decay_exponent = 0.0;  // fitted decay rate of spatial_deficit in R
  double c_hat = 0.0;           // max_R R^gamma * (1 - 4*alpha*lambda1 - mass^2)
};
LocalizationReport localization_report(const SweepRecord& record, double lambda1,
                                       const std::vector<double>& radii);

// Even/odd block decomposition of the discretized operator on a symmetric
// grid; the blocks' spectra partition the full spectrum.
struct ParityReport {
  double beta = 0.0;
  double alpha = 0.0;
  int n = 0;
  double L = 0.0;
  std::vector<double> even_values;  // descending
  std::vector<double> odd_values;   // descending
  // max deviation between the sorted block-union spectrum and the full
  // dense spectrum; computed only when n <= 256 (negative otherwise).
  double union_vs_full = -1.0;
  bool even_top_dominates = false;  // even_values[0] > odd_values[0]
};
ParityReport parity_split(const ThetaSpec& theta, double beta, const GridPolicy& policy,
                          int k = 2);

// Higher-eigenvalue sweep: rescaled deficits (1 - mu_j)/alpha tracked along
// beta against the model-operator references lambda_j.
struct ConjectureReport {
  std::vector<double> betas;
  std::vector<double> alphas;
  std::vector<std::vector<double>> mu;        // [record][j]
  std::vector<std::vector<double>> rescaled;  // [record][j]
  std::vector<bool> crossing_flag;            // per record: overlap <= 0.8
  std::vector<LambdaRef> lambda;              // per j
  std::vector<bool> merged;   // per j: reference gap to next < 1e-6
  std::vector<double> rel_mismatch;  // per j, at the smallest beta
  bool converged = true;             // all eigensolves converged
};
ConjectureReport conjecture_61(const ThetaSpec& theta, const std::vector<double>& betas,
                               int j_max, const GridPolicy& policy,
                               double eig_tol = 1e-10);

// Exploratory scan for negative eigenvalues of the unrescaled kernel
// operator; beta = 0 (the Cauchy kernel) is allowed.
struct NegativeScanRow {
  double beta = 0.0;
  int n = 0;
  double L = 0.0;
  double min_eig = 0.0;    // most negative eigenvalue at n
  double min_eig_2n = 0.0; // same at the doubled grid
  double delta = 0.0;      // |min_eig_2n - min_eig|
};
struct NegativeScanReport {
  std::vector<NegativeScanRow> rows;
};
NegativeScanReport negative_scan(const ThetaSpec& theta, const std::vector<double>& betas,
                                 const GridPolicy& policy);

} // namespace anisospec
