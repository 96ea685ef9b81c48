#include "anisospec/discretize.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace anisospec {

namespace {

std::string kernel_name(const KernelSpec& spec) {
  switch (spec.family) {
    case KernelFamily::K_beta: return "K_beta";
    case KernelFamily::B_alpha: return "B_alpha";
    case KernelFamily::K_beta_desym: return "K_beta_desym";
    case KernelFamily::B_alpha_desym: return "B_alpha_desym";
    case KernelFamily::S_alpha_h: return "S_alpha_h";
    case KernelFamily::m_t: return "m_t";
  }
  return "?";
}

std::string nystrom_provenance(const KernelSpec& spec, const Grid& grid) {
  std::ostringstream os;
  os << "nystrom|" << kernel_name(spec) << "|param=" << spec.beta_or_alpha
     << "|L=" << grid.cutoff_L << "|n=" << grid.n();
  return os.str();
}

// Shared assembly body; `parallel` only toggles the OpenMP pragma. Work is
// split over columns (Eigen stores column-major, so each thread writes a
// contiguous block) and every entry is computed by the same expression in
// the same order, which keeps the two variants bitwise identical.
DiscreteOperator assemble(const KernelSpec& spec, const Grid& grid, bool parallel) {
  if (!grid.is_quadrature()) {
    throw std::invalid_argument("nystrom: requires a quadrature grid");
  }
  const int n = grid.n();
  if (n < 1) throw std::invalid_argument("nystrom: empty grid");

  DiscreteOperator op;
  op.grid = grid;
  op.symmetric = kernel_is_symmetric(spec.family);
  op.provenance = nystrom_provenance(spec, grid);
  op.matrix.resize(n, n);

  std::vector<double> sw(n);
  for (int i = 0; i < n; ++i) sw[i] = std::sqrt(grid.weights[i]);

  double* data = op.matrix.data();
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < n; ++j) {
    const double xj = grid.nodes[j];
    const double swj = sw[j];
    double* col = data + static_cast<size_t>(j) * n;
    for (int i = 0; i < n; ++i) {
      col[i] = sw[i] * eval_kernel(spec, grid.nodes[i], xj) * swj;
    }
  }

  if (op.symmetric) {
    // Enforce exact symmetry: average with the transpose in place.
    for (int j = 0; j < n; ++j) {
      for (int i = j + 1; i < n; ++i) {
        const double m = 0.5 * (op.matrix(i, j) + op.matrix(j, i));
        op.matrix(i, j) = m;
        op.matrix(j, i) = m;
      }
    }
  }
  return op;
}

} // namespace

DiscreteOperator nystrom(const KernelSpec& spec, const Grid& grid) {
  return assemble(spec, grid, true);
}

DiscreteOperator nystrom_serial(const KernelSpec& spec, const Grid& grid) {
  return assemble(spec, grid, false);
}

DiscreteOperator model_operator_with_potential(const std::vector<double>& v,
                                               const Grid& grid,
                                               std::string provenance) {
  if (grid.scheme != GridScheme::fourier_collocation) {
    throw std::invalid_argument("model_operator: requires a fourier_collocation grid");
  }
  const int n = grid.n();
  if (static_cast<int>(v.size()) != n) {
    throw std::invalid_argument("model_operator: potential size mismatch");
  }
  const double L = grid.cutoff_L;
  const double pi = 3.14159265358979323846;

  std::vector<double> c(n, 0.0);
  c[0] = pi * n / (4.0 * L);
  for (int d = 1; d < n; d += 2) {
    const double s = std::sin(pi * d / n);
    c[d] = -pi / (n * L * s * s);
  }

  DiscreteOperator op;
  op.grid = grid;
  op.symmetric = true;
  op.provenance = std::move(provenance);
  op.matrix.resize(n, n);
  double* data = op.matrix.data();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    double* col = data + static_cast<size_t>(j) * n;
    for (int i = 0; i < n; ++i) {
      col[i] = c[((i - j) % n + n) % n];
    }
    col[j] += v[j];
  }
  // The circulant is already symmetric (c_d = c_{n-d}); average anyway so
  // the stored matrix is exactly symmetric by construction.
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      const double m = 0.5 * (op.matrix(i, j) + op.matrix(j, i));
      op.matrix(i, j) = m;
      op.matrix(j, i) = m;
    }
  }
  return op;
}

DiscreteOperator model_operator(const ThetaSpec& theta, const Grid& grid) {
  const int n = grid.n();
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = 0.5 * tau(theta, grid.nodes[j]);
  std::ostringstream os;
  os << "model|gamma=" << theta.gamma << "|L=" << grid.cutoff_L << "|n=" << n;
  return model_operator_with_potential(v, grid, os.str());
}

double operator_norm_diff(const DiscreteOperator& a, const DiscreteOperator& b) {
  const int n = a.grid.n();
  if (n != b.grid.n() || a.grid.nodes != b.grid.nodes) {
    throw std::invalid_argument("operator_norm_diff: grid mismatch");
  }
  const Eigen::MatrixXd d = a.matrix - b.matrix;

  // Power iteration on d^T d; sigma_max(d) = sqrt(lambda_max(d^T d)).
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  v.normalize();

  double sigma = 0.0;
  for (int iter = 0; iter < 20000; ++iter) {
    Eigen::VectorXd w = d * v;
    const double s = w.norm();
    if (s == 0.0) return 0.0;
    Eigen::VectorXd z = d.transpose() * w;
    const double zn = z.norm();
    if (zn == 0.0) return s;
    v = z / zn;
    const double prev = sigma;
    sigma = std::sqrt(zn); // ||d^T d v|| -> lambda_max, sigma = sqrt
    if (iter > 2 && std::abs(sigma - prev) <= 1e-10 * sigma) break;
  }
  return sigma;
}

GridPolicy::Resolved GridPolicy::resolve(double alpha, const ThetaSpec& theta) const {
  if (!(alpha > 0.0)) throw std::invalid_argument("GridPolicy: alpha must be > 0");
  double L = L_fixed;
  if (!(L > 0.0)) {
    const double t1 = tau(theta, 1.0);
    L = std::pow(1e4 / (alpha * t1), 1.0 / theta.gamma);
    L = std::min(L, L_cap);
  }
  if (n_fixed > 0) return {L, n_fixed};
  const double raw = 2.0 * L / (alpha / ppw_div);
  int n = static_cast<int>(std::ceil(raw));
  if (n_pow2) {
    int p = 1;
    while (p < n) p <<= 1;
    n = p;
  }
  n = std::max(n, n_min);
  return {L, n};
}

} // namespace anisospec
