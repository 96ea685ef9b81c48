#include "anisospec/eigensolve.hpp"

#include <lapacke.h>

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

#include "anisospec/hash.hpp"

namespace anisospec {

namespace {

constexpr int dense_cap_top = 1024;    // dense fallback ceiling for top_k
constexpr int dense_cap_bottom = 8192; // dense default ceiling for bottom_k

using MatVec = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct LanczosOut {
  std::vector<double> values; // selected Ritz values, descending
  Eigen::MatrixXd vectors;    // matching Ritz vectors (columns)
  bool converged = false;
  int iterations = 0;
};

// Eigen-decomposition of the j-step Lanczos tridiagonal.
void tridiag_eigs(const std::vector<double>& a, const std::vector<double>& b, int j,
                  std::vector<double>& theta, Eigen::MatrixXd& S) {
  theta.assign(a.begin(), a.begin() + j);
  std::vector<double> off(b.begin(), b.begin() + std::max(0, j - 1));
  S.resize(j, j);
  const int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', j, theta.data(),
                                  off.data(), S.data(), j);
  if (info != 0) throw std::runtime_error("dstevd failed: info=" + std::to_string(info));
}

// Lanczos with full reorthogonalization (two classical Gram-Schmidt passes
// per step). Returns the kk largest Ritz pairs of the operator given by
// `mv`; convergence is judged with the standard residual bound
// ||M x_i - theta_i x_i|| = |beta_j * S(j, i)|.
LanczosOut lanczos_largest(const MatVec& mv, int n, int kk, double tol,
                           std::uint64_t seed) {
  const int m_max = std::min(n, 600);
  Eigen::MatrixXd V(n, m_max);
  std::vector<double> alpha, beta;
  alpha.reserve(m_max);
  beta.reserve(m_max);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  v.normalize();
  V.col(0) = v;

  Eigen::VectorXd w(n);
  std::vector<double> theta;
  Eigen::MatrixXd S;
  double scale = 0.0;
  int m = 0;
  bool converged = false;

  for (int j = 0; j < m_max; ++j) {
    mv(V.col(j), w);
    const double aj = V.col(j).dot(w);
    alpha.push_back(aj);
    w -= aj * V.col(j);
    if (j > 0) w -= beta[j - 1] * V.col(j - 1);
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    }
    const double bj = w.norm();
    scale = std::max({scale, std::abs(aj), bj});
    m = j + 1;

    const bool breakdown = bj <= 1e-14 * std::max(scale, 1.0);
    const bool check = breakdown || j + 1 == m_max || ((j + 1) % 10 == 0 && j + 1 > kk);
    if (check) {
      tridiag_eigs(alpha, beta, m, theta, S);
      bool ok = m >= kk;
      const double ref = std::max(1.0, std::abs(theta[m - 1]));
      for (int i = 0; i < kk && ok; ++i) {
        const double bound = breakdown ? 0.0 : bj * std::abs(S(m - 1, m - 1 - i));
        ok = bound <= 0.1 * tol * ref;
      }
      if (ok || breakdown || j + 1 == m_max) {
        converged = ok || breakdown;
        break;
      }
    }
    beta.push_back(bj);
    V.col(j + 1) = w / bj;
  }

  LanczosOut out;
  out.iterations = m;
  out.converged = converged && m >= kk;
  const int take = std::min(kk, m);
  out.values.resize(take);
  out.vectors.resize(n, take);
  for (int i = 0; i < take; ++i) {
    out.values[i] = theta[m - 1 - i]; // dstevd gives ascending order
    out.vectors.col(i) = V.leftCols(m) * S.col(m - 1 - i);
    out.vectors.col(i).normalize();
  }
  return out;
}

// Deterministic ordering: by value (primary comparator supplied), ties by
// the first differing vector entry.
void sort_pairs(std::vector<EigenPair>& pairs, bool descending) {
  std::sort(pairs.begin(), pairs.end(), [&](const EigenPair& a, const EigenPair& b) {
    if (a.value != b.value) return descending ? a.value > b.value : a.value < b.value;
    for (int i = 0; i < a.vector.size() && i < b.vector.size(); ++i) {
      if (a.vector[i] != b.vector[i]) return a.vector[i] < b.vector[i];
    }
    return false;
  });
}

SpectrumResult finalize(const DiscreteOperator& op, std::vector<double> values,
                        Eigen::MatrixXd vectors, int k, bool descending,
                        double tol, EigenMethod method, bool solver_converged,
                        int iterations) {
  SpectrumResult res;
  res.method = method;
  res.iterations = iterations;
  const int got = static_cast<int>(values.size());
  res.pairs.resize(got);
  double extreme = got ? std::abs(values[0]) : 1.0;
  for (int i = 0; i < got; ++i) {
    EigenPair& p = res.pairs[i];
    p.value = values[i];
    p.vector = vectors.col(i);
    sign_normalize(p.vector);
    // Post-hoc verification by direct multiplication.
    p.residual = (op.matrix * p.vector - p.value * p.vector).norm();
    extreme = std::max(extreme, std::abs(p.value));
  }
  sort_pairs(res.pairs, descending);
  res.converged = solver_converged && got >= std::min(k, op.grid.n());
  const double allow = tol * std::max(1.0, extreme);
  for (const EigenPair& p : res.pairs) {
    if (p.residual > allow) res.converged = false;
  }
  if (got >= 2) res.gap = std::abs(res.pairs[0].value - res.pairs[1].value);
  if (static_cast<int>(res.pairs.size()) > k) res.pairs.resize(k);
  return res;
}

} // namespace

void sign_normalize(Eigen::VectorXd& v) {
  int imax = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      imax = i;
    }
  }
  if (v[imax] < 0.0) v = -v;
}

void dense_symmetric_eigs(const Eigen::MatrixXd& M, int il, int iu,
                          bool want_vectors, std::vector<double>& values,
                          Eigen::MatrixXd& vectors) {
  const int n = static_cast<int>(M.rows());
  if (il < 1 || iu < il || iu > n) {
    throw std::invalid_argument("dense_symmetric_eigs: bad index range");
  }
  Eigen::MatrixXd A = M; // dsyevr destroys its input
  const int want = iu - il + 1;
  std::vector<double> w(n);
  vectors.resize(n, want_vectors ? want : 1);
  std::vector<lapack_int> isuppz(2 * std::max(1, want));
  lapack_int m = 0;
  const int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', 'L', n, A.data(), n, 0.0,
      0.0, il, iu, 0.0, &m, w.data(), vectors.data(), n, isuppz.data());
  if (info != 0) throw std::runtime_error("dsyevr failed: info=" + std::to_string(info));
  values.assign(w.begin(), w.begin() + m);
}

SpectrumResult top_k(const DiscreteOperator& op, int k, double tol) {
  if (!op.symmetric) throw std::invalid_argument("top_k: operator must be symmetric");
  const int n = op.grid.n();
  if (k < 1 || k > n) throw std::invalid_argument("top_k: need 1 <= k <= n");
  const int kk = std::min(n, std::max(k + 1, 2));

  if (n <= dense_cap_top) {
    std::vector<double> vals;
    Eigen::MatrixXd vecs;
    dense_symmetric_eigs(op.matrix, n - kk + 1, n, true, vals, vecs);
    // ascending -> descending
    std::vector<double> rv(vals.rbegin(), vals.rend());
    Eigen::MatrixXd rvecs(n, kk);
    for (int i = 0; i < kk; ++i) rvecs.col(i) = vecs.col(kk - 1 - i);
    return finalize(op, std::move(rv), std::move(rvecs), k, true, tol,
                    EigenMethod::dense, true, 0);
  }

  return top_k_lanczos(op, k, tol);
}

SpectrumResult top_k_lanczos(const DiscreteOperator& op, int k, double tol) {
  if (!op.symmetric) throw std::invalid_argument("top_k_lanczos: operator must be symmetric");
  const int n = op.grid.n();
  if (k < 1 || k > n) throw std::invalid_argument("top_k_lanczos: need 1 <= k <= n");
  const int kk = std::min(n, std::max(k + 1, 2));
  const std::uint64_t seed = fnv1a64(op.provenance + "|top|k=" + std::to_string(k));
  MatVec mv = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.noalias() = op.matrix * x;
  };
  LanczosOut lz = lanczos_largest(mv, n, kk, tol, seed);
  return finalize(op, std::move(lz.values), std::move(lz.vectors), k, true, tol,
                  EigenMethod::lanczos, lz.converged, lz.iterations);
}

SpectrumResult bottom_k(const DiscreteOperator& op, int k, double tol) {
  if (!op.symmetric) throw std::invalid_argument("bottom_k: operator must be symmetric");
  const int n = op.grid.n();
  if (k < 1 || k > n) throw std::invalid_argument("bottom_k: need 1 <= k <= n");
  const int kk = std::min(n, std::max(k + 1, 2));

  if (n <= dense_cap_bottom) {
    std::vector<double> vals;
    Eigen::MatrixXd vecs;
    dense_symmetric_eigs(op.matrix, 1, kk, true, vals, vecs);
    return finalize(op, std::move(vals), std::move(vecs), k, false, tol,
                    EigenMethod::dense, true, 0);
  }

  // Lanczos on sigma*I - M with sigma the Gershgorin upper bound, so the
  // smallest eigenvalues of M become the largest of the shifted operator.
  double sigma = 0.0;
#pragma omp parallel for schedule(static) reduction(max : sigma)
  for (int i = 0; i < n; ++i) {
    double row = op.matrix(i, i);
    for (int j = 0; j < n; ++j) {
      if (j != i) row += std::abs(op.matrix(i, j));
    }
    sigma = std::max(sigma, row);
  }
  const std::uint64_t seed = fnv1a64(op.provenance + "|bottom|k=" + std::to_string(k));
  MatVec mv = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.noalias() = op.matrix * x;
    y = sigma * x - y;
  };
  LanczosOut lz = lanczos_largest(mv, n, kk, tol, seed);
  std::vector<double> vals(lz.values.size());
  for (size_t i = 0; i < lz.values.size(); ++i) vals[i] = sigma - lz.values[i];
  return finalize(op, std::move(vals), std::move(lz.vectors), k, false, tol,
                  EigenMethod::lanczos, lz.converged, lz.iterations);
}

PerronReport perron_certify(const EigenPair& pair, double gap, double boundary_tol) {
  PerronReport rep;
  Eigen::VectorXd v = pair.vector;
  sign_normalize(v);
  rep.min_entry = v.minCoeff();
  rep.strictly_positive = rep.min_entry > 0.0;
  const double vmax = v.cwiseAbs().maxCoeff();
  rep.positive_with_tolerance = rep.min_entry >= -boundary_tol * vmax;
  rep.gap = gap;
  rep.simple = gap > 1e-8 * std::abs(pair.value);
  return rep;
}

} // namespace anisospec
