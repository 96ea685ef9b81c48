#include "anisospec/asym.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "anisospec/kernels.hpp"

namespace anisospec {

namespace {

void check_betas(const std::vector<double>& betas, bool allow_zero) {
  if (betas.empty()) throw std::invalid_argument("empty beta list");
  const double lo = allow_zero ? 0.0 : 0.0;
  for (size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] <= 1.0) || betas[i] < lo || (!allow_zero && !(betas[i] > 0.0))) {
      throw std::invalid_argument("beta out of range (0, 1]");
    }
    if (i > 0 && !(betas[i] < betas[i - 1])) {
      throw std::invalid_argument("betas must be strictly decreasing");
    }
  }
}

struct Solve {
  double mu;
  Eigen::VectorXd psi;
  Grid grid;
  double gap;
  double perron_min;
  bool converged;
};

Solve solve_top(const ThetaSpec& theta, double alpha, double L, int n, double eig_tol) {
  const KernelSpec spec = KernelSpec::B(alpha, theta);
  const DiscreteOperator op = nystrom(spec, trapezoid_grid(L, n));
  const SpectrumResult res = top_k(op, 1, eig_tol);
  const PerronReport perron = perron_certify(res.pairs[0], res.gap);
  return {res.pairs[0].value, res.pairs[0].vector, op.grid,
          res.gap,            perron.min_entry,    res.converged};
}

// u_i = v_i / sqrt(w_i): back from the similarity-transformed eigenvector to
// function values at the nodes.
std::vector<double> function_values(const Eigen::VectorXd& v, const Grid& g) {
  std::vector<double> u(g.nodes.size());
  for (size_t i = 0; i < u.size(); ++i) u[i] = v[static_cast<int>(i)] / std::sqrt(g.weights[i]);
  return u;
}

double interp_at(const std::vector<double>& xs, const std::vector<double>& us, double t) {
  if (t < xs.front() || t > xs.back()) return 0.0;
  const auto it = std::upper_bound(xs.begin(), xs.end(), t);
  if (it == xs.begin()) return us.front();
  if (it == xs.end()) return us.back();
  const size_t hi = static_cast<size_t>(it - xs.begin());
  const size_t lo = hi - 1;
  const double s = (t - xs[lo]) / (xs[hi] - xs[lo]);
  return (1.0 - s) * us[lo] + s * us[hi];
}

constexpr int resample_n = 8192;

// Resamples both eigenvectors as functions onto a uniform grid over the
// common interval, sign-normalizes, and renormalizes each to unit weighted
// norm. Throws when the common interval misses half of either mass.
void resample_pair(const Eigen::VectorXd& va, const Grid& ga, const Eigen::VectorXd& vb,
                   const Grid& gb, std::vector<double>& fa, std::vector<double>& fb,
                   std::vector<double>& W) {
  const double Lc = std::min(ga.cutoff_L, gb.cutoff_L);
  if (!(Lc > 0.0)) throw std::invalid_argument("resample: empty common interval");
  const auto check_mass = [Lc](const Eigen::VectorXd& v, const Grid& g) {
    double inside = 0.0, total = 0.0;
    for (int i = 0; i < v.size(); ++i) {
      total += v[i] * v[i];
      if (std::abs(g.nodes[static_cast<size_t>(i)]) <= Lc) inside += v[i] * v[i];
    }
    if (inside < 0.5 * total) {
      throw std::runtime_error("resample: insufficient grid overlap between eigenfunctions");
    }
  };
  check_mass(va, ga);
  check_mass(vb, gb);
  const int m = resample_n;
  const double h = 2.0 * Lc / (m - 1);
  std::vector<double> ts(m);
  W.assign(m, h);
  W.front() = W.back() = 0.5 * h;
  for (int kIdx = 0; kIdx < m; ++kIdx) ts[static_cast<size_t>(kIdx)] = -Lc + kIdx * h;
  ts.back() = Lc;

  const std::vector<double> ua = function_values(va, ga);
  const std::vector<double> ub = function_values(vb, gb);
  fa.resize(m);
  fb.resize(m);
  for (int i = 0; i < m; ++i) {
    fa[static_cast<size_t>(i)] = interp_at(ga.nodes, ua, ts[static_cast<size_t>(i)]);
    fb[static_cast<size_t>(i)] = interp_at(gb.nodes, ub, ts[static_cast<size_t>(i)]);
  }
  for (std::vector<double>* f : {&fa, &fb}) {
    size_t imax = 0;
    double best = -1.0, nrm2 = 0.0;
    for (size_t i = 0; i < f->size(); ++i) {
      if (std::abs((*f)[i]) > best) {
        best = std::abs((*f)[i]);
        imax = i;
      }
      nrm2 += W[i] * (*f)[i] * (*f)[i];
    }
    if (!(nrm2 > 0.0)) throw std::runtime_error("resample: zero function");
    const double scale = ((*f)[imax] < 0.0 ? -1.0 : 1.0) / std::sqrt(nrm2);
    for (double& x : *f) x *= scale;
  }
}

double resampled_overlap(const Eigen::VectorXd& va, const Grid& ga,
                         const Eigen::VectorXd& vb, const Grid& gb) {
  std::vector<double> fa, fb, W;
  resample_pair(va, ga, vb, gb, fa, fb, W);
  double dot = 0.0;
  for (size_t i = 0; i < W.size(); ++i) dot += W[i] * fa[i] * fb[i];
  return std::abs(dot);
}

struct LineFit {
  double slope, intercept, r_squared;
};

LineFit line_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t m = xs.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit: degenerate abscissae");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double e = ys[i] - (intercept + slope * xs[i]);
    rss += e * e;
  }
  double r2 = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  r2 = std::clamp(r2, 0.0, 1.0);
  return {slope, intercept, r2};
}

} // namespace

std::vector<SweepRecord> sweep(const ThetaSpec& theta, const std::vector<double>& betas,
                               const GridPolicy& policy, double eig_tol, double flag_tol) {
  check_betas(betas, false);
  if (!(eig_tol > 0.0) || !(flag_tol > 0.0)) {
    throw std::invalid_argument("sweep: tolerances must be positive");
  }
  std::vector<SweepRecord> out;
  out.reserve(betas.size());
  for (const double beta : betas) {
    const double alpha = rescale_beta_to_alpha(beta, theta.gamma);
    const GridPolicy::Resolved rg = policy.resolve(alpha, theta);
    SweepRecord rec;
    rec.beta = beta;
    rec.alpha = alpha;
    rec.gamma = theta.gamma;

    Solve coarse = solve_top(theta, alpha, rg.L, rg.n, eig_tol);
    if (2 * rg.n <= policy.refine_cap) {
      Solve fine = solve_top(theta, alpha, rg.L, 2 * rg.n, eig_tol);
      rec.flag_shift = std::abs(fine.mu - coarse.mu);
      rec.refined = true;
      coarse = std::move(fine);
    }
    rec.mu = coarse.mu;
    rec.deficit = 1.0 - coarse.mu;
    rec.psi = std::move(coarse.psi);
    rec.grid = std::move(coarse.grid);
    rec.gap = coarse.gap;
    rec.perron_min = coarse.perron_min;
    rec.converged = coarse.converged;
    rec.grid_flagged = rec.refined && rec.flag_shift > flag_tol;
    out.push_back(std::move(rec));
  }
  return out;
}

std::pair<std::size_t, std::size_t> smallest_half_window(std::size_t m) {
  const std::size_t count = (m + 1) / 2;
  return {m - count, count};
}

FitResult fit_power_law(const std::vector<SweepRecord>& records, std::size_t first,
                        std::size_t count) {
  if (count < 2 || first + count > records.size()) {
    throw std::invalid_argument("fit_power_law: bad window");
  }
  std::vector<double> xs, ys;
  xs.reserve(count);
  ys.reserve(count);
  for (std::size_t i = first; i < first + count; ++i) {
    if (!(records[i].deficit > 0.0)) {
      throw std::invalid_argument("fit_power_law: non-positive deficit in window");
    }
    xs.push_back(std::log(records[i].beta));
    ys.push_back(std::log(records[i].deficit));
  }
  const LineFit lf = line_fit(xs, ys);
  FitResult res;
  res.exponent = lf.slope;
  res.constant = std::exp(lf.intercept);
  res.r_squared = lf.r_squared;
  res.window_beta_max = records[first].beta;
  res.window_beta_min = records[first + count - 1].beta;
  for (const SweepRecord& r : records) res.rescaled.push_back(r.deficit / r.alpha);
  return res;
}

FitResult fit_power_law(const std::vector<SweepRecord>& records) {
  if (records.size() < 4) throw std::invalid_argument("fit_power_law: need >= 4 records");
  const auto [first, count] = smallest_half_window(records.size());
  return fit_power_law(records, first, count);
}

RichardsonFit richardson_extrapolate(const std::array<double, 3>& Ls,
                                     const std::array<double, 3>& vals) {
  const double L1 = Ls[0], L2 = Ls[1], L3 = Ls[2];
  const double l1 = vals[0], l2 = vals[1], l3 = vals[2];
  if (!(L1 < L2 && L2 < L3) || !(L1 > 0.0)) {
    throw std::invalid_argument("richardson: cutoffs must be positive increasing");
  }
  const double d1 = l2 - l1, d2 = l3 - l2;
  if (d1 == 0.0 || !(d2 / d1 > 0.0) || !(d2 / d1 < 1.0)) {
    throw std::invalid_argument("richardson: refinement sequence is not contracting");
  }
  const double r = d2 / d1;
  const auto f = [&](double q) {
    return (std::pow(L3, -q) - std::pow(L2, -q)) / (std::pow(L2, -q) - std::pow(L1, -q)) - r;
  };
  double lo = 0.2, hi = 12.0;
  double flo = f(lo);
  if (!(flo * f(hi) <= 0.0)) {
    throw std::invalid_argument("richardson: decay exponent outside [0.2, 12]");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double q = 0.5 * (lo + hi);
  const double C = d1 / (std::pow(L2, -q) - std::pow(L1, -q));
  return {l1 - C * std::pow(L1, -q), q};
}

std::vector<LambdaRef> lambda_references(const ThetaSpec& theta, int n, int j_max) {
  if (j_max < 1 || j_max > 8) throw std::invalid_argument("lambda_references: 1 <= j_max <= 8");
  const std::array<double, 4> Ls = {20.0, 30.0, 45.0, 67.5};
  std::array<std::vector<double>, 4> lams;
  for (size_t i = 0; i < Ls.size(); ++i) {
    const DiscreteOperator op = model_operator(theta, fourier_collocation_grid(Ls[i], n));
    const SpectrumResult res = bottom_k(op, j_max, 1e-11);
    for (const EigenPair& p : res.pairs) lams[i].push_back(p.value);
  }
  std::vector<LambdaRef> refs(static_cast<size_t>(j_max));
  for (int j = 0; j < j_max; ++j) {
    const auto pick = [&](size_t a) { return lams[a][static_cast<size_t>(j)]; };
    const RichardsonFit triA =
        richardson_extrapolate({Ls[0], Ls[1], Ls[2]}, {pick(0), pick(1), pick(2)});
    const RichardsonFit triB =
        richardson_extrapolate({Ls[1], Ls[2], Ls[3]}, {pick(1), pick(2), pick(3)});
    LambdaRef& ref = refs[static_cast<size_t>(j)];
    ref.value = triB.value;
    ref.pair_diff = std::abs(triB.value - triA.value);
    ref.accepted = ref.pair_diff <= 1e-6;
    ref.q = triB.q;
  }
  return refs;
}

LambdaRef lambda1_reference(const ThetaSpec& theta, int n) {
  return lambda_references(theta, n, 1)[0];
}

double function_distance(const Eigen::VectorXd& va, const Grid& ga,
                         const Eigen::VectorXd& vb, const Grid& gb) {
  std::vector<double> fa, fb, W;
  resample_pair(va, ga, vb, gb, fa, fb, W);
  double d2 = 0.0;
  for (size_t i = 0; i < W.size(); ++i) {
    const double d = fa[i] - fb[i];
    d2 += W[i] * d * d;
  }
  return std::sqrt(d2);
}

double eigenfunction_distance(const SweepRecord& record, const Eigen::VectorXd& phi1,
                              const Grid& phi1_grid) {
  return function_distance(record.psi, record.grid, phi1, phi1_grid);
}

double weighted_norm(const SweepRecord& record, const ThetaSpec& theta, double vark) {
  if (!(vark > 0.0 && vark <= 1.0)) throw std::invalid_argument("weighted_norm: vark in (0,1]");
  double acc = 0.0;
  for (int i = 0; i < record.psi.size(); ++i) {
    const double g2 = 1.0 + record.alpha * tau(theta, record.grid.nodes[static_cast<size_t>(i)]);
    acc += record.psi[i] * record.psi[i] * std::pow(g2, vark);
  }
  return std::sqrt(acc);
}

LocalizationReport localization_report(const SweepRecord& record, double lambda1,
                                       const std::vector<double>& radii) {
  if (radii.empty()) throw std::invalid_argument("localization: empty radius list");
  LocalizationReport rep;
  rep.alpha = record.alpha;
  rep.lambda1 = lambda1;
  rep.gamma = record.gamma;

  const Grid& g = record.grid;
  const int n = g.n();
  const std::vector<double> u = function_values(record.psi, g);
  // c_j = w_j * u_j = sqrt(w_j) * v_j: quadrature coefficients of psi.
  std::vector<double> c(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    c[static_cast<size_t>(j)] = g.weights[static_cast<size_t>(j)] * u[static_cast<size_t>(j)];
  }

  // |psi_hat|^2 on a fixed frequency grid, by direct quadrature sums.
  const int mxi = 8001;
  const double xi_max = 80.0;
  std::vector<double> power(mxi);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < mxi; ++k) {
    const double xi = -xi_max + 2.0 * xi_max * k / (mxi - 1);
    double re = 0.0, im = 0.0;
    for (int j = 0; j < n; ++j) {
      const double ph = xi * g.nodes[static_cast<size_t>(j)];
      re += c[static_cast<size_t>(j)] * std::cos(ph);
      im -= c[static_cast<size_t>(j)] * std::sin(ph);
    }
    power[static_cast<size_t>(k)] = re * re + im * im;
  }
  double fourier_total = 0.0;
  for (double p : power) fourier_total += p;

  double spatial_total = 0.0;
  for (int j = 0; j < n; ++j) spatial_total += record.psi[j] * record.psi[j];

  std::vector<double> log_r, log_d;
  rep.c_hat = -1e300;
  for (const double R : radii) {
    if (!(R > 0.0)) throw std::invalid_argument("localization: radii must be positive");
    LocalizationRow row;
    row.R = R;
    row.fourier_applicable = record.alpha * R <= 1.0 + 1e-12;
    double inside = 0.0;
    for (int k = 0; k < mxi; ++k) {
      const double xi = -xi_max + 2.0 * xi_max * k / (mxi - 1);
      if (std::abs(xi) <= R) inside += power[static_cast<size_t>(k)];
    }
    row.fourier_mass = inside / fourier_total;
    row.fourier_bound = 1.0 - 4.0 * lambda1 / R;
    row.fourier_pass = !row.fourier_applicable || row.fourier_mass >= row.fourier_bound - 1e-12;

    double mass2 = 0.0;
    for (int j = 0; j < n; ++j) {
      if (std::abs(g.nodes[static_cast<size_t>(j)]) <= R) mass2 += record.psi[j] * record.psi[j];
    }
    mass2 /= spatial_total;
    row.spatial_mass = std::sqrt(mass2);
    row.spatial_deficit = 1.0 - row.spatial_mass;
    rep.c_hat = std::max(rep.c_hat,
                         std::pow(R, record.gamma) * (1.0 - 4.0 * record.alpha * lambda1 - mass2));
    if (row.spatial_deficit > 0.0) {
      log_r.push_back(std::log(R));
      log_d.push_back(std::log(row.spatial_deficit));
    }
    rep.rows.push_back(row);
  }
  if (log_r.size() >= 2) {
    rep.decay_exponent = -line_fit(log_r, log_d).slope;
  }
  return rep;
}

ParityReport parity_split(const ThetaSpec& theta, double beta, const GridPolicy& policy,
                          int k) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("parity: beta in (0,1]");
  if (k < 1) throw std::invalid_argument("parity: k >= 1");
  // The split needs an even weight: Theta(-x,-y) = Theta(x,y).
  {
    std::mt19937_64 rng(0x0ddba11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int s = 0; s < 64; ++s) {
      const double x = u(rng), y = u(rng);
      const double d = std::abs(eval_theta(theta, -x, -y) - eval_theta(theta, x, y));
      if (d > 1e-12 * std::max(1.0, std::abs(eval_theta(theta, x, y)))) {
        throw std::invalid_argument("parity: Theta is not even");
      }
    }
  }
  const double alpha = rescale_beta_to_alpha(beta, theta.gamma);
  const GridPolicy::Resolved rg = policy.resolve(alpha, theta);
  if (rg.n > 4096) throw std::invalid_argument("parity: n too large for the dense split");
  const Grid grid = trapezoid_grid(rg.L, rg.n);
  const int n = rg.n;
  for (int i = 0; i < n; ++i) {
    const size_t a = static_cast<size_t>(i), b = static_cast<size_t>(n - 1 - i);
    if (std::abs(grid.nodes[a] + grid.nodes[b]) > 1e-12 * rg.L ||
        std::abs(grid.weights[a] - grid.weights[b]) > 1e-12) {
      throw std::invalid_argument("parity: grid is not symmetric");
    }
  }
  const DiscreteOperator op = nystrom(KernelSpec::B(alpha, theta), grid);

  const int ne = (n + 1) / 2, no = n / 2;
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, ne);
  Eigen::MatrixXd O = Eigen::MatrixXd::Zero(n, no);
  const double isq2 = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < ne; ++a) {
    const int i = a, ip = n - 1 - a;
    if (i == ip) {
      E(i, a) = 1.0;
    } else {
      E(i, a) = isq2;
      E(ip, a) = isq2;
    }
  }
  for (int a = 0; a < no; ++a) {
    O(a, a) = isq2;
    O(n - 1 - a, a) = -isq2;
  }
  Eigen::MatrixXd Me = E.transpose() * op.matrix * E;
  Eigen::MatrixXd Mo = O.transpose() * op.matrix * O;
  Me = 0.5 * (Me + Me.transpose()).eval();
  Mo = 0.5 * (Mo + Mo.transpose()).eval();

  ParityReport rep;
  rep.beta = beta;
  rep.alpha = alpha;
  rep.n = n;
  rep.L = rg.L;

  std::vector<double> ev, ov;
  Eigen::MatrixXd dummy;
  const int ke = std::min(k, ne), ko = std::min(k, no);
  dense_symmetric_eigs(Me, ne - ke + 1, ne, false, ev, dummy);
  dense_symmetric_eigs(Mo, no - ko + 1, no, false, ov, dummy);
  rep.even_values.assign(ev.rbegin(), ev.rend());
  rep.odd_values.assign(ov.rbegin(), ov.rend());
  rep.even_top_dominates = rep.even_values[0] > rep.odd_values[0];

  if (n <= 256) {
    std::vector<double> all_e, all_o, full;
    dense_symmetric_eigs(Me, 1, ne, false, all_e, dummy);
    dense_symmetric_eigs(Mo, 1, no, false, all_o, dummy);
    dense_symmetric_eigs(op.matrix, 1, n, false, full, dummy);
    std::vector<double> merged = all_e;
    merged.insert(merged.end(), all_o.begin(), all_o.end());
    std::sort(merged.begin(), merged.end());
    rep.union_vs_full = 0.0;
    for (int i = 0; i < n; ++i) {
      rep.union_vs_full = std::max(
          rep.union_vs_full, std::abs(merged[static_cast<size_t>(i)] - full[static_cast<size_t>(i)]));
    }
  }
  return rep;
}

ConjectureReport conjecture_61(const ThetaSpec& theta, const std::vector<double>& betas,
                               int j_max, const GridPolicy& policy, double eig_tol) {
  if (j_max < 1 || j_max > 6) throw std::invalid_argument("conjecture: 1 <= j_max <= 6");
  const std::vector<SweepRecord> records = sweep(theta, betas, policy, eig_tol);

  ConjectureReport rep;
  const std::vector<LambdaRef> refs = lambda_references(theta, 2048, j_max + 1);
  rep.lambda.assign(refs.begin(), refs.begin() + j_max);
  for (int j = 0; j < j_max; ++j) {
    rep.merged.push_back(refs[static_cast<size_t>(j) + 1].value -
                             refs[static_cast<size_t>(j)].value <
                         1e-6);
  }

  std::vector<std::vector<Eigen::VectorXd>> vecs(records.size());
  for (const SweepRecord& r : records) rep.converged = rep.converged && r.converged;
  for (size_t i = 0; i < records.size(); ++i) {
    const SweepRecord& rec = records[i];
    const DiscreteOperator op = nystrom(KernelSpec::B(rec.alpha, theta), rec.grid);
    const SpectrumResult res = top_k(op, j_max, eig_tol);
    rep.converged = rep.converged && res.converged;
    rep.betas.push_back(rec.beta);
    rep.alphas.push_back(rec.alpha);
    std::vector<double> mu_row, resc_row;
    for (int j = 0; j < j_max; ++j) {
      mu_row.push_back(res.pairs[static_cast<size_t>(j)].value);
      resc_row.push_back((1.0 - res.pairs[static_cast<size_t>(j)].value) / rec.alpha);
      vecs[i].push_back(res.pairs[static_cast<size_t>(j)].vector);
    }
    rep.mu.push_back(std::move(mu_row));
    rep.rescaled.push_back(std::move(resc_row));
    bool crossing = false;
    if (i > 0) {
      for (int j = 0; j < j_max; ++j) {
        const double ov = resampled_overlap(vecs[i][static_cast<size_t>(j)], rec.grid,
                                            vecs[i - 1][static_cast<size_t>(j)],
                                            records[i - 1].grid);
        if (ov <= 0.8) crossing = true;
      }
    }
    rep.crossing_flag.push_back(crossing);
  }
  for (int j = 0; j < j_max; ++j) {
    const double lam = rep.lambda[static_cast<size_t>(j)].value;
    rep.rel_mismatch.push_back(std::abs(rep.rescaled.back()[static_cast<size_t>(j)] - lam) /
                               lam);
  }
  return rep;
}

NegativeScanReport negative_scan(const ThetaSpec& theta, const std::vector<double>& betas,
                                 const GridPolicy& policy) {
  check_betas(betas, true);
  NegativeScanReport rep;
  for (const double beta : betas) {
    double L;
    int n;
    if (policy.L_fixed > 0.0 && policy.n_fixed > 0) {
      L = policy.L_fixed;
      n = policy.n_fixed;
    } else {
      if (!(beta > 0.0)) {
        throw std::invalid_argument("negative_scan: beta = 0 requires a fixed grid policy");
      }
      const GridPolicy::Resolved rg =
          policy.resolve(rescale_beta_to_alpha(beta, theta.gamma), theta);
      L = rg.L;
      n = rg.n;
    }
    NegativeScanRow row;
    row.beta = beta;
    row.n = n;
    row.L = L;
    const KernelSpec spec = KernelSpec::K(beta, theta);
    row.min_eig = bottom_k(nystrom(spec, trapezoid_grid(L, n)), 1, 1e-10).pairs[0].value;
    row.min_eig_2n = bottom_k(nystrom(spec, trapezoid_grid(L, 2 * n)), 1, 1e-10).pairs[0].value;
    row.delta = std::abs(row.min_eig_2n - row.min_eig);
    rep.rows.push_back(row);
  }
  return rep;
}

} // namespace anisospec
