#include "anisospec/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "anisospec/discretize.hpp"
#include "anisospec/eigensolve.hpp"
#include "anisospec/kernels.hpp"
#include "anisospec/symbols.hpp"

namespace anisospec {

namespace {

using nlohmann::json;

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

GridPolicy policy_from(const ExperimentConfig& c) {
  GridPolicy p;
  p.L_fixed = c.L;
  p.L_cap = c.L_cap;
  p.n_pow2 = c.n_pow2;
  p.ppw_div = c.ppw_div;
  p.refine_cap = c.refine_cap;
  p.n_fixed = c.n;
  return p;
}

json record_json(const SweepRecord& r) {
  json j;
  j["beta"] = r.beta;
  j["alpha"] = r.alpha;
  j["n"] = r.grid.n();
  j["L"] = r.grid.cutoff_L;
  j["mu"] = r.mu;
  j["deficit"] = r.deficit;
  j["rescaled_deficit"] = r.deficit / r.alpha;
  j["gap"] = r.gap;
  j["perron_min"] = r.perron_min;
  j["flag_shift"] = r.flag_shift;
  j["refined"] = r.refined;
  j["converged"] = r.converged;
  j["grid_flagged"] = r.grid_flagged;
  return j;
}

json grid_provenance(const std::vector<SweepRecord>& records) {
  json arr = json::array();
  for (const SweepRecord& r : records) {
    arr.push_back({{"beta", r.beta},
                   {"n", r.grid.n()},
                   {"L", r.grid.cutoff_L},
                   {"refined", r.refined},
                   {"flag_shift", r.flag_shift},
                   {"grid_flagged", r.grid_flagged},
                   {"converged", r.converged}});
  }
  return arr;
}

void write_sweep_csv(const ExperimentConfig& c, const std::vector<SweepRecord>& records,
                     const std::string& name) {
  if (!c.output.csv) return;
  std::vector<std::vector<double>> rows;
  for (const SweepRecord& r : records) {
    rows.push_back({r.beta, r.alpha, static_cast<double>(r.grid.n()), r.grid.cutoff_L, r.mu,
                    r.deficit, r.deficit / r.alpha});
  }
  write_csv(join(c.output.dir, name), "beta,alpha,n,L,mu,deficit,rescaled_deficit", rows);
}

int sweep_exit(const std::vector<SweepRecord>& records) {
  for (const SweepRecord& r : records) {
    if (!r.converged) return exit_numeric;
  }
  for (const SweepRecord& r : records) {
    if (!(r.perron_min > 0.0)) return exit_assertion;
  }
  return exit_ok;
}

int run_model_eigs(const ExperimentConfig& c, json& manifest_records) {
  std::vector<double> Ls = c.richardson_L;
  if (Ls.empty()) Ls = {c.L};
  std::vector<std::vector<double>> values(Ls.size());
  bool converged = true;
  for (size_t i = 0; i < Ls.size(); ++i) {
    const DiscreteOperator op = model_operator(c.theta, fourier_collocation_grid(Ls[i], c.n));
    const SpectrumResult res = bottom_k(op, c.k, c.eig_tol);
    converged = converged && res.converged;
    for (const EigenPair& p : res.pairs) values[i].push_back(p.value);
    manifest_records.push_back({{"L", Ls[i]}, {"n", c.n}});
  }
  json extraps = json::array();
  std::vector<std::vector<double>> rows;
  for (int j = 0; j < c.k; ++j) {
    std::vector<double> row = {static_cast<double>(j + 1)};
    for (size_t i = 0; i < Ls.size(); ++i) row.push_back(values[i][static_cast<size_t>(j)]);
    if (Ls.size() == 3) {
      try {
        const RichardsonFit fit = richardson_extrapolate(
            {Ls[0], Ls[1], Ls[2]},
            {values[0][static_cast<size_t>(j)], values[1][static_cast<size_t>(j)],
             values[2][static_cast<size_t>(j)]});
        extraps.push_back({{"value", fit.value}, {"q", fit.q}});
        row.push_back(fit.value);
        row.push_back(fit.q);
      } catch (const std::invalid_argument&) {
        extraps.push_back(nullptr);
        row.push_back(std::nan(""));
        row.push_back(std::nan(""));
      }
    }
    rows.push_back(std::move(row));
  }
  if (c.output.csv) {
    std::string header = "j";
    for (size_t i = 0; i < Ls.size(); ++i) header += ",lambda_L" + format_g(Ls[i]);
    if (Ls.size() == 3) header += ",extrapolated,q";
    write_csv(join(c.output.dir, "model_eigs.csv"), header, rows);
  }
  if (c.output.json) {
    json out;
    out["Ls"] = Ls;
    out["n"] = c.n;
    out["k"] = c.k;
    out["values"] = values;
    out["extrapolated"] = extraps;
    atomic_write_text(join(c.output.dir, "model_eigs.json"), out.dump(2) + "\n");
  }
  return converged ? exit_ok : exit_numeric;
}

int run_top_eigs(const ExperimentConfig& c, json& manifest_records) {
  const GridPolicy policy = policy_from(c);
  std::vector<std::vector<double>> rows;
  json out_rows = json::array();
  bool converged = true;
  for (size_t bi = 0; bi < c.betas.size(); ++bi) {
    const double beta = c.betas[bi];
    if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("top-eigs: beta must lie in (0, 1]");
    const double alpha = rescale_beta_to_alpha(beta, c.theta.gamma);
    const GridPolicy::Resolved rg = policy.resolve(alpha, c.theta);
    const KernelSpec spec = c.family == "K_beta" ? KernelSpec::K(beta, c.theta)
                                                 : KernelSpec::B(alpha, c.theta);
    const DiscreteOperator op = nystrom(spec, trapezoid_grid(rg.L, rg.n));
    const SpectrumResult res = top_k(op, c.k, c.eig_tol);
    converged = converged && res.converged;
    const PerronReport perron = perron_certify(res.pairs[0], res.gap);
    json jr;
    jr["beta"] = beta;
    jr["alpha"] = alpha;
    jr["n"] = rg.n;
    jr["L"] = rg.L;
    jr["gap"] = res.gap;
    jr["perron_min"] = perron.min_entry;
    json vals = json::array();
    for (int j = 0; j < c.k; ++j) {
      const EigenPair& p = res.pairs[static_cast<size_t>(j)];
      rows.push_back({beta, alpha, static_cast<double>(rg.n), rg.L,
                      static_cast<double>(j + 1), p.value, p.residual});
      vals.push_back({{"j", j + 1}, {"value", p.value}, {"residual", p.residual}});
      if (c.output.json) {
        save_vector(join(c.output.dir,
                         "psi_b" + std::to_string(bi + 1) + "_j" + std::to_string(j + 1)),
                    p.vector, op.grid, op.provenance);
      }
    }
    jr["values"] = vals;
    out_rows.push_back(jr);
    manifest_records.push_back({{"beta", beta}, {"n", rg.n}, {"L", rg.L}});
  }
  if (c.output.csv) {
    write_csv(join(c.output.dir, "top_eigs.csv"), "beta,alpha,n,L,j,value,residual", rows);
  }
  if (c.output.json) {
    atomic_write_text(join(c.output.dir, "top_eigs.json"), json(out_rows).dump(2) + "\n");
  }
  return converged ? exit_ok : exit_numeric;
}

int run_sweep(const ExperimentConfig& c, json& manifest_records) {
  const std::vector<SweepRecord> records =
      sweep(c.theta, c.betas, policy_from(c), c.eig_tol, c.flag_tol);
  manifest_records = grid_provenance(records);
  write_sweep_csv(c, records, "sweep.csv");
  if (c.output.json) {
    json arr = json::array();
    for (const SweepRecord& r : records) arr.push_back(record_json(r));
    atomic_write_text(join(c.output.dir, "sweep.json"), arr.dump(2) + "\n");
  }
  if (c.output.plotdata) emit_plotdata(c.output.dir, records);
  return sweep_exit(records);
}

int run_fit(const ExperimentConfig& c, json& manifest_records) {
  const std::vector<SweepRecord> records =
      sweep(c.theta, c.betas, policy_from(c), c.eig_tol, c.flag_tol);
  manifest_records = grid_provenance(records);
  const FitResult fit = fit_power_law(records);
  const LambdaRef lam = lambda1_reference(c.theta, 2048);
  write_sweep_csv(c, records, "fit.csv");
  if (c.output.json) {
    json out;
    json arr = json::array();
    for (const SweepRecord& r : records) arr.push_back(record_json(r));
    out["records"] = arr;
    out["fit"] = {{"exponent", fit.exponent},
                  {"constant", fit.constant},
                  {"r_squared", fit.r_squared},
                  {"window_beta_min", fit.window_beta_min},
                  {"window_beta_max", fit.window_beta_max},
                  {"rescaled", fit.rescaled}};
    out["lambda1"] = {{"value", lam.value},
                      {"pair_diff", lam.pair_diff},
                      {"accepted", lam.accepted},
                      {"q", lam.q}};
    atomic_write_text(join(c.output.dir, "fit.json"), out.dump(2) + "\n");
  }
  if (c.output.plotdata) emit_plotdata(c.output.dir, records, lam.value);
  return sweep_exit(records);
}

int run_desym(const ExperimentConfig& c, json& manifest_records) {
  std::vector<DesymRow> out;
  for (size_t i = 0; i < c.betas.size(); ++i) {
    const double beta = c.betas[i];
    if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("desym-gap: beta must lie in (0, 1]");
    if (i > 0 && !(beta < c.betas[i - 1])) {
      throw ConfigError("desym-gap: betas must be strictly decreasing");
    }
    DesymRow row;
    row.beta = beta;
    row.L = std::max(40.0, 4.0 / beta);
    int n = 1;
    while (n < 8.0 * row.L) n <<= 1;
    row.n = std::min(4096, n);
    const Grid grid = trapezoid_grid(row.L, row.n);
    const KernelSpec full = KernelSpec::K(beta, c.theta);
    const KernelSpec desym = KernelSpec::K_desym(beta, c.theta);
    row.norm = operator_norm_diff(nystrom(full, grid), nystrom(desym, grid));
    row.ratio = row.norm / std::pow(beta, 2.0 / c.theta.gamma);
    row.schur = schur_bound(
        [&](double x, double y) {
          return eval_kernel(full, x, y) - eval_kernel(desym, x, y);
        },
        false, grid);
    manifest_records.push_back({{"beta", beta}, {"n", row.n}, {"L", row.L}});
    out.push_back(row);
  }
  if (c.output.csv) {
    std::vector<std::vector<double>> rows;
    for (const DesymRow& r : out) {
      rows.push_back({r.beta, r.L, static_cast<double>(r.n), r.norm, r.ratio, r.schur});
    }
    write_csv(join(c.output.dir, "desym.csv"), "beta,L,n,norm,ratio,schur_bound", rows);
  }
  if (c.output.json) {
    json arr = json::array();
    for (const DesymRow& r : out) {
      arr.push_back({{"beta", r.beta},
                     {"L", r.L},
                     {"n", r.n},
                     {"norm", r.norm},
                     {"ratio", r.ratio},
                     {"schur_bound", r.schur}});
    }
    atomic_write_text(join(c.output.dir, "desym.json"), json(arr).dump(2) + "\n");
  }
  if (c.output.plotdata) emit_plotdata(c.output.dir, out);
  for (const DesymRow& r : out) {
    if (!(r.schur + 1e-12 >= r.norm)) return exit_assertion;
  }
  return exit_ok;
}

int run_localization(const ExperimentConfig& c, json& manifest_records) {
  const std::vector<SweepRecord> records =
      sweep(c.theta, c.betas, policy_from(c), c.eig_tol, c.flag_tol);
  manifest_records = grid_provenance(records);
  const LambdaRef lam = lambda1_reference(c.theta, 2048);
  const size_t take = std::min<size_t>(3, records.size());
  std::vector<LocalizationReport> reports;
  for (size_t i = records.size() - take; i < records.size(); ++i) {
    reports.push_back(localization_report(records[i], lam.value, c.radii));
  }
  if (c.output.csv) {
    std::vector<std::vector<double>> rows;
    for (const LocalizationReport& rep : reports) {
      for (const LocalizationRow& r : rep.rows) {
        rows.push_back({rep.alpha, r.R, r.fourier_applicable ? 1.0 : 0.0, r.fourier_mass,
                        r.fourier_bound, r.spatial_mass, r.spatial_deficit});
      }
    }
    write_csv(join(c.output.dir, "localization.csv"),
              "alpha,R,fourier_applicable,fourier_mass,fourier_bound,spatial_mass,"
              "spatial_deficit",
              rows);
  }
  if (c.output.json) {
    json out;
    out["lambda1"] = {{"value", lam.value}, {"accepted", lam.accepted}};
    json arr = json::array();
    for (const LocalizationReport& rep : reports) {
      json jr;
      jr["alpha"] = rep.alpha;
      jr["gamma"] = rep.gamma;
      jr["decay_exponent"] = rep.decay_exponent;
      jr["c_hat"] = rep.c_hat;
      json rrows = json::array();
      for (const LocalizationRow& r : rep.rows) {
        rrows.push_back({{"R", r.R},
                         {"fourier_applicable", r.fourier_applicable},
                         {"fourier_mass", r.fourier_mass},
                         {"fourier_bound", r.fourier_bound},
                         {"fourier_pass", r.fourier_pass},
                         {"spatial_mass", r.spatial_mass},
                         {"spatial_deficit", r.spatial_deficit}});
      }
      jr["rows"] = rrows;
      arr.push_back(jr);
    }
    out["reports"] = arr;
    atomic_write_text(join(c.output.dir, "localization.json"), out.dump(2) + "\n");
  }
  if (c.output.plotdata) emit_plotdata(c.output.dir, reports);
  const int se = sweep_exit(records);
  if (se != exit_ok) return se;
  for (const LocalizationReport& rep : reports) {
    for (const LocalizationRow& r : rep.rows) {
      if (r.fourier_applicable && !r.fourier_pass) return exit_assertion;
    }
    if (rep.decay_exponent < rep.gamma - 0.5) return exit_assertion;
  }
  return exit_ok;
}

int run_parity(const ExperimentConfig& c, json& manifest_records) {
  std::vector<ParityReport> reports;
  for (const double beta : c.betas) reports.push_back(parity_split(c.theta, beta, policy_from(c), c.k));
  if (c.output.csv) {
    std::string header = "beta,alpha,n,L";
    for (int j = 1; j <= c.k; ++j) header += ",lambda_e" + std::to_string(j);
    for (int j = 1; j <= c.k; ++j) header += ",lambda_o" + std::to_string(j);
    header += ",union_vs_full";
    std::vector<std::vector<double>> rows;
    for (const ParityReport& r : reports) {
      std::vector<double> row = {r.beta, r.alpha, static_cast<double>(r.n), r.L};
      for (int j = 0; j < c.k; ++j) {
        row.push_back(j < static_cast<int>(r.even_values.size())
                          ? r.even_values[static_cast<size_t>(j)]
                          : std::nan(""));
      }
      for (int j = 0; j < c.k; ++j) {
        row.push_back(j < static_cast<int>(r.odd_values.size())
                          ? r.odd_values[static_cast<size_t>(j)]
                          : std::nan(""));
      }
      row.push_back(r.union_vs_full);
      rows.push_back(std::move(row));
    }
    write_csv(join(c.output.dir, "parity.csv"), header, rows);
  }
  if (c.output.json) {
    json arr = json::array();
    for (const ParityReport& r : reports) {
      arr.push_back({{"beta", r.beta},
                     {"alpha", r.alpha},
                     {"n", r.n},
                     {"L", r.L},
                     {"even_values", r.even_values},
                     {"odd_values", r.odd_values},
                     {"union_vs_full", r.union_vs_full},
                     {"even_top_dominates", r.even_top_dominates}});
    }
    atomic_write_text(join(c.output.dir, "parity.json"), json(arr).dump(2) + "\n");
  }
  for (const ParityReport& r : reports) {
    manifest_records.push_back({{"beta", r.beta}, {"n", r.n}, {"L", r.L}});
  }
  for (const ParityReport& r : reports) {
    if (!r.even_top_dominates) return exit_assertion;
    if (r.union_vs_full >= 0.0 && r.union_vs_full > 1e-10) return exit_assertion;
  }
  return exit_ok;
}

int run_conjecture(const ExperimentConfig& c, json& manifest_records) {
  const ConjectureReport rep =
      conjecture_61(c.theta, c.betas, c.j_max, policy_from(c), c.eig_tol);
  for (size_t i = 0; i < rep.betas.size(); ++i) {
    manifest_records.push_back({{"beta", rep.betas[i]}});
  }
  if (c.output.csv) {
    std::string header = "beta,alpha";
    for (int j = 1; j <= c.j_max; ++j) header += ",mu_" + std::to_string(j);
    for (int j = 1; j <= c.j_max; ++j) header += ",rescaled_" + std::to_string(j);
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < rep.betas.size(); ++i) {
      std::vector<double> row = {rep.betas[i], rep.alphas[i]};
      for (double v : rep.mu[i]) row.push_back(v);
      for (double v : rep.rescaled[i]) row.push_back(v);
      rows.push_back(std::move(row));
    }
    write_csv(join(c.output.dir, "conjecture.csv"), header, rows);
  }
  if (c.output.json) {
    json out;
    out["betas"] = rep.betas;
    out["alphas"] = rep.alphas;
    out["mu"] = rep.mu;
    out["rescaled"] = rep.rescaled;
    json lam = json::array();
    for (const LambdaRef& l : rep.lambda) {
      lam.push_back({{"value", l.value},
                     {"pair_diff", l.pair_diff},
                     {"accepted", l.accepted},
                     {"q", l.q}});
    }
    out["lambda"] = lam;
    out["crossing_flag"] = rep.crossing_flag;
    out["merged"] = rep.merged;
    out["rel_mismatch"] = rep.rel_mismatch;
    atomic_write_text(join(c.output.dir, "conjecture.json"), out.dump(2) + "\n");
  }
  if (c.output.plotdata) emit_plotdata(c.output.dir, rep);
  return rep.converged ? exit_ok : exit_numeric;
}

int run_negative_scan(const ExperimentConfig& c, json& manifest_records) {
  const NegativeScanReport rep = negative_scan(c.theta, c.betas, policy_from(c));
  if (c.output.csv) {
    std::vector<std::vector<double>> rows;
    for (const NegativeScanRow& r : rep.rows) {
      rows.push_back(
          {r.beta, static_cast<double>(r.n), r.L, r.min_eig, r.min_eig_2n, r.delta});
    }
    write_csv(join(c.output.dir, "negative_scan.csv"), "beta,n,L,min_eig,min_eig_2n,delta",
              rows);
  }
  if (c.output.json) {
    json arr = json::array();
    for (const NegativeScanRow& r : rep.rows) {
      arr.push_back({{"beta", r.beta},
                     {"n", r.n},
                     {"L", r.L},
                     {"min_eig", r.min_eig},
                     {"min_eig_2n", r.min_eig_2n},
                     {"delta", r.delta}});
    }
    atomic_write_text(join(c.output.dir, "negative_scan.json"), json(arr).dump(2) + "\n");
  }
  if (c.output.plotdata) {
    std::vector<double> bs, es;
    for (const NegativeScanRow& r : rep.rows) {
      bs.push_back(r.beta);
      es.push_back(r.min_eig_2n);
    }
    write_plot_file(join(c.output.dir, "plot_negative.dat"), bs, es);
  }
  for (const NegativeScanRow& r : rep.rows) {
    manifest_records.push_back({{"beta", r.beta}, {"n", r.n}, {"L", r.L}});
  }
  return exit_ok;
}

int run_validate_theta(const ExperimentConfig& c, json& manifest_records) {
  const ThetaValidationReport rep = validate(c.theta, c.samples);
  if (c.output.json) {
    json out;
    out["pass"] = rep.pass;
    out["max_symmetry_defect"] = rep.max_symmetry_defect;
    out["max_homogeneity_defect"] = rep.max_homogeneity_defect;
    out["circle_min"] = rep.circle_min;
    out["circle_max"] = rep.circle_max;
    out["lipschitz_estimate"] = rep.lipschitz_estimate;
    out["failures"] = rep.failures;
    atomic_write_text(join(c.output.dir, "theta_report.json"), out.dump(2) + "\n");
  }
  manifest_records.push_back({{"samples", c.samples}});
  return rep.pass ? exit_ok : exit_assertion;
}

} // namespace

int run(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  ensure_dir(config.output.dir);
  json manifest_records = json::array();
  int code = exit_usage;
  if (config.command == "model-eigs") {
    code = run_model_eigs(config, manifest_records);
  } else if (config.command == "top-eigs") {
    code = run_top_eigs(config, manifest_records);
  } else if (config.command == "sweep") {
    code = run_sweep(config, manifest_records);
  } else if (config.command == "fit") {
    code = run_fit(config, manifest_records);
  } else if (config.command == "desym-gap") {
    code = run_desym(config, manifest_records);
  } else if (config.command == "localization") {
    code = run_localization(config, manifest_records);
  } else if (config.command == "parity") {
    code = run_parity(config, manifest_records);
  } else if (config.command == "conjecture") {
    code = run_conjecture(config, manifest_records);
  } else if (config.command == "negative-scan") {
    code = run_negative_scan(config, manifest_records);
  } else if (config.command == "validate-theta") {
    code = run_validate_theta(config, manifest_records);
  } else {
    throw ConfigError("unknown command '" + config.command + "'");
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(config, wall, manifest_records);
  return code;
}

} // namespace anisospec
