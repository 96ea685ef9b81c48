#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "anisospec/asym.hpp"
#include "anisospec/theta.hpp"

namespace anisospec {

// Configuration / schema violations; the CLI maps these to the usage exit
// code, distinct from numeric failures.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputSpec {
  std::string dir = "out";
  bool csv = true;
  bool json = true;
  bool plotdata = true;
};

// Parsed experiment description. Numeric fields carry per-command defaults;
// L = 0 and n = 0 mean "auto" (resolved by the grid policy rule).
struct ExperimentConfig {
  std::string command;
  ThetaSpec theta;

  std::vector<double> betas;
  double L = 0.0;
  int n = 0;
  bool n_pow2 = true;
  double ppw_div = 3.0;
  double L_cap = 1e9;
  int refine_cap = 15000;
  double eig_tol = 1e-10;
  double flag_tol = 1e-7;
  int k = 0;  // 0: per-command default
  double vark = 0.5;
  int samples = 256;
  int j_max = 3;
  std::vector<double> radii = {2.0, 4.0, 6.0, 8.0};
  std::vector<double> richardson_L;  // optional cutoff triple for model-eigs
  std::string family = "B_alpha";

  OutputSpec output;
};

// Strict parsing: unknown keys anywhere are rejected, as are missing
// required fields and type mismatches (all surfaced as ConfigError).
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

nlohmann::json theta_to_json(const ThetaSpec& t);
ThetaSpec theta_from_json(const nlohmann::json& j);

// Canonical semantic form: command + theta + numeric fields, sorted keys,
// output location excluded. Its FNV-1a hash identifies a run in manifests:
// equal iff every semantic field is equal.
nlohmann::json semantic_json(const ExperimentConfig& c);
std::uint64_t config_hash(const ExperimentConfig& c);

void ensure_dir(const std::string& dir);
// All writes are temp-file + rename, so partial files never appear under
// the final name.
void atomic_write_text(const std::string& path, const std::string& content);
void atomic_write_bytes(const std::string& path, const void* data, std::size_t bytes);

std::string format_g(double v);  // fixed "%.12g" formatting for data files

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

// Two-column whitespace-separated plot file; empty input is an error.
void write_plot_file(const std::string& path, const std::vector<double>& xs,
                     const std::vector<double>& ys);

// Raw float64 vector/matrix with a JSON sidecar describing shape and origin.
void save_vector(const std::string& base_path, const Eigen::VectorXd& v, const Grid& grid,
                 const std::string& provenance);
void save_matrix(const std::string& base_path, const Eigen::MatrixXd& m,
                 const std::string& provenance);

void write_manifest(const ExperimentConfig& c, double wall_seconds,
                    const nlohmann::json& records);

// Plot-ready projections of the report types (one or two files each,
// written into the output directory).
void emit_plotdata(const std::string& dir, const std::vector<SweepRecord>& records);
void emit_plotdata(const std::string& dir, const std::vector<SweepRecord>& records,
                   double lambda1);
void emit_plotdata(const std::string& dir, const std::vector<LocalizationReport>& reports);
void emit_plotdata(const std::string& dir, const ConjectureReport& report);

struct DesymRow {
  double beta = 0.0;
  double L = 0.0;
  int n = 0;
  double norm = 0.0;   // ||K - K_l||
  double ratio = 0.0;  // norm / beta^{ 2/gamma }
  double schur = 0.0;  // Schur bound on the difference kernel
};
void emit_plotdata(const std::string& dir, const std::vector<DesymRow>& rows);

} // namespace anisospec
