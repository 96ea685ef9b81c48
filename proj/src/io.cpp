#include "anisospec/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "anisospec/hash.hpp"
#include "anisospec/version.hpp"

namespace anisospec {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::set<std::string>& command_set() {
  static const std::set<std::string> cmds = {
      "model-eigs", "top-eigs", "sweep",         "fit",           "desym-gap",
      "localization", "parity", "conjecture",    "negative-scan", "validate-theta"};
  return cmds;
}

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void check_keys(const json& j, const std::string& ctx, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(ctx + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) fail("unknown key '" + item.key() + "' in " + ctx);
  }
}

double get_number(const json& j, const std::string& ctx) {
  if (!j.is_number()) fail(ctx + " must be a number");
  return j.get<double>();
}

std::vector<double> get_number_list(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) fail(ctx + " must be a nonempty array of numbers");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) fail(ctx + " must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

// "auto" (or absence) maps to the 0 sentinel.
double get_auto_number(const json& j, const std::string& ctx) {
  if (j.is_string()) {
    if (j.get<std::string>() != "auto") fail(ctx + ": only the string \"auto\" is allowed");
    return 0.0;
  }
  const double v = get_number(j, ctx);
  if (!(v > 0.0)) fail(ctx + " must be positive or \"auto\"");
  return v;
}

} // namespace

ThetaSpec theta_from_json(const nlohmann::json& j) {
  check_keys(j, "theta", {"kind", "gamma", "sigma", "p", "angles", "values"});
  if (!j.contains("kind")) fail("theta.kind is required");
  const std::string kind = j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
  try {
    if (kind == "radial_power") {
      if (!j.contains("sigma")) fail("theta.sigma is required for radial_power");
      ThetaSpec t = ThetaSpec::radial(get_number(j.at("sigma"), "theta.sigma"));
      if (j.contains("gamma") && get_number(j.at("gamma"), "theta.gamma") != t.gamma) {
        fail("theta.gamma must equal 2*sigma for radial_power");
      }
      return t;
    }
    if (kind == "abs_sum") {
      if (!j.contains("p") || !j.contains("gamma")) {
        fail("theta.p and theta.gamma are required for abs_sum");
      }
      return ThetaSpec::abssum(get_number(j.at("p"), "theta.p"),
                               get_number(j.at("gamma"), "theta.gamma"));
    }
    if (kind == "custom") {
      if (!j.contains("gamma") || !j.contains("angles") || !j.contains("values")) {
        fail("theta.gamma, theta.angles, theta.values are required for custom");
      }
      return ThetaSpec::custom_table(get_number_list(j.at("angles"), "theta.angles"),
                                     get_number_list(j.at("values"), "theta.values"),
                                     get_number(j.at("gamma"), "theta.gamma"));
    }
  } catch (const std::invalid_argument& e) {
    fail(std::string("theta: ") + e.what());
  }
  fail("theta.kind must be radial_power, abs_sum, or custom");
}

nlohmann::json theta_to_json(const ThetaSpec& t) {
  json j;
  switch (t.kind) {
    case ThetaKind::radial_power:
      j["kind"] = "radial_power";
      j["sigma"] = t.sigma;
      break;
    case ThetaKind::abs_sum:
      j["kind"] = "abs_sum";
      j["p"] = t.p;
      break;
    case ThetaKind::custom:
      j["kind"] = "custom";
      j["angles"] = t.angles;
      j["values"] = t.values;
      break;
  }
  j["gamma"] = t.gamma;
  return j;
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  check_keys(j, "config", {"command", "theta", "numeric", "output"});
  if (!j.contains("command") || !j.at("command").is_string()) {
    fail("command (string) is required");
  }
  ExperimentConfig c;
  c.command = j.at("command").get<std::string>();
  if (!command_set().count(c.command)) fail("unknown command '" + c.command + "'");
  if (!j.contains("theta")) fail("theta is required");
  c.theta = theta_from_json(j.at("theta"));

  if (j.contains("numeric")) {
    const json& nj = j.at("numeric");
    check_keys(nj, "numeric",
               {"betas", "n", "L", "n_pow2", "ppw_div", "L_cap", "refine_cap", "eig_tol",
                "flag_tol", "k", "vark", "samples", "j_max", "radii", "richardson_L",
                "family"});
    if (nj.contains("betas")) c.betas = get_number_list(nj.at("betas"), "numeric.betas");
    if (nj.contains("n")) {
      const double v = get_auto_number(nj.at("n"), "numeric.n");
      c.n = static_cast<int>(v);
      if (c.n != v) fail("numeric.n must be an integer");
    }
    if (nj.contains("L")) c.L = get_auto_number(nj.at("L"), "numeric.L");
    if (nj.contains("n_pow2")) {
      if (!nj.at("n_pow2").is_boolean()) fail("numeric.n_pow2 must be a boolean");
      c.n_pow2 = nj.at("n_pow2").get<bool>();
    }
    if (nj.contains("ppw_div")) c.ppw_div = get_number(nj.at("ppw_div"), "numeric.ppw_div");
    if (nj.contains("L_cap")) c.L_cap = get_number(nj.at("L_cap"), "numeric.L_cap");
    if (nj.contains("refine_cap")) {
      c.refine_cap = static_cast<int>(get_number(nj.at("refine_cap"), "numeric.refine_cap"));
    }
    if (nj.contains("eig_tol")) c.eig_tol = get_number(nj.at("eig_tol"), "numeric.eig_tol");
    if (nj.contains("flag_tol")) c.flag_tol = get_number(nj.at("flag_tol"), "numeric.flag_tol");
    if (nj.contains("k")) c.k = static_cast<int>(get_number(nj.at("k"), "numeric.k"));
    if (nj.contains("vark")) c.vark = get_number(nj.at("vark"), "numeric.vark");
    if (nj.contains("samples")) {
      c.samples = static_cast<int>(get_number(nj.at("samples"), "numeric.samples"));
    }
    if (nj.contains("j_max")) c.j_max = static_cast<int>(get_number(nj.at("j_max"), "numeric.j_max"));
    if (nj.contains("radii")) c.radii = get_number_list(nj.at("radii"), "numeric.radii");
    if (nj.contains("richardson_L")) {
      c.richardson_L = get_number_list(nj.at("richardson_L"), "numeric.richardson_L");
      if (c.richardson_L.size() != 3) fail("numeric.richardson_L must list exactly 3 cutoffs");
    }
    if (nj.contains("family")) {
      if (!nj.at("family").is_string()) fail("numeric.family must be a string");
      c.family = nj.at("family").get<std::string>();
      if (c.family != "B_alpha" && c.family != "K_beta") {
        fail("numeric.family must be B_alpha or K_beta");
      }
    }
  }

  if (j.contains("output")) {
    const json& oj = j.at("output");
    check_keys(oj, "output", {"dir", "formats"});
    if (oj.contains("dir")) {
      if (!oj.at("dir").is_string()) fail("output.dir must be a string");
      c.output.dir = oj.at("dir").get<std::string>();
    }
    if (oj.contains("formats")) {
      if (!oj.at("formats").is_array()) fail("output.formats must be an array");
      c.output.csv = c.output.json = c.output.plotdata = false;
      for (const auto& f : oj.at("formats")) {
        const std::string s = f.is_string() ? f.get<std::string>() : "";
        if (s == "csv") {
          c.output.csv = true;
        } else if (s == "json") {
          c.output.json = true;
        } else if (s == "plotdata") {
          c.output.plotdata = true;
        } else {
          fail("output.formats entries must be csv, json, or plotdata");
        }
      }
    }
  }

  // Per-command defaults.
  if (c.k <= 0) {
    if (c.command == "model-eigs" || c.command == "top-eigs") {
      c.k = 3;
    } else if (c.command == "parity") {
      c.k = 2;
    } else {
      c.k = 1;
    }
  }
  if (c.betas.empty()) {
    if (c.command == "desym-gap") c.betas = {0.1, 0.05, 0.025, 0.0125};
    if (c.command == "parity") c.betas = {0.5, 0.1};
    if (c.command == "negative-scan") c.betas = {0.5, 0.25, 0.1, 0.0};
  }
  if (c.command == "negative-scan") {
    if (c.L <= 0.0) c.L = 60.0;
    if (c.n <= 0) c.n = 1024;
  }
  if (c.command == "parity" && c.n <= 0) c.n = 256;
  if (c.command == "model-eigs") {
    if (c.L <= 0.0 && c.richardson_L.empty()) c.L = 20.0;
    if (c.n <= 0) c.n = 2048;
  }

  const bool needs_betas = c.command == "sweep" || c.command == "fit" ||
                           c.command == "localization" || c.command == "conjecture" ||
                           c.command == "top-eigs";
  if (needs_betas && c.betas.empty()) fail("numeric.betas is required for " + c.command);
  if (!(c.vark > 0.0 && c.vark <= 1.0)) fail("numeric.vark must lie in (0, 1]");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

nlohmann::json semantic_json(const ExperimentConfig& c) {
  json numeric;
  numeric["betas"] = c.betas;
  numeric["L"] = c.L;
  numeric["n"] = c.n;
  numeric["n_pow2"] = c.n_pow2;
  numeric["ppw_div"] = c.ppw_div;
  numeric["L_cap"] = c.L_cap;
  numeric["refine_cap"] = c.refine_cap;
  numeric["eig_tol"] = c.eig_tol;
  numeric["flag_tol"] = c.flag_tol;
  numeric["k"] = c.k;
  numeric["vark"] = c.vark;
  numeric["samples"] = c.samples;
  numeric["j_max"] = c.j_max;
  numeric["radii"] = c.radii;
  numeric["richardson_L"] = c.richardson_L;
  numeric["family"] = c.family;
  json j;
  j["command"] = c.command;
  j["theta"] = theta_to_json(c.theta);
  j["numeric"] = numeric;
  return j;
}

std::uint64_t config_hash(const ExperimentConfig& c) { return fnv1a64(semantic_json(c).dump()); }

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
}

void atomic_write_bytes(const std::string& path, const void* data, std::size_t bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot rename " + tmp + " -> " + path + ": " + ec.message());
}

void atomic_write_text(const std::string& path, const std::string& content) {
  atomic_write_bytes(path, content.data(), content.size());
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::string out = header;
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_g(row[i]);
    }
    out += '\n';
  }
  atomic_write_text(path, out);
}

void write_plot_file(const std::string& path, const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw std::invalid_argument("plotdata: need matching nonempty columns");
  }
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    out += format_g(xs[i]);
    out += ' ';
    out += format_g(ys[i]);
    out += '\n';
  }
  atomic_write_text(path, out);
}

namespace {

const char* scheme_name(GridScheme s) {
  switch (s) {
    case GridScheme::trapezoid_uniform: return "trapezoid_uniform";
    case GridScheme::gauss_legendre_composite: return "gauss_legendre_composite";
    case GridScheme::fourier_collocation: return "fourier_collocation";
  }
  return "unknown";
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

} // namespace

void save_vector(const std::string& base_path, const Eigen::VectorXd& v, const Grid& grid,
                 const std::string& provenance) {
  atomic_write_bytes(base_path + ".f64", v.data(), static_cast<size_t>(v.size()) * sizeof(double));
  json side;
  side["dtype"] = "float64";
  side["count"] = v.size();
  side["layout"] = "contiguous";
  side["grid"] = {{"n", grid.n()}, {"L", grid.cutoff_L}, {"scheme", scheme_name(grid.scheme)}};
  side["provenance"] = provenance;
  atomic_write_text(base_path + ".json", side.dump(2) + "\n");
}

void save_matrix(const std::string& base_path, const Eigen::MatrixXd& m,
                 const std::string& provenance) {
  atomic_write_bytes(base_path + ".f64", m.data(),
                     static_cast<size_t>(m.size()) * sizeof(double));
  json side;
  side["dtype"] = "float64";
  side["rows"] = m.rows();
  side["cols"] = m.cols();
  side["layout"] = "column-major";
  side["provenance"] = provenance;
  atomic_write_text(base_path + ".json", side.dump(2) + "\n");
}

void write_manifest(const ExperimentConfig& c, double wall_seconds,
                    const nlohmann::json& records) {
  char hex[24];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(config_hash(c)));
  json m;
  m["command"] = c.command;
  m["config_hash"] = hex;
  m["version"] = toolkit_version;
  m["wall_time_s"] = wall_seconds;
  m["records"] = records;
  atomic_write_text(join(c.output.dir, "manifest.json"), m.dump(2) + "\n");
}

void emit_plotdata(const std::string& dir, const std::vector<SweepRecord>& records) {
  if (records.empty()) throw std::invalid_argument("plotdata: empty record list");
  std::vector<double> lb, ld, al, rs;
  for (const SweepRecord& r : records) {
    lb.push_back(std::log10(r.beta));
    ld.push_back(std::log10(r.deficit));
    al.push_back(r.alpha);
    rs.push_back(r.deficit / r.alpha);
  }
  write_plot_file(join(dir, "plot_loglog.dat"), lb, ld);
  write_plot_file(join(dir, "plot_rescaled.dat"), al, rs);
}

void emit_plotdata(const std::string& dir, const std::vector<SweepRecord>& records,
                   double lambda1) {
  emit_plotdata(dir, records);
  double amin = records.front().alpha, amax = records.front().alpha;
  for (const SweepRecord& r : records) {
    amin = std::min(amin, r.alpha);
    amax = std::max(amax, r.alpha);
  }
  write_plot_file(join(dir, "plot_lambda1.dat"), {amin, amax}, {lambda1, lambda1});
}

void emit_plotdata(const std::string& dir, const std::vector<LocalizationReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("plotdata: empty localization report");
  const size_t nr = reports.front().rows.size();
  for (size_t ri = 0; ri < nr; ++ri) {
    std::vector<double> al, fm, sd;
    for (const LocalizationReport& rep : reports) {
      al.push_back(rep.alpha);
      fm.push_back(rep.rows[ri].fourier_mass);
      sd.push_back(rep.rows[ri].spatial_deficit);
    }
    const std::string tag = format_g(reports.front().rows[ri].R);
    write_plot_file(join(dir, "plot_fourier_R" + tag + ".dat"), al, fm);
    write_plot_file(join(dir, "plot_spatial_R" + tag + ".dat"), al, sd);
  }
}

void emit_plotdata(const std::string& dir, const ConjectureReport& report) {
  if (report.betas.empty()) throw std::invalid_argument("plotdata: empty conjecture report");
  const size_t jmax = report.lambda.size();
  double amin = report.alphas.front(), amax = report.alphas.front();
  for (double a : report.alphas) {
    amin = std::min(amin, a);
    amax = std::max(amax, a);
  }
  for (size_t j = 0; j < jmax; ++j) {
    std::vector<double> rs;
    for (const auto& row : report.rescaled) rs.push_back(row[j]);
    const std::string tag = std::to_string(j + 1);
    write_plot_file(join(dir, "plot_conj_j" + tag + ".dat"), report.alphas, rs);
    write_plot_file(join(dir, "plot_conj_lambda_j" + tag + ".dat"), {amin, amax},
                    {report.lambda[j].value, report.lambda[j].value});
  }
}

void emit_plotdata(const std::string& dir, const std::vector<DesymRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("plotdata: empty row list");
  std::vector<double> lb, ln;
  for (const DesymRow& r : rows) {
    lb.push_back(std::log10(r.beta));
    ln.push_back(std::log10(r.norm));
  }
  write_plot_file(join(dir, "plot_desym.dat"), lb, ln);
}

} // namespace anisospec
