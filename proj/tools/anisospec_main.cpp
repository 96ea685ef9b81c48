// Command-line front end: one subcommand per experiment, each driven by a
// JSON config file with optional point overrides for quick parameter scans.
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "anisospec/cli.hpp"

namespace {

const std::vector<std::string> kCommands = {
    "model-eigs", "top-eigs",   "sweep",         "fit",           "desym-gap",
    "localization", "parity",   "conjecture",    "negative-scan", "validate-theta"};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"anisospec: spectral experiments for anisotropic kernel families"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  double beta_override = -1.0;
  int n_override = -1;
  double L_override = -1.0;
  bool has_beta = false, has_n = false, has_L = false, has_out = false;

  for (const std::string& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name, "run the '" + name + "' experiment");
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--beta", beta_override, "replace the beta list with this single value")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--n", n_override, "override the node count")->check(CLI::PositiveNumber);
    sub->add_option("--L", L_override, "override the domain half-length")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "override the output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : anisospec::exit_usage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  CLI::App* sub = app.get_subcommands().front();
  has_beta = sub->count("--beta") > 0;
  has_n = sub->count("--n") > 0;
  has_L = sub->count("--L") > 0;
  has_out = sub->count("--out") > 0;

  try {
    std::ifstream in(config_path);
    if (!in) throw anisospec::ConfigError("cannot open config file '" + config_path + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.is_object()) throw anisospec::ConfigError("config root must be an object");
    if (!j.contains("command")) {
      j["command"] = command;
    } else if (!j.at("command").is_string() ||
               j.at("command").get<std::string>() != command) {
      throw anisospec::ConfigError("config command does not match the subcommand '" +
                                   command + "'");
    }
    anisospec::ExperimentConfig config = anisospec::parse_config(j);
    if (has_beta) config.betas = {beta_override};
    if (has_n) config.n = n_override;
    if (has_L) config.L = L_override;
    if (has_out) config.output.dir = out_dir;
    return anisospec::run(config);
  } catch (const anisospec::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return anisospec::exit_usage;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return anisospec::exit_usage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return anisospec::exit_usage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return anisospec::exit_assertion;
  }
}
