#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
  const char* p = std::getenv("ANISOSPEC_BIN");
  REQUIRE(p != nullptr);
  return p;
}

fs::path work_root() {
  static const fs::path root =
      fs::temp_directory_path() / ("anisospec_cli_" + std::to_string(::getpid()));
  fs::create_directories(root);
  return root;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = work_root() / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + cli_path() + "\" " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

json radial_theta(double sigma) { return {{"kind", "radial_power"}, {"sigma", sigma}}; }

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

} // namespace

TEST_CASE("validate-theta: closed form passes, asymmetric table fails") {
  const fs::path dir = fresh_dir("vt_ok");
  const fs::path cfg = work_root() / "vt_ok.json";
  write_file(cfg, json{{"command", "validate-theta"},
                       {"theta", radial_theta(1.0)},
                       {"output", {{"dir", dir.string()}}}}
                      .dump());
  CHECK(run_cli("validate-theta --config \"" + cfg.string() + "\"") == 0);
  const json rep = json::parse(read_file(dir / "theta_report.json"));
  CHECK(rep.at("pass").get<bool>());
  CHECK(fs::exists(dir / "manifest.json"));

  const fs::path dir2 = fresh_dir("vt_bad");
  const fs::path cfg2 = work_root() / "vt_bad.json";
  json tilted = {{"kind", "custom"},
                 {"gamma", 2.0},
                 {"angles", json::array()},
                 {"values", json::array()}};
  for (int i = 0; i < 8; ++i) {
    tilted["angles"].push_back(-3.141592653589793 + 2.0 * 3.141592653589793 * i / 8.0);
    tilted["values"].push_back(1.0 + 0.25 * i);
  }
  write_file(cfg2, json{{"command", "validate-theta"},
                        {"theta", tilted},
                        {"output", {{"dir", dir2.string()}}}}
                       .dump());
  CHECK(run_cli("validate-theta --config \"" + cfg2.string() + "\"") == 1);
  const json rep2 = json::parse(read_file(dir2 / "theta_report.json"));
  CHECK_FALSE(rep2.at("pass").get<bool>());
  CHECK_FALSE(rep2.at("failures").empty());
}

TEST_CASE("schema violations and usage errors exit with code 2") {
  const fs::path dir = fresh_dir("schema");
  // unknown top-level key
  const fs::path bad1 = work_root() / "bad1.json";
  write_file(bad1, json{{"command", "sweep"},
                        {"thetaa", radial_theta(1.0)},
                        {"output", {{"dir", dir.string()}}}}
                       .dump());
  CHECK(run_cli("sweep --config \"" + bad1.string() + "\"") == 2);

  // config command does not match the subcommand
  const fs::path bad2 = work_root() / "bad2.json";
  write_file(bad2, json{{"command", "sweep"}, {"theta", radial_theta(1.0)}}.dump());
  CHECK(run_cli("fit --config \"" + bad2.string() + "\"") == 2);

  // malformed JSON
  const fs::path bad3 = work_root() / "bad3.json";
  write_file(bad3, "{ not json");
  CHECK(run_cli("sweep --config \"" + bad3.string() + "\"") == 2);

  // missing file, missing required option, unknown subcommand
  CHECK(run_cli("sweep --config \"" + (work_root() / "nope.json").string() + "\"") == 2);
  CHECK(run_cli("sweep") == 2);
  CHECK(run_cli("frobnicate --config x.json") == 2);

  // beta outside (0, 1] for a sweep
  const fs::path bad4 = work_root() / "bad4.json";
  write_file(bad4, json{{"command", "sweep"},
                        {"theta", radial_theta(1.0)},
                        {"numeric", {{"betas", {1.5}}, {"L", 8.0}}},
                        {"output", {{"dir", dir.string()}}}}
                       .dump());
  CHECK(run_cli("sweep --config \"" + bad4.string() + "\"") == 2);
}

TEST_CASE("free-weight collocation spectrum through the pipeline") {
  const fs::path dir = fresh_dir("model0");
  const fs::path cfg = work_root() / "model0.json";
  json zero = {{"kind", "custom"},
               {"gamma", 2.0},
               {"angles", {-3.141592653589793, -1.5707963267948966, 0.0, 1.5707963267948966}},
               {"values", {0.0, 0.0, 0.0, 0.0}}};
  write_file(cfg, json{{"command", "model-eigs"},
                       {"theta", zero},
                       {"numeric", {{"L", 5.0}, {"n", 64}, {"k", 3}}},
                       {"output", {{"dir", dir.string()}}}}
                      .dump());
  CHECK(run_cli("model-eigs --config \"" + cfg.string() + "\"") == 0);
  const json out = json::parse(read_file(dir / "model_eigs.json"));
  const auto vals = out.at("values").at(0).get<std::vector<double>>();
  REQUIRE(vals.size() == 3);
  const double pi_over_5 = 0.6283185307179586;
  CHECK(std::abs(vals[0] - 0.0) <= 1e-10);
  CHECK(std::abs(vals[1] - pi_over_5) <= 1e-10);
  CHECK(std::abs(vals[2] - pi_over_5) <= 1e-10);
  CHECK(fs::exists(dir / "model_eigs.csv"));
}

TEST_CASE("data artifacts are byte-identical across reruns") {
  const fs::path dir = fresh_dir("det");
  const fs::path cfg = work_root() / "det.json";
  write_file(cfg, json{{"command", "negative-scan"},
                       {"theta", radial_theta(2.0)},
                       {"numeric", {{"betas", {0.5, 0.0}}, {"L", 60.0}, {"n", 256}}},
                       {"output", {{"dir", dir.string()}}}}
                      .dump());
  const std::string args = "negative-scan --config \"" + cfg.string() + "\"";
  CHECK(run_cli(args) == 0);
  const std::string csv1 = read_file(dir / "negative_scan.csv");
  const std::string json1 = read_file(dir / "negative_scan.json");
  const std::string plot1 = read_file(dir / "plot_negative.dat");
  CHECK(run_cli(args) == 0);
  CHECK(read_file(dir / "negative_scan.csv") == csv1);
  CHECK(read_file(dir / "negative_scan.json") == json1);
  CHECK(read_file(dir / "plot_negative.dat") == plot1);

  CHECK(count_lines(csv1) == 3); // header + one row per beta
  const json manifest = json::parse(read_file(dir / "manifest.json"));
  CHECK(manifest.at("records").size() == 2);
  CHECK(manifest.at("config_hash").get<std::string>().size() == 16);
  CHECK(manifest.at("wall_time_s").get<double>() >= 0.0);
  CHECK_FALSE(manifest.at("version").get<std::string>().empty());
}

TEST_CASE("config hash tracks semantics, not the output location") {
  const fs::path dirA = fresh_dir("hashA");
  const fs::path dirB = fresh_dir("hashB");
  const fs::path dirC = fresh_dir("hashC");
  const fs::path cfg = work_root() / "hash.json";
  write_file(cfg, json{{"command", "negative-scan"},
                       {"theta", radial_theta(2.0)},
                       {"numeric", {{"betas", {0.5}}, {"L", 60.0}, {"n", 256}}},
                       {"output", {{"dir", dirA.string()}}}}
                      .dump());
  CHECK(run_cli("negative-scan --config \"" + cfg.string() + "\"") == 0);
  CHECK(run_cli("negative-scan --config \"" + cfg.string() + "\" --out \"" +
                dirB.string() + "\"") == 0);
  CHECK(run_cli("negative-scan --config \"" + cfg.string() + "\" --out \"" +
                dirC.string() + "\" --beta 0.25") == 0);
  const auto hash = [](const fs::path& d) {
    return json::parse(read_file(d / "manifest.json")).at("config_hash").get<std::string>();
  };
  CHECK(hash(dirA) == hash(dirB)); // output dir is not semantic
  CHECK(hash(dirA) != hash(dirC)); // the beta override is
}

TEST_CASE("sweep emits the seven-column table and plot files") {
  const fs::path dir = fresh_dir("sweep");
  const fs::path cfg = work_root() / "sweep.json";
  write_file(cfg, json{{"command", "sweep"},
                       {"theta", radial_theta(1.0)},
                       {"numeric", {{"betas", {0.5, 0.45, 0.4, 0.35, 0.3}}, {"L", 8.0},
                                    {"n", 64}}},
                       {"output", {{"dir", dir.string()}}}}
                      .dump());
  CHECK(run_cli("sweep --config \"" + cfg.string() + "\"") == 0);
  const std::string csv = read_file(dir / "sweep.csv");
  CHECK(csv.rfind("beta,alpha,n,L,mu,deficit,rescaled_deficit\n", 0) == 0);
  CHECK(count_lines(csv) == 6);
  CHECK(count_lines(read_file(dir / "plot_loglog.dat")) == 5);
  CHECK(count_lines(read_file(dir / "plot_rescaled.dat")) == 5);
  const json records = json::parse(read_file(dir / "sweep.json"));
  REQUIRE(records.size() == 5);
  for (const json& r : records) {
    CHECK(r.at("converged").get<bool>());
    CHECK(r.at("perron_min").get<double>() > 0.0);
    CHECK(r.at("mu").get<double>() > 0.0);
    CHECK(r.at("mu").get<double>() < 1.0);
  }
}

TEST_CASE("top-eigs writes residuals and eigenvector sidecars") {
  const fs::path dir = fresh_dir("top");
  const fs::path cfg = work_root() / "top.json";
  write_file(cfg, json{{"command", "top-eigs"},
                       {"theta", radial_theta(1.0)},
                       {"numeric", {{"betas", {0.5}}, {"L", 10.0}, {"n", 128}, {"k", 2}}},
                       {"output", {{"dir", dir.string()}}}}
                      .dump());
  CHECK(run_cli("top-eigs --config \"" + cfg.string() + "\"") == 0);
  const std::string csv = read_file(dir / "top_eigs.csv");
  CHECK(csv.rfind("beta,alpha,n,L,j,value,residual\n", 0) == 0);
  CHECK(count_lines(csv) == 3); // header + 2 eigenvalues
  CHECK(fs::exists(dir / "psi_b1_j1.f64"));
  CHECK(fs::exists(dir / "psi_b1_j1.json"));
  const json side = json::parse(read_file(dir / "psi_b1_j1.json"));
  CHECK(side.at("count").get<int>() == 128);
  CHECK(side.at("grid").at("n").get<int>() == 128);
}
