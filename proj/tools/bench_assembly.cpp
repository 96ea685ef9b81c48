// Assembly benchmark: parallel vs plain-loop Nystrom build plus a matvec
// timing, with a bitwise equality check between the two assembly paths.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <Eigen/Dense>

#include "anisospec/discretize.hpp"
#include "anisospec/kernels.hpp"

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
  int n = 2048;
  double L = 30.0;
  double beta = 0.1;
  int reps = 3;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string key = argv[i];
    const double v = std::atof(argv[i + 1]);
    if (key == "--n") n = static_cast<int>(v);
    else if (key == "--L") L = v;
    else if (key == "--beta") beta = v;
    else if (key == "--reps") reps = static_cast<int>(v);
    else {
      std::fprintf(stderr, "usage: bench_assembly [--n N] [--L L] [--beta B] [--reps R]\n");
      return 2;
    }
  }

  const anisospec::ThetaSpec theta = anisospec::ThetaSpec::radial(2.0);
  const anisospec::KernelSpec spec = anisospec::KernelSpec::K(beta, theta);
  const anisospec::Grid grid = anisospec::trapezoid_grid(L, n);

  double t_par = 1e300, t_ser = 1e300, t_mv = 1e300;
  anisospec::DiscreteOperator par, ser;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    par = anisospec::nystrom(spec, grid);
    t_par = std::min(t_par, seconds_since(t0));

    t0 = std::chrono::steady_clock::now();
    ser = anisospec::nystrom_serial(spec, grid);
    t_ser = std::min(t_ser, seconds_since(t0));
  }

  const bool identical = par.matrix == ser.matrix;

  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, -1.0, 1.0);
  Eigen::VectorXd y(n);
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    y.noalias() = par.matrix * x;
    t_mv = std::min(t_mv, seconds_since(t0));
  }

  std::printf("n=%d L=%g beta=%g reps=%d\n", n, L, beta, reps);
  std::printf("assembly parallel   %.6f s\n", t_par);
  std::printf("assembly plain-loop %.6f s\n", t_ser);
  std::printf("speedup             %.2fx\n", t_ser / t_par);
  std::printf("matvec              %.6f s\n", t_mv);
  std::printf("bitwise identical   %s\n", identical ? "yes" : "NO");
  if (!identical) {
    const double dev = (par.matrix - ser.matrix).cwiseAbs().maxCoeff();
    std::printf("max deviation       %.3e\n", dev);
    return 1;
  }
  return 0;
}
