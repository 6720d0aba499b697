// Serial reference vs OpenMP kernels: trial-parallel simulation and the
// compound (exterior power) matrix.

#include "lyapzero/matrix_kernels.hpp"
#include "lyapzero/random.hpp"
#include "lyapzero/simulate.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#ifdef LYAPZERO_HAVE_OPENMP
#include <omp.h>
#endif

using namespace lyapzero;

namespace {

double time_best(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

CMatrix random_matrix(int d, std::uint64_t seed) {
  GaussianStream rng(seed);
  CMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = {rng.normal(), rng.normal()};
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  const long steps = argc > 1 ? std::atol(argv[1]) : 20000;
  int threads = 1;
#ifdef LYAPZERO_HAVE_OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads %d\n", threads);

  std::printf("%-28s %12s %12s %8s\n", "kernel", "serial[s]", "parallel[s]", "speedup");
  for (auto [d, k] : {std::pair{8, 2}, {10, 3}, {12, 4}}) {
    const CMatrix m = random_matrix(d, 7);
    const CompoundPlan plan(d, k);
    CMatrix out(plan.size(), plan.size());
    const double ts = time_best(5, [&] { plan.apply_serial(m, out); });
    const double tp = time_best(5, [&] { plan.apply_parallel(m, out); });
    char label[64];
    std::snprintf(label, sizeof label, "compound d=%d k=%d", d, k);
    std::printf("%-28s %12.5f %12.5f %8.2f\n", label, ts, tp, ts / tp);
  }

  struct Case {
    const char* label;
    RealFormSpec form;
    RepSpec rep;
  };
  for (const Case& c : {Case{"trials SU(3,1) std", RealFormSpec::su(3, 1), RepSpec::standard()},
                        Case{"trials SU(3,1) ext:2", RealFormSpec::su(3, 1), RepSpec::exterior(2)},
                        Case{"trials Sp(6,R) std", RealFormSpec::sp(3), RepSpec::standard()}}) {
    SimConfig config;
    config.form = c.form;
    config.rep = c.rep;
    config.steps = steps;
    const double ts = time_best(1, [&] { run_trials_serial(config, config.renorm_interval); });
    const double tp = time_best(1, [&] { run_trials(config, config.renorm_interval); });
    std::printf("%-28s %12.5f %12.5f %8.2f\n", c.label, ts, tp, ts / tp);
  }
  return 0;
}
