// Times the OpenMP sweep/optimize kernels against their serial reference
// implementations and checks that both produce identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chsh/chsh_engine.hpp"

namespace {

using chsh::SweepPoint;

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

double best_of(int reps, const std::function<void()>& fn) {
  double best = seconds(fn);
  for (int i = 1; i < reps; ++i) best = std::min(best, seconds(fn));
  return best;
}

bool identical(const std::vector<SweepPoint>& a, const std::vector<SweepPoint>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].param != b[i].param || a[i].delta != b[i].delta) return false;
  }
  return true;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif
  std::printf("%-28s %10s %10s %8s  %s\n", "kernel", "serial[s]", "openmp[s]",
              "speedup", "match");

  for (const int steps : {20001, 100001}) {
    auto preset = chsh::fig1_preset();
    preset.spec.steps = steps;

    std::vector<SweepPoint> serial_pts, parallel_pts;
    const double t_serial = best_of(3, [&] {
      serial_pts = chsh::sweep_serial(preset.state, chsh::UpdateRule::kVonNeumann,
                                      preset.spec);
    });
    const double t_parallel = best_of(3, [&] {
      parallel_pts = chsh::sweep(preset.state, chsh::UpdateRule::kVonNeumann,
                                 preset.spec);
    });
    char name[64];
    std::snprintf(name, sizeof name, "sweep gamma1 x%d", steps);
    std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", name, t_serial, t_parallel,
                t_serial / t_parallel,
                identical(serial_pts, parallel_pts) ? "bitwise" : "MISMATCH");
  }

  {
    const auto state = chsh::make_entangled(
        {std::numbers::pi / 4.0, std::numbers::pi / 4.0});
    chsh::OptimizeSpec spec;
    spec.restarts = 32;

    chsh::OptimizeResult serial_res{};
    chsh::OptimizeResult parallel_res{};
    const double t_serial = best_of(2, [&] {
      serial_res = chsh::optimize_serial(state, chsh::UpdateRule::kVonNeumann, spec);
    });
    const double t_parallel = best_of(2, [&] {
      parallel_res = chsh::optimize(state, chsh::UpdateRule::kVonNeumann, spec);
    });
    std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", "optimize 32 restarts", t_serial,
                t_parallel, t_serial / t_parallel,
                serial_res.delta == parallel_res.delta ? "bitwise" : "MISMATCH");
    std::printf("optimize best delta: %.12f\n", parallel_res.delta);
  }
  return 0;
}
