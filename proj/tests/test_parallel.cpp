// The OpenMP kernels must match the serial reference implementations bit for
// bit: every grid point / restart is an independent pure computation and the
// merge is index-ordered.

#include <cmath>
#include <numbers>

#include "doctest.h"

#include "chsh/chsh_engine.hpp"

using namespace chsh;

TEST_CASE("parallel sweep matches the serial reference bitwise") {
  for (const auto& [preset, rule] :
       {std::pair{fig1_preset(), UpdateRule::kVonNeumann},
        std::pair{fig2_preset(), UpdateRule::kVonNeumann},
        std::pair{fig1_preset(), UpdateRule::kLueders}}) {
    const auto parallel = sweep(preset.state, rule, preset.spec);
    const auto serial = sweep_serial(preset.state, rule, preset.spec);
    REQUIRE(parallel.size() == serial.size());
    for (size_t i = 0; i < parallel.size(); ++i) {
      CHECK(parallel[i].param == serial[i].param);
      CHECK(parallel[i].delta == serial[i].delta);
    }
  }
}

TEST_CASE("parallel optimize matches the serial reference bitwise") {
  const SharedState state =
      make_entangled({std::numbers::pi / 4, std::numbers::pi / 4});
  OptimizeSpec spec;
  spec.restarts = 8;
  spec.seed = 7;

  const OptimizeResult parallel = optimize(state, UpdateRule::kVonNeumann, spec);
  const OptimizeResult serial = optimize_serial(state, UpdateRule::kVonNeumann, spec);
  CHECK(parallel.delta == serial.delta);
  for (int i = 0; i < 8; ++i) {
    const auto p = static_cast<SweepParameter>(i);
    CHECK(get_param(parallel.params, p) == get_param(serial.params, p));
  }
}
