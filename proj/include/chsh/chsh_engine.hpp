#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "chsh/measurement.hpp"
#include "chsh/states.hpp"

namespace chsh {

struct ChshResult {
  double a1b1 = 0.0;  // <A1 B1>
  double a1b2 = 0.0;  // <A1 B2>
  double a2b1 = 0.0;  // <A2 B1>
  double a2b2 = 0.0;  // <A2 B2>
  double delta = 0.0;  // a1b1 + a1b2 + a2b1 - a2b2
  UpdateRule rule = UpdateRule::kLueders;
  BasisParams params;  // ignored by the Lueders rule
  StateKind state_kind = StateKind::kEntangled;
  StateAngles angles;
};

// Correlation of one (Alice setting, Bob setting) context. Under VonNeumann
// Alice measures in the rotated basis selected by p; under Lueders p is
// irrelevant and the canonical family is used.
double context_correlation(const ComplexMatrix& rho, AliceSetting a, BobSetting b,
                           UpdateRule rule, const ContextBasisParams& p);

// The four correlations and their CHSH combination. Context assignment:
// a1b1 uses params.a1b1, a1b2 uses params.a1b2, and so on.
ChshResult chsh_value(const SharedState& state, UpdateRule rule,
                      const BasisParams& params);

// (cos 2a + cos 2b) / (sqrt(2)(sin^2 a + cos^2 b)): the Lueders CHSH value of
// the product state in closed form. Throws DegenerateState on a vanishing
// denominator.
double product_lueders_closed_form(StateAngles angles);

// Closed-form von Neumann CHSH value for the maximally entangled state
// (alpha = beta = pi/4). Advisory cross-check only: the projector path is the
// source of truth and the two are compared in tests.
double entangled_vn_closed_form(const BasisParams& params);

// The eight sweepable parameters, in the flat BasisParams order.
enum class SweepParameter {
  kEta1,
  kGamma1,
  kEta1Prime,
  kGamma1Prime,
  kEta2,
  kGamma2,
  kEta2Prime,
  kGamma2Prime,
};
std::string_view sweep_parameter_name(SweepParameter p);  // "eta1", "gamma1", "eta1p", ...
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

double get_param(const BasisParams& params, SweepParameter which);
void set_param(BasisParams& params, SweepParameter which, double value);

struct SweepSpec {
  SweepParameter varied = SweepParameter::kGamma1;
  double from = 0.0;
  double to = 1.0;
  int steps = 1001;   // >= 2
  BasisParams fixed;  // values of the seven parameters that stay put
};
void validate(const SweepSpec& spec);

struct SweepPoint {
  double param;
  double delta;
};

// Evenly spaced scan of one parameter, rows in ascending parameter order.
// sweep() runs the grid points under OpenMP; sweep_serial() is the reference
// implementation. Point i is a pure function of the spec, so the two produce
// bitwise-identical results.
std::vector<SweepPoint> sweep(const SharedState& state, UpdateRule rule,
                              const SweepSpec& spec);
std::vector<SweepPoint> sweep_serial(const SharedState& state, UpdateRule rule,
                                     const SweepSpec& spec);

struct OptimizeSpec {
  int restarts = 32;
  std::uint64_t seed = 1;
  int refine_iters = 200;   // max coordinate-descent passes per restart
  int grid_resolution = 9;  // line-scan points per coordinate
};
void validate(const OptimizeSpec& spec);

struct OptimizeResult {
  BasisParams params;
  double delta = 0.0;
};

// Multi-start maximization of delta over [0,1]^8: seeded lattice starting
// points, then per-coordinate grid scan with bisection refinement.
// Deterministic for a fixed seed; optimize() runs restarts under OpenMP and
// merges in restart order, so it matches optimize_serial() exactly.
OptimizeResult optimize(const SharedState& state, UpdateRule rule,
                        const OptimizeSpec& spec);
OptimizeResult optimize_serial(const SharedState& state, UpdateRule rule,
                               const OptimizeSpec& spec);

// Largest change in Bob's outcome marginal when Alice switches her basis
// parameters from p1 to p2 for the given settings. Exactly zero under
// Lueders; generically positive under VonNeumann.
double signaling_metric(const SharedState& state, AliceSetting a, BobSetting b,
                        const ContextBasisParams& p1, const ContextBasisParams& p2,
                        UpdateRule rule);

// Preset operating points behind the fig1/fig2 reproduction targets.
struct SweepPreset {
  SharedState state;
  SweepSpec spec;
};
SweepPreset fig1_preset();  // entangled(pi/4,pi/4), vary gamma1; peak near 3.41
SweepPreset fig2_preset();  // product(0,pi/4), vary gamma1; peak near 2.63

}  // namespace chsh
