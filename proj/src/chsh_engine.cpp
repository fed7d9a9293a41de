#include "chsh/chsh_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

const ProjectorFamily& cached_bob(BobSetting which) {
  static const ProjectorFamily b1 = bob_family(BobSetting::kB1);
  static const ProjectorFamily b2 = bob_family(BobSetting::kB2);
  return which == BobSetting::kB1 ? b1 : b2;
}

// (Alice setting, Bob setting) of the CHSH context that owns parameter pair i,
// in the fixed order a1b1, a1b2, a2b1, a2b2.
constexpr AliceSetting kContextAlice[4] = {AliceSetting::kA1, AliceSetting::kA1,
                                           AliceSetting::kA2, AliceSetting::kA2};
constexpr BobSetting kContextBob[4] = {BobSetting::kB1, BobSetting::kB2,
                                       BobSetting::kB1, BobSetting::kB2};

ContextBasisParams context_params(const BasisParams& p, int context) {
  switch (context) {
    case 0: return p.a1b1;
    case 1: return p.a1b2;
    case 2: return p.a2b1;
    default: return p.a2b2;
  }
}

double correlation_for_context(const ComplexMatrix& rho, int context,
                               UpdateRule rule, const ContextBasisParams& p) {
  return context_correlation(rho, kContextAlice[context], kContextBob[context],
                             rule, p);
}

double combine_delta(const std::array<double, 4>& c) {
  return c[0] + c[1] + c[2] - c[3];
}

double sweep_grid_value(const SweepSpec& spec, int i) {
  return spec.from + (spec.to - spec.from) * static_cast<double>(i) /
                         static_cast<double>(spec.steps - 1);
}

// Shared per-point kernel: recomputes only the varied context, combining with
// the three precomputed fixed correlations in canonical order so the result
// is bitwise identical to chsh_value at the same parameters.
SweepPoint sweep_point(const ComplexMatrix& rho, UpdateRule rule,
                       const SweepSpec& spec, const std::array<double, 4>& fixed_corr,
                       int varied_context, int i) {
  const double x = sweep_grid_value(spec, i);
  BasisParams params = spec.fixed;
  set_param(params, spec.varied, x);
  std::array<double, 4> c = fixed_corr;
  c[varied_context] = correlation_for_context(rho, varied_context, rule,
                                              context_params(params, varied_context));
  return SweepPoint{x, combine_delta(c)};
}

template <typename PointFn>
std::vector<SweepPoint> run_sweep(const SharedState& state, UpdateRule rule,
                                  const SweepSpec& spec, PointFn&& point,
                                  bool parallel) {
  validate(spec);
  const ComplexMatrix rho = density(state);
  const int varied_context = static_cast<int>(spec.varied) / 2;

  std::array<double, 4> fixed_corr{};
  for (int ctx = 0; ctx < 4; ++ctx) {
    fixed_corr[ctx] = correlation_for_context(rho, ctx, rule,
                                              context_params(spec.fixed, ctx));
  }

  std::vector<SweepPoint> out(static_cast<size_t>(spec.steps));
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < spec.steps; ++i) {
      out[static_cast<size_t>(i)] = point(rho, rule, spec, fixed_corr, varied_context, i);
    }
  } else {
    for (int i = 0; i < spec.steps; ++i) {
      out[static_cast<size_t>(i)] = point(rho, rule, spec, fixed_corr, varied_context, i);
    }
  }
  return out;
}

// --- optimizer internals -------------------------------------------------

struct Objective {
  const ComplexMatrix rho;
  UpdateRule rule;

  double context(int ctx, const ContextBasisParams& p) const {
    return correlation_for_context(rho, ctx, rule, p);
  }
};

struct Candidate {
  std::array<double, 8> x;  // flat BasisParams order
  std::array<double, 4> corr;
  double delta;
};

BasisParams to_params(const std::array<double, 8>& x) {
  return BasisParams{{x[0], x[1]}, {x[2], x[3]}, {x[4], x[5]}, {x[6], x[7]}};
}

void eval_all(const Objective& obj, Candidate& c) {
  const BasisParams p = to_params(c.x);
  for (int ctx = 0; ctx < 4; ++ctx) c.corr[ctx] = obj.context(ctx, context_params(p, ctx));
  c.delta = combine_delta(c.corr);
}

// Re-evaluates only the context owning coordinate `coord`.
double delta_with_coord(const Objective& obj, const Candidate& c, int coord,
                        double value, double* corr_out) {
  const int ctx = coord / 2;
  ContextBasisParams p{c.x[2 * ctx], c.x[2 * ctx + 1]};
  (coord % 2 == 0 ? p.eta : p.gamma) = value;
  const double corr = obj.context(ctx, p);
  std::array<double, 4> corrs = c.corr;
  corrs[ctx] = corr;
  *corr_out = corr;
  return combine_delta(corrs);
}

// One restart: coordinate descent from a seeded lattice start. Each
// coordinate pass does a grid line scan followed by shrinking-step local
// refinement, staying inside [0,1].
Candidate run_restart(const Objective& obj, const OptimizeSpec& spec, int restart) {
  std::mt19937_64 rng(spec.seed + 0x9E3779B97F4A7C15ull * static_cast<unsigned>(restart + 1));
  std::uniform_int_distribution<int> lattice(0, spec.grid_resolution - 1);

  Candidate best{};
  for (int i = 0; i < 8; ++i) {
    best.x[i] = restart == 0
                    ? 1.0  // canonical corner as a fixed deterministic start
                    : static_cast<double>(lattice(rng)) / (spec.grid_resolution - 1);
  }
  eval_all(obj, best);

  for (int pass = 0; pass < spec.refine_iters; ++pass) {
    bool improved = false;
    for (int coord = 0; coord < 8; ++coord) {
      double x_best = best.x[coord];
      double d_best = best.delta;
      double corr_best = best.corr[coord / 2];

      // coarse line scan
      for (int j = 0; j < spec.grid_resolution; ++j) {
        const double x = static_cast<double>(j) / (spec.grid_resolution - 1);
        double corr;
        const double d = delta_with_coord(obj, best, coord, x, &corr);
        if (d > d_best) {
          d_best = d;
          x_best = x;
          corr_best = corr;
        }
      }
      // local refinement around the best grid point, hard-capped
      double step = 1.0 / (spec.grid_resolution - 1);
      for (int it = 0; it < 200 && step > 1e-10; ++it) {
        bool moved = false;
        for (const double dir : {+1.0, -1.0}) {
          const double x = std::clamp(x_best + dir * step, 0.0, 1.0);
          double corr;
          const double d = delta_with_coord(obj, best, coord, x, &corr);
          if (d > d_best) {
            d_best = d;
            x_best = x;
            corr_best = corr;
            moved = true;
          }
        }
        if (!moved) step *= 0.5;
      }

      if (d_best > best.delta + 1e-15) improved = true;
      best.x[coord] = x_best;
      best.corr[coord / 2] = corr_best;
      best.delta = d_best;
    }
    if (!improved) break;
  }
  return best;
}

OptimizeResult run_optimize(const SharedState& state, UpdateRule rule,
                            const OptimizeSpec& spec, bool parallel) {
  validate(spec);
  const Objective obj{density(state), rule};

  std::vector<Candidate> results(static_cast<size_t>(spec.restarts));
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < spec.restarts; ++r) {
      results[static_cast<size_t>(r)] = run_restart(obj, spec, r);
    }
  } else {
    for (int r = 0; r < spec.restarts; ++r) {
      results[static_cast<size_t>(r)] = run_restart(obj, spec, r);
    }
  }

  // deterministic merge: best delta, earliest restart on ties
  size_t winner = 0;
  for (size_t r = 1; r < results.size(); ++r) {
    if (results[r].delta > results[winner].delta) winner = r;
  }
  return OptimizeResult{to_params(results[winner].x), results[winner].delta};
}

}  // namespace

double context_correlation(const ComplexMatrix& rho, AliceSetting a, BobSetting b,
                           UpdateRule rule, const ContextBasisParams& p) {
  // The family is rebuilt from p under both rules; the Lueders path then only
  // touches its coarse projectors, which are p-invariant, so basis
  // independence is a measured outcome here rather than a shortcut.
  return joint_expectation(rho, rotated_family(a, p), cached_bob(b), rule);
}

ChshResult chsh_value(const SharedState& state, UpdateRule rule,
                      const BasisParams& params) {
  validate(params);
  const ComplexMatrix rho = density(state);
  std::array<double, 4> c{};
  for (int ctx = 0; ctx < 4; ++ctx) {
    c[ctx] = correlation_for_context(rho, ctx, rule, context_params(params, ctx));
  }
  ChshResult result;
  result.a1b1 = c[0];
  result.a1b2 = c[1];
  result.a2b1 = c[2];
  result.a2b2 = c[3];
  result.delta = combine_delta(c);
  result.rule = rule;
  result.params = params;
  result.state_kind = state.kind;
  result.angles = state.angles;
  return result;
}

double product_lueders_closed_form(StateAngles angles) {
  const double sa = std::sin(angles.alpha);
  const double cb = std::cos(angles.beta);
  const double denom = sa * sa + cb * cb;
  if (denom < 1e-12) {
    throw DegenerateState("closed form undefined: sin^2(alpha) + cos^2(beta) < 1e-12");
  }
  return (std::cos(2.0 * angles.alpha) + std::cos(2.0 * angles.beta)) /
         (std::sqrt(2.0) * denom);
}

double entangled_vn_closed_form(const BasisParams& params) {
  validate(params);
  const auto r = [](double x) { return std::sqrt(1.0 - x * x); };
  const double e1 = params.a1b1.eta, g1 = params.a1b1.gamma;
  const double ep1 = params.a1b2.eta, gp1 = params.a1b2.gamma;
  const double e2 = params.a2b1.eta, g2 = params.a2b1.gamma;
  const double ep2 = params.a2b2.eta, gp2 = params.a2b2.gamma;
  // Term by term per context; the eta2' term enters with a single power (its
  // printed square is inconsistent with the projector path and with the
  // symmetry of the sibling terms).
  const double t_g1 = g1 * (2.0 * g1 * (g1 * (r(g1) + g1) - 1.0) - r(g1));
  const double t_g2 = -g2 * (r(g2) + 2.0 * g2 * (g2 * g2 - g2 * r(g2) - 1.0));
  const double t_ep1 = ep1 * (r(ep1) + 2.0 * ep1 * (ep1 * ep1 - ep1 * r(ep1) - 1.0));
  const double t_ep2 = ep2 * (r(ep2) - 2.0 * ep2 * (ep2 * (r(ep2) + ep2) - 1.0));
  const double t_e1 = e1 * (2.0 * e1 * (e1 * (r(e1) + e1) - 1.0) - r(e1));
  const double t_e2 = -e2 * (r(e2) + 2.0 * e2 * (e2 * e2 - r(e2) * e2 - 1.0));
  const double t_gp1 = gp1 * (2.0 * gp1 * (gp1 * (-r(gp1) + gp1) - 1.0) + r(gp1));
  const double t_gp2 = gp2 * (r(gp2) - 2.0 * gp2 * (gp2 * gp2 + gp2 * r(gp2) - 1.0));
  return (2.0 + t_g1 + t_g2 + t_ep1 + t_ep2 + t_e1 + t_e2 + t_gp1 + t_gp2) /
         std::sqrt(2.0);
}

std::string_view sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::kEta1: return "eta1";
    case SweepParameter::kGamma1: return "gamma1";
    case SweepParameter::kEta1Prime: return "eta1p";
    case SweepParameter::kGamma1Prime: return "gamma1p";
    case SweepParameter::kEta2: return "eta2";
    case SweepParameter::kGamma2: return "gamma2";
    case SweepParameter::kEta2Prime: return "eta2p";
    default: return "gamma2p";
  }
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (int i = 0; i < 8; ++i) {
    const auto p = static_cast<SweepParameter>(i);
    if (sweep_parameter_name(p) == name) return p;
  }
  return std::nullopt;
}

double get_param(const BasisParams& params, SweepParameter which) {
  const int i = static_cast<int>(which);
  const ContextBasisParams c = context_params(params, i / 2);
  return i % 2 == 0 ? c.eta : c.gamma;
}

void set_param(BasisParams& params, SweepParameter which, double value) {
  const int i = static_cast<int>(which);
  ContextBasisParams* c = nullptr;
  switch (i / 2) {
    case 0: c = &params.a1b1; break;
    case 1: c = &params.a1b2; break;
    case 2: c = &params.a2b1; break;
    default: c = &params.a2b2; break;
  }
  (i % 2 == 0 ? c->eta : c->gamma) = value;
}

void validate(const SweepSpec& spec) {
  validate(spec.fixed);
  if (!(spec.from <= spec.to)) throw ParamOutOfRange("sweep range requires from <= to");
  if (!(spec.from >= 0.0 && spec.to <= 1.0)) {
    throw ParamOutOfRange("sweep range must lie in [0, 1]");
  }
  if (spec.steps < 2) throw ParamOutOfRange("sweep needs at least 2 steps");
}

std::vector<SweepPoint> sweep(const SharedState& state, UpdateRule rule,
                              const SweepSpec& spec) {
  return run_sweep(state, rule, spec, sweep_point, /*parallel=*/true);
}

std::vector<SweepPoint> sweep_serial(const SharedState& state, UpdateRule rule,
                                     const SweepSpec& spec) {
  return run_sweep(state, rule, spec, sweep_point, /*parallel=*/false);
}

void validate(const OptimizeSpec& spec) {
  if (spec.restarts < 1) throw ParamOutOfRange("optimizer needs at least 1 restart");
  if (spec.refine_iters < 1) throw ParamOutOfRange("optimizer needs refine_iters >= 1");
  if (spec.grid_resolution < 2) throw ParamOutOfRange("optimizer needs grid_resolution >= 2");
}

OptimizeResult optimize(const SharedState& state, UpdateRule rule,
                        const OptimizeSpec& spec) {
  return run_optimize(state, rule, spec, /*parallel=*/true);
}

OptimizeResult optimize_serial(const SharedState& state, UpdateRule rule,
                               const OptimizeSpec& spec) {
  return run_optimize(state, rule, spec, /*parallel=*/false);
}

double signaling_metric(const SharedState& state, AliceSetting a, BobSetting b,
                        const ContextBasisParams& p1, const ContextBasisParams& p2,
                        UpdateRule rule) {
  const ComplexMatrix rho = density(state);
  const auto marginal = [&](const ContextBasisParams& p) {
    return joint_distribution(rho, rotated_family(a, p), cached_bob(b), rule)
        .bob_marginal();
  };
  const auto m1 = marginal(p1);
  const auto m2 = marginal(p2);
  return std::max(std::abs(m1[0] - m2[0]), std::abs(m1[1] - m2[1]));
}

SweepPreset fig1_preset() {
  SweepSpec spec;
  spec.varied = SweepParameter::kGamma1;
  spec.fixed = BasisParams{{0.98, 0.0}, {0.20, 0.20}, {0.83, 0.83}, {0.57, 0.57}};
  return SweepPreset{make_entangled({std::numbers::pi / 4.0, std::numbers::pi / 4.0}), spec};
}

SweepPreset fig2_preset() {
  SweepSpec spec;
  spec.varied = SweepParameter::kGamma1;
  spec.fixed = BasisParams{{0.20, 0.0}, {0.55, 0.0}, {0.85, 0.85}, {0.0, 0.55}};
  return SweepPreset{make_product({0.0, std::numbers::pi / 4.0}), spec};
}

}  // namespace chsh
