#include "twosize/wright_fisher.hpp"

#include <algorithm>
#include <cmath>

namespace twosize {

GenerationState initial_state(double x0, const RhoSpec& spec,
                              const SizeParams& params) {
  if (x0 < 0.0 || x0 > 1.0) throw OutOfRangeError("x0 must lie in [0,1]");
  const double p0 = rho_finite(spec, params, x0);
  const std::int64_t m0 = std::max<std::int64_t>(
      1, std::llround(params.resources() / mu(p0, params.theta())));
  const double snapped =
      std::llround(x0 * static_cast<double>(m0)) / static_cast<double>(m0);
  return GenerationState{snapped, m0};
}

GenerationState step_generation(const GenerationState& state,
                                const RhoSpec& spec, const SizeParams& params,
                                bool strict, RngStream& rng) {
  const double p = rho_finite(spec, params, state.x_freq);
  if (!strict) {
    const auto outcome = sample_passage(p, params, rng);
    return GenerationState{static_cast<double>(outcome.k_small) /
                               static_cast<double>(outcome.tau),
                           outcome.tau};
  }
  const auto outcome = sample_passage_strict(p, params, rng);
  if (outcome.kept == 0)
    throw OutOfRangeError(
        "strict stopping rule produced an empty generation; needs R >= 1");
  return GenerationState{static_cast<double>(outcome.k_small) /
                             static_cast<double>(outcome.kept),
                         outcome.kept};
}

GenerationState step_generation_reference(const GenerationState& state,
                                          const RhoSpec& spec,
                                          const SizeParams& params, bool strict,
                                          RngStream& rng) {
  // parent sampling and mutation as separate stages, with the mutation rates
  // and selection function read off rho_R through the boundary decomposition
  const auto decomp = decompose_rho_finite(
      [&](double x) { return rho_finite(spec, params, x); });
  const double beta0 = decomp.beta0_R;
  const double beta1 = decomp.beta1_R;
  const double s_here = decomp.s_R(state.x_freq);

  const LatticeGeom geom(params);
  std::int64_t i = 0, j = 0;
  while (true) {
    if (!strict && !geom.below(i, j)) break;
    const bool parent_small = rng.bernoulli(s_here);
    const bool offspring_small =
        parent_small ? !rng.bernoulli(beta1) : rng.bernoulli(beta0);
    const std::int64_t ni = i + (offspring_small ? 1 : 0);
    const std::int64_t nj = j + (offspring_small ? 0 : 1);
    if (strict && !geom.at_most(ni, nj)) break;  // reject the overshooting one
    i = ni;
    j = nj;
  }
  const std::int64_t m = i + j;
  if (m == 0)
    throw OutOfRangeError(
        "strict stopping rule produced an empty generation; needs R >= 1");
  return GenerationState{static_cast<double>(i) / static_cast<double>(m), m};
}

Trajectory simulate_trajectory(double x0, const RhoSpec& spec,
                               const SizeParams& params, bool strict,
                               std::int64_t n_gens, RngStream& rng,
                               std::int64_t stride) {
  if (n_gens < 0) throw ConfigError("n_gens must be >= 0");
  constexpr std::int64_t kMaxRecorded = 100'000;
  if (stride <= 0) stride = 1;
  if (n_gens / stride > kMaxRecorded) stride = (n_gens + kMaxRecorded - 1) / kMaxRecorded;

  Trajectory traj;
  traj.stride = stride;
  GenerationState state = initial_state(x0, spec, params);
  traj.gens.push_back(0);
  traj.states.push_back(state);
  for (std::int64_t g = 1; g <= n_gens; ++g) {
    state = step_generation(state, spec, params, strict, rng);
    if (g % stride == 0 || g == n_gens) {
      traj.gens.push_back(g);
      traj.states.push_back(state);
    }
  }
  return traj;
}

DiscreteLaw exact_one_step_law(double x, const RhoSpec& spec,
                               const SizeParams& params, bool strict) {
  const double p = rho_finite(spec, params, x);
  return exact_passage_law(p, params, strict);
}

}  // namespace twosize
