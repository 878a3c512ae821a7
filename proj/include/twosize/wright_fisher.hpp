#pragma once

#include <cstdint>
#include <vector>

#include "twosize/model.hpp"
#include "twosize/renewal.hpp"
#include "twosize/rng.hpp"

namespace twosize {

// Frequency of small individuals and population size of one generation.
struct GenerationState {
  double x_freq = 0.0;
  std::int64_t m_size = 0;
};

struct Trajectory {
  std::vector<std::int64_t> gens;
  std::vector<GenerationState> states;
  std::int64_t stride = 1;  // recording stride; 1 means every generation
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
};

// Initial state for a requested frequency x0: the size is matched to the
// resource budget through the mean consumption, m0 = round(R / mu(rho_R(x0))),
// and x0 is snapped to the nearest achievable count fraction.
GenerationState initial_state(double x0, const RhoSpec& spec,
                              const SizeParams& params);

// One reproduction step through the renewal representation: a passage run at
// p = rho_R(x) maps to the next (frequency, size) pair.
GenerationState step_generation(const GenerationState& state,
                                const RhoSpec& spec, const SizeParams& params,
                                bool strict, RngStream& rng);

// Slow reference step that samples parent choice and mutation separately per
// offspring, following the generative description of the model. Identical in
// law to step_generation; kept for cross-validation.
GenerationState step_generation_reference(const GenerationState& state,
                                          const RhoSpec& spec,
                                          const SizeParams& params, bool strict,
                                          RngStream& rng);

// Iterates step_generation n_gens times, recording every `stride`-th state
// (plus the final one). stride <= 0 selects automatic downsampling that
// keeps at most 100000 recorded generations.
Trajectory simulate_trajectory(double x0, const RhoSpec& spec,
                               const SizeParams& params, bool strict,
                               std::int64_t n_gens, RngStream& rng,
                               std::int64_t stride = 1);

// Exact one-step law of (X1, M1): the passage-law oracle pushed through the
// renewal identity. Atom (k_small, k_large) carries X1 = k_small/(k_small +
// k_large) and M1 = k_small + k_large.
DiscreteLaw exact_one_step_law(double x, const RhoSpec& spec,
                               const SizeParams& params, bool strict);

inline double atom_frequency(const LawAtom& a) {
  return static_cast<double>(a.k_small) /
         static_cast<double>(a.k_small + a.k_large);
}

}  // namespace twosize
