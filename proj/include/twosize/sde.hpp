#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "twosize/model.hpp"
#include "twosize/rng.hpp"

namespace twosize {

enum class DiffusionVariant {
  original,       // drift -(1-theta) x(1-x) + rho(x)
  strict_variant  // drift rho(x)
};

// Limiting diffusion on [0,1]: drift per variant, squared diffusion
// x(1-x)(1-(1-theta)x). rho must satisfy rho(0) >= 0 and rho(1) <= 0.
struct DiffusionSpec {
  double theta = 0.5;
  DiffusionVariant variant = DiffusionVariant::original;
  std::function<double(double)> rho;
  double rho_at_0 = 0.0;
  double rho_at_1 = 0.0;

  static DiffusionSpec make(double theta, std::function<double(double)> rho,
                            DiffusionVariant variant = DiffusionVariant::original);
  static DiffusionSpec from_spec(const RhoSpec& spec, double theta,
                                 DiffusionVariant variant = DiffusionVariant::original);
};

double drift(double x, const DiffusionSpec& spec);
double diffusion_sq(double x, const DiffusionSpec& spec);

// Generator applied to f given (f(x), f'(x), f''(x)):
// d(x) f'(x) + 0.5 sigma^2(x) f''(x).
double generator_apply(double f_value, double f_d1, double f_d2, double x,
                       const DiffusionSpec& spec);

struct SdePath {
  std::vector<double> times;
  std::vector<double> values;
  // set at first boundary contact when that boundary is absorbing
  std::optional<std::pair<double, double>> absorbed_at;  // (time, boundary)
};

// Euler scheme with clamping to [0,1]; a boundary is sticky when the
// corresponding mutation rate vanishes (rho(0)=0 resp. rho(1)=0).
SdePath euler_maruyama(double x0, const DiffusionSpec& spec, double h, double T,
                       RngStream& rng);

struct HittingTimeResult {
  double p_hit0 = 0.0;  // estimate of P_x(T0 < T1)
  double p_hit0_se = 0.0;
  double mean_t01 = 0.0;  // mean absorption time over absorbed paths
  double mean_t01_se = 0.0;
  std::int64_t n_sim = 0;
  std::int64_t n_timeout = 0;
  double timeout_frac = 0.0;
  bool timeout_flagged = false;  // timeout fraction above 1%
};

// First-hitting Monte Carlo for absorbing setups (rho(0)=0 and rho(1)=0);
// throws NonAbsorbingError otherwise. Paths exceeding max_T are counted
// separately. Deterministic for any worker count (one stream per path block).
HittingTimeResult hitting_time_mc(double x0, const DiffusionSpec& spec, double h,
                                  std::int64_t n_sim, double max_T,
                                  std::uint64_t seed, int workers = 1);

}  // namespace twosize
