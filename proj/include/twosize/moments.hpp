#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twosize/model.hpp"
#include "twosize/sde.hpp"
#include "twosize/wright_fisher.hpp"

namespace twosize {

// Limit of R E_x[(X1 - x)^n]: the drift for n=1, the squared diffusion for
// n=2, zero for n=3,4. Throws UnsupportedOrderError outside 1..4.
double moment_limit(double x, int order, double theta, const RhoSpec& spec,
                    DiffusionVariant variant = DiffusionVariant::original);

struct MomentEstimate {
  double estimate = 0.0;
  double std_err = 0.0;
  std::int64_t n_sim = 0;
};

// Sample mean of R (X1 - x)^n over one-step simulations, with sample
// standard error. Reproducible for any worker count.
MomentEstimate moment_estimate(double x, int order, const RhoSpec& spec,
                               const SizeParams& params, std::int64_t n_sim,
                               std::uint64_t seed, int workers = 1,
                               bool strict = false);

// Exact R E_x[(X1 - x)^n] through the one-step lattice law.
double moment_exact(double x, int order, const RhoSpec& spec,
                    const SizeParams& params, bool strict = false);

// Exact E_x[(X1 - rho_R(x))^n], the centered version used by the renewal
// reduction (no R factor).
double moment_exact_centered(double x, int order, const RhoSpec& spec,
                             const SizeParams& params, bool strict = false);

enum class GeneratorMethod { monte_carlo, exact_dp };

// Discrete generator R E_x[f(X1) - f(x)] by Monte Carlo or the exact law.
double discrete_generator(const std::function<double(double)>& f, double x,
                          const RhoSpec& spec, const SizeParams& params,
                          GeneratorMethod method, std::int64_t n_sim = 0,
                          std::uint64_t seed = 0, int workers = 1,
                          bool strict = false);

struct MomentReport {
  std::vector<double> x_grid;
  int order = 1;
  std::vector<double> estimates;
  std::vector<double> std_errs;
  std::vector<double> theory;
  double resources = 0.0;
  double theta = 0.0;
  std::string rho_name;
  std::string method;  // "mc" or "exact-dp"
  bool strict = false;
};

// Sweep of R E_x[(X1-x)^n] over a frequency grid against the limit curve.
MomentReport moment_scan(const std::vector<double>& x_grid, int order,
                         const RhoSpec& spec, const SizeParams& params,
                         GeneratorMethod method, std::int64_t n_sim,
                         std::uint64_t seed, int workers = 1,
                         bool strict = false);

}  // namespace twosize
