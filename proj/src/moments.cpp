#include "twosize/moments.hpp"

#include <algorithm>
#include <cmath>

#include "twosize/parallel.hpp"

namespace twosize {

namespace {

constexpr std::int64_t kBlockSize = 65'536;

double pow_int(double v, int n) {
  double acc = 1.0;
  for (int k = 0; k < n; ++k) acc *= v;
  return acc;
}

// shared Monte Carlo loop: accumulates g(X1) over one-step simulations
MomentEstimate one_step_mc(const std::function<double(double)>& g, double x,
                           const RhoSpec& spec, const SizeParams& params,
                           std::int64_t n_sim, std::uint64_t seed, int workers,
                           bool strict) {
  if (n_sim < 2) throw ConfigError("n_sim must be >= 2");
  const double p = rho_finite(spec, params, x);
  const std::int64_t n_blocks = (n_sim + kBlockSize - 1) / kBlockSize;
  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::vector<Partial> partials(static_cast<std::size_t>(n_blocks));

  parallel_for_index(n_blocks, workers, [&](std::int64_t b) {
    RngStream rng(seed, static_cast<std::uint64_t>(b));
    Partial part;
    const std::int64_t lo = b * kBlockSize;
    const std::int64_t hi = std::min(n_sim, lo + kBlockSize);
    for (std::int64_t k = lo; k < hi; ++k) {
      double x1;
      if (strict) {
        const auto outcome = sample_passage_strict(p, params, rng);
        x1 = static_cast<double>(outcome.k_small) /
             static_cast<double>(outcome.kept);
      } else {
        const auto outcome = sample_passage(p, params, rng);
        x1 = static_cast<double>(outcome.k_small) /
             static_cast<double>(outcome.tau);
      }
      const double v = g(x1);
      part.sum += v;
      part.sum_sq += v * v;
    }
    partials[static_cast<std::size_t>(b)] = part;
  });

  long double sum = 0.0L, sum_sq = 0.0L;
  for (const auto& part : partials) {
    sum += part.sum;
    sum_sq += part.sum_sq;
  }
  MomentEstimate est;
  est.n_sim = n_sim;
  est.estimate = static_cast<double>(sum / n_sim);
  const long double var =
      std::max(0.0L, (sum_sq - sum * sum / n_sim) /
                         static_cast<long double>(n_sim - 1));
  est.std_err = std::sqrt(static_cast<double>(var) / n_sim);
  return est;
}

}  // namespace

double moment_limit(double x, int order, double theta, const RhoSpec& spec,
                    DiffusionVariant variant) {
  if (order < 1 || order > 4)
    throw UnsupportedOrderError("moment order must lie in 1..4");
  switch (order) {
    case 1: {
      const double sel = rho_limit(spec, x);
      if (variant == DiffusionVariant::strict_variant) return sel;
      return -(1.0 - theta) * x * (1.0 - x) + sel;
    }
    case 2:
      return x * (1.0 - x) * (1.0 - (1.0 - theta) * x);
    default:
      return 0.0;
  }
}

MomentEstimate moment_estimate(double x, int order, const RhoSpec& spec,
                               const SizeParams& params, std::int64_t n_sim,
                               std::uint64_t seed, int workers, bool strict) {
  const double R = params.resources();
  return one_step_mc(
      [x, order, R](double x1) { return R * pow_int(x1 - x, order); }, x, spec,
      params, n_sim, seed, workers, strict);
}

double moment_exact(double x, int order, const RhoSpec& spec,
                    const SizeParams& params, bool strict) {
  const auto law = exact_one_step_law(x, spec, params, strict);
  const double R = params.resources();
  return R * law.expect([&](const LawAtom& a) {
    return pow_int(atom_frequency(a) - x, order);
  });
}

double moment_exact_centered(double x, int order, const RhoSpec& spec,
                             const SizeParams& params, bool strict) {
  const double p = rho_finite(spec, params, x);
  const auto law = exact_one_step_law(x, spec, params, strict);
  return law.expect([&](const LawAtom& a) {
    return pow_int(atom_frequency(a) - p, order);
  });
}

double discrete_generator(const std::function<double(double)>& f, double x,
                          const RhoSpec& spec, const SizeParams& params,
                          GeneratorMethod method, std::int64_t n_sim,
                          std::uint64_t seed, int workers, bool strict) {
  const double R = params.resources();
  const double fx = f(x);
  if (method == GeneratorMethod::exact_dp) {
    const auto law = exact_one_step_law(x, spec, params, strict);
    return R * law.expect([&](const LawAtom& a) {
      return f(atom_frequency(a)) - fx;
    });
  }
  const auto est = one_step_mc(
      [&f, fx, R](double x1) { return R * (f(x1) - fx); }, x, spec, params,
      n_sim, seed, workers, strict);
  return est.estimate;
}

MomentReport moment_scan(const std::vector<double>& x_grid, int order,
                         const RhoSpec& spec, const SizeParams& params,
                         GeneratorMethod method, std::int64_t n_sim,
                         std::uint64_t seed, int workers, bool strict) {
  MomentReport report;
  report.x_grid = x_grid;
  report.order = order;
  report.resources = params.resources();
  report.theta = params.theta();
  report.rho_name = spec.name();
  report.method = method == GeneratorMethod::exact_dp ? "exact-dp" : "mc";
  report.strict = strict;
  report.estimates.resize(x_grid.size());
  report.std_errs.resize(x_grid.size());
  report.theory.resize(x_grid.size());

  const auto variant = strict ? DiffusionVariant::strict_variant
                              : DiffusionVariant::original;
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double x = x_grid[i];
    report.theory[i] = moment_limit(x, order, params.theta(), spec, variant);
    if (method == GeneratorMethod::exact_dp) {
      report.estimates[i] = moment_exact(x, order, spec, params, strict);
      report.std_errs[i] = 0.0;
    } else {
      // one stream family per grid point: stream index = point * 2^32 + block
      const std::uint64_t point_seed =
          seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(i) + 1));
      const auto est = moment_estimate(x, order, spec, params, n_sim,
                                       point_seed, workers, strict);
      report.estimates[i] = est.estimate;
      report.std_errs[i] = est.std_err;
    }
  }
  return report;
}

}  // namespace twosize
