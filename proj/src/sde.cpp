#include "twosize/sde.hpp"

#include <algorithm>
#include <cmath>

#include "twosize/parallel.hpp"

namespace twosize {

DiffusionSpec DiffusionSpec::make(double theta, std::function<double(double)> rho,
                                  DiffusionVariant variant) {
  if (theta <= 0.0 || theta >= 1.0) throw ConfigError("theta must lie in (0,1)");
  DiffusionSpec spec;
  spec.theta = theta;
  spec.variant = variant;
  spec.rho = std::move(rho);
  spec.rho_at_0 = spec.rho(0.0);
  spec.rho_at_1 = spec.rho(1.0);
  if (spec.rho_at_0 < 0.0 || spec.rho_at_1 > 0.0)
    throw BoundarySignError("limit rho needs rho(0) >= 0 and rho(1) <= 0");
  return spec;
}

DiffusionSpec DiffusionSpec::from_spec(const RhoSpec& spec, double theta,
                                       DiffusionVariant variant) {
  return make(theta, [spec](double x) { return rho_limit(spec, x); }, variant);
}

double drift(double x, const DiffusionSpec& spec) {
  const double selection = spec.rho(x);
  if (spec.variant == DiffusionVariant::strict_variant) return selection;
  return -(1.0 - spec.theta) * x * (1.0 - x) + selection;
}

double diffusion_sq(double x, const DiffusionSpec& spec) {
  const double v = x * (1.0 - x) * (1.0 - (1.0 - spec.theta) * x);
  return std::max(v, 0.0);  // guards roundoff just outside [0,1]
}

double generator_apply(double f_value, double f_d1, double f_d2, double x,
                       const DiffusionSpec& spec) {
  (void)f_value;
  return drift(x, spec) * f_d1 + 0.5 * diffusion_sq(x, spec) * f_d2;
}

namespace {

struct PathEnd {
  double x = 0.0;
  double t = 0.0;
  bool absorbed = false;
  double boundary = 0.0;
};

// advances one path until absorption or t >= max_T; records nothing
PathEnd run_path(double x0, const DiffusionSpec& spec, double h, double max_T,
                 RngStream& rng) {
  const bool sticky0 = spec.rho_at_0 == 0.0;
  const bool sticky1 = spec.rho_at_1 == 0.0;
  PathEnd end;
  double x = x0;
  double t = 0.0;
  while (t < max_T) {
    if (x == 0.0 && sticky0) {
      end.absorbed = true;
      end.boundary = 0.0;
      break;
    }
    if (x == 1.0 && sticky1) {
      end.absorbed = true;
      end.boundary = 1.0;
      break;
    }
    const double noise = std::sqrt(diffusion_sq(x, spec) * h) * rng.normal();
    x = std::clamp(x + drift(x, spec) * h + noise, 0.0, 1.0);
    t += h;
  }
  end.x = x;
  end.t = t;
  return end;
}

}  // namespace

SdePath euler_maruyama(double x0, const DiffusionSpec& spec, double h, double T,
                       RngStream& rng) {
  if (h <= 0.0 || h > T) throw InvalidStepError("need 0 < h <= T");
  if (x0 < 0.0 || x0 > 1.0) throw OutOfRangeError("x0 must lie in [0,1]");
  const bool sticky0 = spec.rho_at_0 == 0.0;
  const bool sticky1 = spec.rho_at_1 == 0.0;

  const auto n_steps = static_cast<std::int64_t>(std::llround(T / h));
  SdePath path;
  path.times.reserve(static_cast<std::size_t>(n_steps) + 1);
  path.values.reserve(static_cast<std::size_t>(n_steps) + 1);

  double x = x0;
  path.times.push_back(0.0);
  path.values.push_back(x);
  if ((x == 0.0 && sticky0) || (x == 1.0 && sticky1))
    path.absorbed_at = {0.0, x};

  for (std::int64_t k = 1; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const bool frozen = path.absorbed_at.has_value();
    if (!frozen) {
      const double noise = std::sqrt(diffusion_sq(x, spec) * h) * rng.normal();
      x = std::clamp(x + drift(x, spec) * h + noise, 0.0, 1.0);
      if ((x == 0.0 && sticky0) || (x == 1.0 && sticky1))
        path.absorbed_at = {t, x};
    }
    path.times.push_back(t);
    path.values.push_back(x);
  }
  return path;
}

HittingTimeResult hitting_time_mc(double x0, const DiffusionSpec& spec, double h,
                                  std::int64_t n_sim, double max_T,
                                  std::uint64_t seed, int workers) {
  if (spec.rho_at_0 != 0.0 || spec.rho_at_1 != 0.0)
    throw NonAbsorbingError(
        "hitting times need absorbing boundaries (rho(0)=rho(1)=0)");
  if (h <= 0.0) throw InvalidStepError("need h > 0");
  if (n_sim < 1) throw ConfigError("n_sim must be >= 1");

  constexpr std::int64_t kPathBlock = 256;
  const std::int64_t n_blocks = (n_sim + kPathBlock - 1) / kPathBlock;
  struct Partial {
    std::int64_t hit0 = 0;
    std::int64_t absorbed = 0;
    double sum_t = 0.0;
    double sum_t2 = 0.0;
  };
  std::vector<Partial> partials(static_cast<std::size_t>(n_blocks));

  parallel_for_index(n_blocks, workers, [&](std::int64_t b) {
    RngStream rng(seed, static_cast<std::uint64_t>(b));
    Partial part;
    const std::int64_t lo = b * kPathBlock;
    const std::int64_t hi = std::min(n_sim, lo + kPathBlock);
    for (std::int64_t k = lo; k < hi; ++k) {
      const PathEnd end = run_path(x0, spec, h, max_T, rng);
      if (end.absorbed) {
        ++part.absorbed;
        if (end.boundary == 0.0) ++part.hit0;
        part.sum_t += end.t;
        part.sum_t2 += end.t * end.t;
      }
    }
    partials[static_cast<std::size_t>(b)] = part;
  });

  std::int64_t hit0 = 0, absorbed = 0;
  long double sum_t = 0.0L, sum_t2 = 0.0L;
  for (const auto& part : partials) {
    hit0 += part.hit0;
    absorbed += part.absorbed;
    sum_t += part.sum_t;
    sum_t2 += part.sum_t2;
  }

  HittingTimeResult out;
  out.n_sim = n_sim;
  out.n_timeout = n_sim - absorbed;
  out.timeout_frac = static_cast<double>(out.n_timeout) / n_sim;
  out.timeout_flagged = out.timeout_frac > 0.01;
  out.p_hit0 = static_cast<double>(hit0) / n_sim;
  out.p_hit0_se = std::sqrt(out.p_hit0 * (1.0 - out.p_hit0) / n_sim);
  if (absorbed > 0) {
    const double mean = static_cast<double>(sum_t / absorbed);
    out.mean_t01 = mean;
    if (absorbed > 1) {
      const double var =
          std::max(0.0L, (sum_t2 - sum_t * sum_t / absorbed) /
                             static_cast<long double>(absorbed - 1));
      out.mean_t01_se = std::sqrt(static_cast<double>(var) / absorbed);
    }
  }
  return out;
}

}  // namespace twosize
