#include "twosize/analytics.hpp"

#include <algorithm>
#include <cmath>

namespace twosize {

namespace {

double effective_selection_const(const ScaleSpec& spec) {
  const double s0 = *spec.s_const;
  return spec.variant == DiffusionVariant::original ? s0 - (1.0 - spec.theta)
                                                    : s0;
}

// psi(y) = (1 - (1-theta) y) / (1 - (1-theta) eta)
double psi(double y, double theta, double eta) {
  return (1.0 - (1.0 - theta) * y) / (1.0 - (1.0 - theta) * eta);
}

// Antiderivative of psi(y)^gamma (gamma = 2c/(1-theta)), normalized so the
// scale function is A(x) - A(x0_ref). kappa = gamma + 1 switches to the
// logarithmic branch at zero.
struct ClosedScale {
  double theta, eta, gamma, kappa, denom;

  ClosedScale(double theta_, double eta_, double sel_const)
      : theta(theta_), eta(eta_) {
    gamma = 2.0 * sel_const / (1.0 - theta);
    kappa = gamma + 1.0;
    denom = 1.0 - (1.0 - theta) * eta;
  }

  double prime(double y) const { return std::pow(psi(y, theta, eta), gamma); }

  double anti(double y) const {
    const double ps = psi(y, theta, eta);
    if (std::abs(kappa) < 1e-12)
      return -denom * std::log(ps) / (1.0 - theta);
    return -denom * std::pow(ps, kappa) / (kappa * (1.0 - theta));
  }
};

double sigma_sq(double x, double theta) {
  return x * (1.0 - x) * (1.0 - (1.0 - theta) * x);
}

}  // namespace

ScaleSpec ScaleSpec::genic(double theta, double s, DiffusionVariant variant) {
  ScaleSpec spec;
  spec.theta = theta;
  spec.s_const = s;
  spec.s = [s](double) { return s; };
  spec.variant = variant;
  return spec;
}

ScaleSpec ScaleSpec::general(double theta, std::function<double(double)> s,
                             DiffusionVariant variant) {
  ScaleSpec spec;
  spec.theta = theta;
  spec.s = std::move(s);
  spec.variant = variant;
  return spec;
}

double scale_prime(double y, const ScaleSpec& spec, double tol) {
  if (y < 0.0 || y > 1.0) throw OutOfRangeError("y must lie in [0,1]");
  if (spec.s_const) {
    const ClosedScale cs(spec.theta, spec.eta, effective_selection_const(spec));
    return cs.prime(y);
  }
  // the -(1-theta) drift part integrates in closed form: psi(y)^{-2};
  // the s-part falls to quadrature
  const double theta = spec.theta;
  const double base =
      spec.variant == DiffusionVariant::original
          ? std::pow(psi(y, theta, spec.eta), -2.0)
          : 1.0;
  const auto integrand = [&](double z) {
    return spec.s(z) / (1.0 - (1.0 - theta) * z);
  };
  const double inner = integrate(integrand, spec.eta, y, tol);
  const double value = base * std::exp(-2.0 * inner);
  if (!std::isfinite(value))
    throw SingularEndpointError("scale density not finite at requested point");
  return value;
}

double scale_function(double x, const ScaleSpec& spec, double tol) {
  if (x < 0.0 || x > 1.0) throw OutOfRangeError("x must lie in [0,1]");
  if (spec.s_const) {
    const ClosedScale cs(spec.theta, spec.eta, effective_selection_const(spec));
    return cs.anti(x) - cs.anti(spec.x0_ref);
  }
  const auto prime = [&](double y) { return scale_prime(y, spec, tol * 1e-2); };
  return integrate(prime, spec.x0_ref, x, tol);
}

double extinction_prob_genic(double x, double theta, double s) {
  if (x < 0.0 || x > 1.0) throw OutOfRangeError("x must lie in [0,1]");
  const double hx = 1.0 - (1.0 - theta) * x;
  if (std::abs(1.0 - theta - 2.0 * s) < 1e-10)
    return (std::log(theta) - std::log(hx)) / std::log(theta);
  const double kappa = -1.0 + 2.0 * s / (1.0 - theta);
  // expm1 keeps the ratio stable when kappa is close to the branch point
  const double a = std::expm1(kappa * std::log(theta));
  const double b = std::expm1(kappa * std::log(hx));
  return (a - b) / a;
}

double mean_absorption_neutral(double x, double theta) {
  if (x < 0.0 || x > 1.0) throw OutOfRangeError("x must lie in (0,1)");
  if (x == 0.0 || x == 1.0) return 0.0;
  const double g = 1.0 / (1.0 - (1.0 - theta) * x);
  const double inv_theta = 1.0 / theta;
  return 2.0 * std::log(1.0 - x) * (inv_theta - g) / (1.0 - inv_theta) +
         2.0 * std::log(x) * (1.0 - g) / (1.0 - theta);
}

double mean_absorption_numeric(double x, double theta, double s, double tol,
                               DiffusionVariant variant) {
  if (x <= 0.0 || x >= 1.0) {
    if (x == 0.0 || x == 1.0) return 0.0;
    throw OutOfRangeError("x must lie in (0,1)");
  }
  const double sel =
      variant == DiffusionVariant::original ? s - (1.0 - theta) : s;
  const ClosedScale cs(theta, 0.5, sel);
  const double s0 = cs.anti(0.0);
  const double s1 = cs.anti(1.0);
  const double sx = cs.anti(x);

  const auto lower = [&](double nu) {
    return (cs.anti(nu) - s0) / (sigma_sq(nu, theta) * cs.prime(nu));
  };
  const auto upper = [&](double nu) {
    return (s1 - cs.anti(nu)) / (sigma_sq(nu, theta) * cs.prime(nu));
  };
  const double i_lower = integrate(lower, 0.0, x, tol / 4.0);
  const double i_upper = integrate(upper, x, 1.0, tol / 4.0);
  const double span = s1 - s0;
  return 2.0 * ((s1 - sx) * i_lower + (sx - s0) * i_upper) / span;
}

double stationary_density_unnormalized(double x, double theta, double beta0,
                                       double beta1, double s) {
  const double a0 = 2.0 * beta0 - 1.0;
  const double a1 = 2.0 * beta1 / theta - 1.0;
  const double e2 = 1.0 - 2.0 * beta0 - 2.0 * beta1 / theta -
                    2.0 * s / (1.0 - theta);
  double log_u = e2 * std::log(1.0 - (1.0 - theta) * x);
  if (x == 0.0) {
    if (a0 < 0.0)
      throw SingularEndpointError("stationary density diverges at x = 0");
    if (a0 > 0.0) return 0.0;
  } else {
    log_u += a0 * std::log(x);
  }
  if (x == 1.0) {
    if (a1 < 0.0)
      throw SingularEndpointError("stationary density diverges at x = 1");
    if (a1 > 0.0) return 0.0;
  } else {
    log_u += a1 * std::log(1.0 - x);
  }
  return std::exp(log_u);
}

namespace {

// integral of the unnormalized density over [0,1]; endpoint powers are
// removed with the substitutions t = x^{2 b0} and v = (1-x)^{2 b1 / theta}
double stationary_norm(double theta, double beta0, double beta1, double s,
                       double split, double tol) {
  const double a1 = 2.0 * beta1 / theta - 1.0;
  const double e2 = 1.0 - 2.0 * beta0 - 2.0 * beta1 / theta -
                    2.0 * s / (1.0 - theta);
  const double a0 = 2.0 * beta0 - 1.0;

  const auto smooth_left = [&](double x) {
    return std::pow(1.0 - x, a1) * std::pow(1.0 - (1.0 - theta) * x, e2);
  };
  const auto smooth_right = [&](double x) {
    return std::pow(x, a0) * std::pow(1.0 - (1.0 - theta) * x, e2);
  };

  const double p0 = 2.0 * beta0;
  const double left = integrate(
      [&](double t) { return smooth_left(std::pow(t, 1.0 / p0)) / p0; }, 0.0,
      std::pow(split, p0), tol / 2.0);

  const double p1 = 2.0 * beta1 / theta;
  const double right = integrate(
      [&](double v) { return smooth_right(1.0 - std::pow(v, 1.0 / p1)) / p1; },
      0.0, std::pow(1.0 - split, p1), tol / 2.0);
  return left + right;
}

}  // namespace

AnalyticsResult stationary_density(const std::vector<double>& x_grid,
                                   double theta, double beta0, double beta1,
                                   double s, double tol) {
  if (beta0 <= 0.0 || beta1 <= 0.0)
    throw NonIntegrableError("stationary density needs beta0 > 0 and beta1 > 0");

  const double norm = stationary_norm(theta, beta0, beta1, s, 0.5, tol);
  // independent re-integration through a different split as a diagnostic
  const double norm_alt = stationary_norm(theta, beta0, beta1, s, 0.4, tol);

  AnalyticsResult out;
  out.kind = "stationary_density";
  out.grid = x_grid;
  out.values.reserve(x_grid.size());
  for (double x : x_grid)
    out.values.push_back(
        stationary_density_unnormalized(x, theta, beta0, beta1, s) / norm);
  out.meta["theta"] = theta;
  out.meta["beta0"] = beta0;
  out.meta["beta1"] = beta1;
  out.meta["s"] = s;
  out.meta["normalization"] = norm;
  out.meta["norm_check"] = norm_alt / norm;
  out.meta["tol"] = tol;
  return out;
}

AnalyticsResult extinction_scan(const std::vector<double>& x_grid, double theta,
                                double s) {
  AnalyticsResult out;
  out.kind = "extinction";
  out.grid = x_grid;
  out.values.reserve(x_grid.size());
  for (double x : x_grid) out.values.push_back(extinction_prob_genic(x, theta, s));
  out.meta["theta"] = theta;
  out.meta["s"] = s;
  return out;
}

AnalyticsResult absorption_scan(const std::vector<double>& x_grid, double theta,
                                double s, double tol) {
  AnalyticsResult out;
  out.kind = "absorption_time";
  out.grid = x_grid;
  out.values.reserve(x_grid.size());
  for (double x : x_grid) {
    if (s == 0.0)
      out.values.push_back(mean_absorption_neutral(x, theta));
    else
      out.values.push_back(mean_absorption_numeric(x, theta, s, tol));
  }
  out.meta["theta"] = theta;
  out.meta["s"] = s;
  out.meta["tol"] = tol;
  return out;
}

}  // namespace twosize
