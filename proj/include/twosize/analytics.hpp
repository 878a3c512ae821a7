#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twosize/quadrature.hpp"
#include "twosize/sde.hpp"

namespace twosize {

// Scale-function setup for drift sel(z) z(1-z) against the squared diffusion
// z(1-z)(1-(1-theta)z). The original model has sel(z) = s(z) - (1-theta),
// the strict variant sel(z) = s(z). S(x0_ref) = 0 by construction and the
// scale density is normalized at eta.
struct ScaleSpec {
  double theta = 0.5;
  std::function<double(double)> s;       // selection function in rho(x)=s(x)x(1-x)
  std::optional<double> s_const;         // set when s is constant (closed forms)
  DiffusionVariant variant = DiffusionVariant::original;
  double x0_ref = 0.5;
  double eta = 0.5;

  static ScaleSpec genic(double theta, double s,
                         DiffusionVariant variant = DiffusionVariant::original);
  static ScaleSpec general(double theta, std::function<double(double)> s,
                           DiffusionVariant variant = DiffusionVariant::original);
};

// Scale density S'(y); closed form for constant selection, nested adaptive
// quadrature otherwise.
double scale_prime(double y, const ScaleSpec& spec, double tol = 1e-10);

// Scale function S(x) with S(x0_ref) = 0, strictly increasing.
double scale_function(double x, const ScaleSpec& spec, double tol = 1e-8);

// Closed-form P_x(T0 < T1) for genic selection rho(x) = s x(1-x), with the
// logarithmic branch at 1 - theta = 2s.
double extinction_prob_genic(double x, double theta, double s);

// Closed-form E_x[T0 ^ T1] for the selection-free case.
double mean_absorption_neutral(double x, double theta);

// E_x[T0 ^ T1] for genic selection by Green's-function quadrature. Agrees
// with mean_absorption_neutral at s = 0. No-mutation setting only.
double mean_absorption_numeric(double x, double theta, double s,
                               double tol = 1e-8,
                               DiffusionVariant variant = DiffusionVariant::original);

struct AnalyticsResult {
  std::string kind;
  std::vector<double> grid;
  std::vector<double> values;
  std::map<std::string, double> meta;  // parameters and quadrature diagnostics
};

// Normalized stationary density on x_grid for rho(x) = beta0(1-x) - beta1 x
// + s x(1-x) with beta0, beta1 > 0. Endpoint singularities are removed by
// power substitutions before quadrature. meta["norm_check"] re-integrates
// the returned normalization through a different subdivision.
AnalyticsResult stationary_density(const std::vector<double>& x_grid,
                                   double theta, double beta0, double beta1,
                                   double s, double tol = 1e-8);

// Unnormalized stationary density value (used by the oracle tests).
double stationary_density_unnormalized(double x, double theta, double beta0,
                                       double beta1, double s);

AnalyticsResult extinction_scan(const std::vector<double>& x_grid, double theta,
                                double s);

AnalyticsResult absorption_scan(const std::vector<double>& x_grid, double theta,
                                double s, double tol = 1e-8);

}  // namespace twosize
