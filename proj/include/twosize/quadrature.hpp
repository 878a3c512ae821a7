#pragma once

#include <functional>

#include "twosize/errors.hpp"

namespace twosize {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  int intervals = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (G7, K15) with worst-interval refinement.
// Endpoints are never evaluated, so integrable endpoint behavior is fine as
// long as the integrand is finite on the open interval.
QuadResult adaptive_quad(const std::function<double(double)>& f, double a,
                         double b, double abs_tol, int max_intervals = 10000);

// As adaptive_quad but throws QuadratureFailureError when the tolerance is
// not met within the interval budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_intervals = 10000);

}  // namespace twosize
