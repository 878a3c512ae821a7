#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "twosize/errors.hpp"

namespace twosize {

// Exact rational offspring cost theta = num/den, reduced, 0 < num < den.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

// Offspring costs {theta, 1} and the per-generation resource budget R.
// When theta is given as an exact rational, lattice computations (passage
// sampling and the exact recursion) run on the integer grid scaled by den,
// so boundary hits S_n = R are decided without floating error.
class SizeParams {
 public:
  SizeParams(double theta, double resources);

  static SizeParams with_rational(std::int64_t num, std::int64_t den,
                                  double resources);

  double theta() const { return theta_; }
  double resources() const { return resources_; }
  const std::optional<Rational>& theta_rational() const { return rational_; }

 private:
  double theta_;
  double resources_;
  std::optional<Rational> rational_;
};

// --- sampling-probability families -----------------------------------------

struct Neutral {};

// rho_R(x) = (1 + s/R) x / (1 + (s/R) x); s > 0 favors small offspring,
// s < 0 favors large offspring. Limit s x (1-x).
struct GenicSelection {
  double s = 0.0;
};

// Selection through a random number G of potential parents: the offspring is
// small when any of the G candidates is small. weights[k-1] is the weight of
// G = k+1 at rate 1/R; weights are truncated at max_terms and renormalized.
struct FittestTypeWins {
  std::vector<double> weights;
  int max_terms = 64;
};

// rho_R(x) = x + (2s/R) x(1-x)((1-2h)x + h); limit 2s x(1-x)((1-2h)x+h).
struct Diploid {
  double s = 0.0;
  double h = 0.0;
};

// rho_R(x) = x (1 - beta1/R) + (1-x) beta0/R; limit beta0 (1-x) - beta1 x.
struct ParentIndependentMutation {
  double beta0 = 0.0;
  double beta1 = 0.0;
};

// User-supplied grids for rho_R and rho, evaluated by linear interpolation.
struct CustomTable {
  std::vector<double> x;
  std::vector<double> rho_finite;
  std::vector<double> rho_limit;
};

using RhoVariant = std::variant<Neutral, GenicSelection, FittestTypeWins,
                                Diploid, ParentIndependentMutation, CustomTable>;

class RhoSpec {
 public:
  RhoSpec() : variant_(Neutral{}) {}
  explicit RhoSpec(RhoVariant variant);

  const RhoVariant& variant() const { return variant_; }
  std::string name() const;

 private:
  RhoVariant variant_;
};

// Probability that a sampled parent places a small offspring, finite model.
// Throws OutOfRangeError when the parameter combination leaves [0,1] at this R.
double rho_finite(const RhoSpec& spec, const SizeParams& params, double x);

// Limit rho(x) of R (rho_R(x) - x); satisfies rho(0) >= 0 and rho(1) <= 0.
double rho_limit(const RhoSpec& spec, double x);

// --- decompositions ---------------------------------------------------------

struct FiniteDecomposition {
  double beta0_R = 0.0;
  double beta1_R = 0.0;
  std::function<double(double)> s_R;
  bool degenerate = false;  // rho_R(0) == rho_R(1); s_R was chosen arbitrarily
};

// Reads mutation rates off the boundary values and rescales the interior into
// a selection function. Requires rho_R to attain its extrema at {0,1}
// (checked on a grid); throws BoundaryViolationError otherwise.
FiniteDecomposition decompose_rho_finite(
    const std::function<double(double)>& rho_R, int grid_points = 1001);

struct LimitDecomposition {
  std::function<double(double)> sigma;
  double beta0 = 0.0;
  double beta1 = 0.0;
};

// rho(x) = sigma(x) + beta0 (1-x) - beta1 x with sigma(0) = sigma(1) = 0.
// Throws BoundarySignError when rho(0) < 0 or rho(1) > 0.
LimitDecomposition decompose_rho_limit(const std::function<double(double)>& rho,
                                       int grid_points = 101);

// --- increment law ----------------------------------------------------------

// mean increment 1 - (1-theta) p
double mu(double p, double theta);

// Var_p[xi] = (1-theta)^2 p (1-p)
double var_xi(double p, double theta);

// E_p[xi^2] = 1 - p (1-theta)(1+theta)
double e_xi_sq(double p, double theta);

// Increment distribution F_p = p delta_theta + (1-p) delta_1.
struct IncrementLaw {
  double p = 0.0;
  double theta = 0.5;

  double mean() const { return mu(p, theta); }
  double variance() const { return var_xi(p, theta); }
  double second_moment() const { return e_xi_sq(p, theta); }
};

}  // namespace twosize
