#include "twosize/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace twosize {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw ConfigError(msg);
}

double lerp_table(const std::vector<double>& xs, const std::vector<double>& ys,
                  double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

// s(x) = sum_k w_k (1-x)^k over the truncated, renormalized weights
double fittest_series(const std::vector<double>& w, double x) {
  const double y = 1.0 - x;
  double acc = 0.0;
  double yk = 1.0;
  for (double wk : w) {
    yk *= y;
    acc += wk * yk;
  }
  return acc;
}

}  // namespace

SizeParams::SizeParams(double theta, double resources)
    : theta_(theta), resources_(resources) {
  require(theta > 0.0 && theta < 1.0, "theta must lie in (0,1)");
  require(resources > 0.0, "resources R must be positive");
}

SizeParams SizeParams::with_rational(std::int64_t num, std::int64_t den,
                                     double resources) {
  require(num > 0 && den > 0 && num < den, "rational theta needs 0 < a < b");
  require(std::gcd(num, den) == 1, "rational theta a/b must be reduced");
  SizeParams p(static_cast<double>(num) / static_cast<double>(den), resources);
  p.rational_ = Rational{num, den};
  return p;
}

RhoSpec::RhoSpec(RhoVariant variant) : variant_(std::move(variant)) {
  if (auto* g = std::get_if<FittestTypeWins>(&variant_)) {
    require(!g->weights.empty(), "fittest-type-wins needs at least one weight");
    require(g->max_terms >= 1, "fittest-type-wins max_terms must be >= 1");
    double total = 0.0;
    for (double w : g->weights) {
      require(w >= 0.0, "fittest-type-wins weights must be nonnegative");
      total += w;
    }
    require(std::abs(total - 1.0) <= 1e-12,
            "fittest-type-wins weights must sum to 1");
    if (g->weights.size() > static_cast<std::size_t>(g->max_terms))
      g->weights.resize(static_cast<std::size_t>(g->max_terms));
    double kept = std::accumulate(g->weights.begin(), g->weights.end(), 0.0);
    require(kept > 0.0, "fittest-type-wins truncation removed all mass");
    for (double& w : g->weights) w /= kept;
  } else if (auto* d = std::get_if<Diploid>(&variant_)) {
    require(d->s >= 0.0 && d->h >= 0.0, "diploid selection needs s, h >= 0");
  } else if (auto* m = std::get_if<ParentIndependentMutation>(&variant_)) {
    require(m->beta0 >= 0.0 && m->beta1 >= 0.0,
            "mutation rates must be nonnegative");
  } else if (auto* t = std::get_if<CustomTable>(&variant_)) {
    require(t->x.size() >= 2, "custom table needs at least two knots");
    require(t->x.size() == t->rho_finite.size() &&
                t->x.size() == t->rho_limit.size(),
            "custom table grids must have equal length");
    require(std::is_sorted(t->x.begin(), t->x.end()),
            "custom table knots must be sorted");
    for (double v : t->rho_finite)
      require(v >= 0.0 && v <= 1.0, "custom table rho_R values must be in [0,1]");
  }
}

std::string RhoSpec::name() const {
  struct Visitor {
    std::string operator()(const Neutral&) const { return "neutral"; }
    std::string operator()(const GenicSelection&) const { return "genic"; }
    std::string operator()(const FittestTypeWins&) const { return "fittest"; }
    std::string operator()(const Diploid&) const { return "diploid"; }
    std::string operator()(const ParentIndependentMutation&) const {
      return "mutation";
    }
    std::string operator()(const CustomTable&) const { return "table"; }
  };
  return std::visit(Visitor{}, variant_);
}

double rho_finite(const RhoSpec& spec, const SizeParams& params, double x) {
  if (x < 0.0 || x > 1.0) throw OutOfRangeError("x must lie in [0,1]");
  const double R = params.resources();
  struct Visitor {
    double x;
    double R;
    double operator()(const Neutral&) const { return x; }
    double operator()(const GenicSelection& g) const {
      const double a = g.s / R;
      if (std::abs(a) >= 1.0)
        throw OutOfRangeError("genic selection requires |s|/R < 1");
      return (1.0 + a) * x / (1.0 + a * x);
    }
    double operator()(const FittestTypeWins& f) const {
      return x + (1.0 - x) * (1.0 - fittest_series(f.weights, x)) / R;
    }
    double operator()(const Diploid& d) const {
      return x + 2.0 * d.s / R * x * (1.0 - x) * ((1.0 - 2.0 * d.h) * x + d.h);
    }
    double operator()(const ParentIndependentMutation& m) const {
      return x * (1.0 - m.beta1 / R) + (1.0 - x) * m.beta0 / R;
    }
    double operator()(const CustomTable& t) const {
      return lerp_table(t.x, t.rho_finite, x);
    }
  };
  const double value = std::visit(Visitor{x, R}, spec.variant());
  if (value < -1e-15 || value > 1.0 + 1e-15)
    throw OutOfRangeError("rho_R(x) left [0,1] for these parameters");
  return std::clamp(value, 0.0, 1.0);
}

double rho_limit(const RhoSpec& spec, double x) {
  if (x < 0.0 || x > 1.0) throw OutOfRangeError("x must lie in [0,1]");
  struct Visitor {
    double x;
    double operator()(const Neutral&) const { return 0.0; }
    double operator()(const GenicSelection& g) const {
      return g.s * x * (1.0 - x);
    }
    double operator()(const FittestTypeWins& f) const {
      // limit of R (rho_R(x) - x) under the potential-parents sampling rule
      return (1.0 - x) * (1.0 - fittest_series(f.weights, x));
    }
    double operator()(const Diploid& d) const {
      return 2.0 * d.s * x * (1.0 - x) * ((1.0 - 2.0 * d.h) * x + d.h);
    }
    double operator()(const ParentIndependentMutation& m) const {
      return m.beta0 * (1.0 - x) - m.beta1 * x;
    }
    double operator()(const CustomTable& t) const {
      return lerp_table(t.x, t.rho_limit, x);
    }
  };
  return std::visit(Visitor{x}, spec.variant());
}

FiniteDecomposition decompose_rho_finite(
    const std::function<double(double)>& rho_R, int grid_points) {
  if (grid_points < 2) throw ConfigError("decomposition grid needs >= 2 points");
  const double r0 = rho_R(0.0);
  const double r1 = rho_R(1.0);
  const double lo = std::min(r0, r1);
  const double hi = std::max(r0, r1);
  for (int i = 0; i < grid_points; ++i) {
    const double x = static_cast<double>(i) / (grid_points - 1);
    const double v = rho_R(x);
    if (v < lo - 1e-12 || v > hi + 1e-12)
      throw BoundaryViolationError(
          "rho_R does not attain its extrema at the boundary");
  }

  FiniteDecomposition out;
  out.beta0_R = r0;
  out.beta1_R = 1.0 - r1;
  if (std::abs(r1 - r0) < 1e-14) {
    out.degenerate = true;
    out.s_R = [](double x) { return x; };
    return out;
  }
  out.s_R = [rho_R, r0, r1](double x) { return (rho_R(x) - r0) / (r1 - r0); };
  return out;
}

LimitDecomposition decompose_rho_limit(const std::function<double(double)>& rho,
                                       int grid_points) {
  (void)grid_points;
  const double r0 = rho(0.0);
  const double r1 = rho(1.0);
  if (r0 < 0.0 || r1 > 0.0)
    throw BoundarySignError("limit rho needs rho(0) >= 0 and rho(1) <= 0");
  LimitDecomposition out;
  out.beta0 = r0;
  out.beta1 = -r1;
  out.sigma = [rho, r0, r1](double x) {
    return rho(x) - r0 * (1.0 - x) - r1 * x;
  };
  return out;
}

double mu(double p, double theta) { return 1.0 - (1.0 - theta) * p; }

double var_xi(double p, double theta) {
  const double c = 1.0 - theta;
  return c * c * p * (1.0 - p);
}

double e_xi_sq(double p, double theta) {
  return 1.0 - p * (1.0 - theta) * (1.0 + theta);
}

}  // namespace twosize
