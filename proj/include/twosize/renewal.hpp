#pragma once

#include <cstdint>
#include <vector>

#include "twosize/model.hpp"
#include "twosize/rng.hpp"

namespace twosize {

// Shared crossing geometry for samplers and the exact recursion. With a
// rational theta = a/b all comparisons run on the integer lattice scaled by
// b; otherwise consumption is recomputed from counts as i*theta + j so that
// sampled walks and the lattice recursion decide boundaries identically.
class LatticeGeom {
 public:
  explicit LatticeGeom(const SizeParams& params);

  // consumed(i,j) < R, i.e. the walk is still running under the lax rule
  bool below(std::int64_t k_small, std::int64_t k_large) const;
  // consumed(i,j) <= R, i.e. the state is kept under the strict rule
  bool at_most(std::int64_t k_small, std::int64_t k_large) const;
  double consumed(std::int64_t k_small, std::int64_t k_large) const;
  double resources() const { return resources_; }
  double theta() const { return theta_; }

 private:
  double theta_;
  double resources_;
  bool rational_ = false;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double scaled_threshold_ = 0.0;  // R*b in rational mode, R otherwise
};

// First-passage data of one renewal run stopped at S_n >= R.
struct PassageOutcome {
  std::int64_t tau = 0;      // number of increments consumed
  std::int64_t k_small = 0;  // increments of size theta among them
  double s_tau = 0.0;        // total consumption, in [R, R+1)
  double xi_tau = 0.0;       // the increment that crossed, theta or 1
  double overshoot = 0.0;    // s_tau - R, in [0, 1)
};

// Strict-rule outcome: the crossing increment is rejected and the state
// one step earlier is kept. kept = tau_bar - 1 and s_kept in (R-1, R].
struct StrictPassageOutcome {
  std::int64_t tau_bar = 0;
  std::int64_t kept = 0;
  std::int64_t k_small = 0;  // small increments among the kept ones
  double s_kept = 0.0;
  double xi_rejected = 0.0;
};

PassageOutcome sample_passage(double p, const SizeParams& params,
                              RngStream& rng);
StrictPassageOutcome sample_passage_strict(double p, const SizeParams& params,
                                           RngStream& rng);

// One atom of the exact stopping law. prob_small_cross is the sub-mass on
// which the crossing increment equals theta (always 0 in strict mode, where
// the crossing increment is rejected).
struct LawAtom {
  std::int64_t k_small = 0;
  std::int64_t k_large = 0;
  double prob = 0.0;
  double prob_small_cross = 0.0;
};

// Exact finite law of (k_small, k_large) at stopping, from the lattice
// recursion over states {i theta + j below threshold}.
class DiscreteLaw {
 public:
  DiscreteLaw(std::vector<LawAtom> atoms, const SizeParams& params, double p,
              bool strict);

  const std::vector<LawAtom>& atoms() const { return atoms_; }
  bool strict() const { return strict_; }
  double p() const { return p_; }
  double theta() const { return params_.theta(); }
  double resources() const { return params_.resources(); }
  const SizeParams& params() const { return params_; }

  double total_mass() const;
  // P(xi_tau = theta); only meaningful for the lax stopping rule
  double prob_xi_theta() const;

  double consumed_of(const LawAtom& a) const;  // theta*k_small + k_large
  static std::int64_t tau_of(const LawAtom& a) { return a.k_small + a.k_large; }

  // expectation of fn(atom) under the law, compensated summation
  template <typename Fn>
  double expect(Fn&& fn) const {
    long double acc = 0.0L;
    for (const auto& a : atoms_) acc += static_cast<long double>(fn(a)) * a.prob;
    return static_cast<double>(acc);
  }

  double mean_tau() const;
  double mean_consumed() const;

 private:
  std::vector<LawAtom> atoms_;
  SizeParams params_;
  double p_;
  bool strict_;
};

// Lattice recursion oracle. Throws StateSpaceTooLargeError beyond the state
// budget (1e7 states).
DiscreteLaw exact_passage_law(double p, const SizeParams& params, bool strict);

// Limit law Q_p of the stopping summand: P(xi_inf = theta) = p theta / mu(p).
struct StoppingSummandLaw {
  double p = 0.0;
  double q_theta = 0.0;
  double q_one = 1.0;
};

StoppingSummandLaw stopping_summand_limit(double p, double theta);

// E_p[xi_inf] = E_p[xi^2] / mu(p)
double e_xi_inf(double p, double theta);

struct MonteCarloEstimate {
  double value = 0.0;
  double std_err = 0.0;
  std::int64_t n = 0;
};

// Monte Carlo estimate of P(xi_tau = theta) with binomial standard error.
// Work is split in blocks of fixed size with one rng stream per block, so the
// estimate is reproducible for any worker count.
MonteCarloEstimate estimate_stopping_summand(double p, const SizeParams& params,
                                             std::int64_t n_sim,
                                             std::uint64_t seed,
                                             int workers = 1);

// mu^m + m(m+1)/2 * mu^{m-1} Var / R : the expansion of E[(S_tau/tau)^m]
double moment_ratio_theory(double p, double theta, double resources, int m);

// exact E[(S_tau/tau)^m] from the lattice recursion
double moment_ratio_exact(double p, const SizeParams& params, int m);

enum class RenewalWindow { theta_window, one_window };

// Renewal-measure mass U_p([R-theta, R)) or U_p([R-1, R)) recovered from the
// exact stopping-summand law.
double renewal_window_mass(double p, const SizeParams& params,
                           RenewalWindow window);

}  // namespace twosize
