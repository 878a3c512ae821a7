#include "twosize/renewal.hpp"

#include <algorithm>
#include <cmath>

#include "twosize/parallel.hpp"

namespace twosize {

namespace {

constexpr std::int64_t kStateBudget = 10'000'000;
constexpr std::int64_t kBlockSize = 65'536;

}  // namespace

LatticeGeom::LatticeGeom(const SizeParams& params)
    : theta_(params.theta()), resources_(params.resources()) {
  if (params.theta_rational()) {
    rational_ = true;
    num_ = params.theta_rational()->num;
    den_ = params.theta_rational()->den;
    scaled_threshold_ = resources_ * static_cast<double>(den_);
  } else {
    scaled_threshold_ = resources_;
  }
}

bool LatticeGeom::below(std::int64_t i, std::int64_t j) const {
  if (rational_)
    return static_cast<double>(num_ * i + den_ * j) < scaled_threshold_;
  return static_cast<double>(i) * theta_ + static_cast<double>(j) <
         scaled_threshold_;
}

bool LatticeGeom::at_most(std::int64_t i, std::int64_t j) const {
  if (rational_)
    return static_cast<double>(num_ * i + den_ * j) <= scaled_threshold_;
  return static_cast<double>(i) * theta_ + static_cast<double>(j) <=
         scaled_threshold_;
}

double LatticeGeom::consumed(std::int64_t i, std::int64_t j) const {
  if (rational_)
    return static_cast<double>(num_ * i + den_ * j) /
           static_cast<double>(den_);
  return static_cast<double>(i) * theta_ + static_cast<double>(j);
}

PassageOutcome sample_passage(double p, const SizeParams& params,
                              RngStream& rng) {
  const LatticeGeom geom(params);
  const BernoulliDraw draw(p);
  std::int64_t i = 0, j = 0;
  bool last_small = false;
  while (geom.below(i, j)) {
    last_small = rng.bernoulli(draw);
    if (last_small)
      ++i;
    else
      ++j;
  }
  PassageOutcome out;
  out.tau = i + j;
  out.k_small = i;
  out.s_tau = geom.consumed(i, j);
  out.xi_tau = last_small ? params.theta() : 1.0;
  out.overshoot = out.s_tau - params.resources();
  return out;
}

StrictPassageOutcome sample_passage_strict(double p, const SizeParams& params,
                                           RngStream& rng) {
  const LatticeGeom geom(params);
  const BernoulliDraw draw(p);
  std::int64_t i = 0, j = 0;
  StrictPassageOutcome out;
  while (true) {
    const bool small = rng.bernoulli(draw);
    const std::int64_t ni = i + (small ? 1 : 0);
    const std::int64_t nj = j + (small ? 0 : 1);
    if (!geom.at_most(ni, nj)) {
      out.xi_rejected = small ? params.theta() : 1.0;
      break;
    }
    i = ni;
    j = nj;
  }
  out.kept = i + j;
  out.tau_bar = out.kept + 1;
  out.k_small = i;
  out.s_kept = geom.consumed(i, j);
  return out;
}

DiscreteLaw::DiscreteLaw(std::vector<LawAtom> atoms, const SizeParams& params,
                         double p, bool strict)
    : atoms_(std::move(atoms)), params_(params), p_(p), strict_(strict) {}

double DiscreteLaw::total_mass() const {
  long double acc = 0.0L;
  for (const auto& a : atoms_) acc += a.prob;
  return static_cast<double>(acc);
}

double DiscreteLaw::prob_xi_theta() const {
  long double acc = 0.0L;
  for (const auto& a : atoms_) acc += a.prob_small_cross;
  return static_cast<double>(acc);
}

double DiscreteLaw::consumed_of(const LawAtom& a) const {
  return LatticeGeom(params_).consumed(a.k_small, a.k_large);
}

double DiscreteLaw::mean_tau() const {
  return expect([](const LawAtom& a) {
    return static_cast<double>(a.k_small + a.k_large);
  });
}

double DiscreteLaw::mean_consumed() const {
  const LatticeGeom geom(params_);
  return expect([&](const LawAtom& a) {
    return geom.consumed(a.k_small, a.k_large);
  });
}

DiscreteLaw exact_passage_law(double p, const SizeParams& params, bool strict) {
  if (p < 0.0 || p > 1.0) throw OutOfRangeError("p must lie in [0,1]");
  const LatticeGeom geom(params);
  const double R = params.resources();
  const double theta = params.theta();

  // rough state count of {i theta + j < R + 1}; hard budget re-checked below
  const double estimate = (R + 1.0) * (R + 1.0) / (2.0 * theta) + (R + 2.0);
  if (estimate > static_cast<double>(kStateBudget))
    throw StateSpaceTooLargeError("exact law lattice exceeds the state budget");

  // alive predicate: strictly below R (lax rule) or at most R (strict rule)
  const auto alive = [&](std::int64_t i, std::int64_t j) {
    return strict ? geom.at_most(i, j) : geom.below(i, j);
  };

  std::vector<LawAtom> atoms;
  const double q = 1.0 - p;

  // One anti-diagonal at a time: diag[n] holds reach probabilities of alive
  // states (i, n - i) for i in [i_lo, n]. Alive states form a contiguous
  // upper window in i because consumption decreases as i grows at fixed n.
  std::vector<double> diag{1.0};
  std::int64_t i_lo = 0;
  std::int64_t states_seen = 1;

  if (!alive(0, 0)) {
    // R so small that the empty state is already past threshold: degenerate,
    // the first increment always crosses. Lax rule: a single-increment atom.
    if (!strict) {
      if (p > 0.0) atoms.push_back({1, 0, p, p});
      if (q > 0.0) atoms.push_back({0, 1, q, 0.0});
    } else {
      atoms.push_back({0, 0, 1.0, 0.0});
    }
    return DiscreteLaw(std::move(atoms), params, p, strict);
  }

  for (std::int64_t n = 0; !diag.empty(); ++n) {
    // absorb mass that crosses when stepping to diagonal n+1, and build the
    // next window of alive states
    std::int64_t next_lo = 0;
    std::vector<double> next;

    if (strict) {
      // a state (i, j) emits its own atom with the mass of rejected steps
      for (std::int64_t i = i_lo; i <= n; ++i) {
        const double f = diag[static_cast<std::size_t>(i - i_lo)];
        if (f == 0.0) continue;
        const std::int64_t j = n - i;
        double stopped = 0.0;
        if (p > 0.0 && !alive(i + 1, j)) stopped += p * f;
        if (q > 0.0 && !alive(i, j + 1)) stopped += q * f;
        if (stopped > 0.0) atoms.push_back({i, j, stopped, 0.0});
      }
    } else {
      for (std::int64_t i = i_lo; i <= n; ++i) {
        const double f = diag[static_cast<std::size_t>(i - i_lo)];
        if (f == 0.0) continue;
        const std::int64_t j = n - i;
        if (p > 0.0 && !alive(i + 1, j)) {
          const double m = p * f;
          atoms.push_back({i + 1, j, m, m});
        }
        if (q > 0.0 && !alive(i, j + 1)) {
          atoms.push_back({i, j + 1, q * f, 0.0});
        }
      }
    }

    // next diagonal: f(i, n+1-i) = p f(i-1, n+1-i) + q f(i, n-i)
    std::int64_t lo_candidate = -1;
    for (std::int64_t i = i_lo; i <= n + 1; ++i) {
      if (alive(i, n + 1 - i)) {
        lo_candidate = i;
        break;
      }
    }
    if (lo_candidate < 0) break;  // no alive states remain
    next_lo = lo_candidate;
    next.assign(static_cast<std::size_t>(n + 2 - next_lo), 0.0);
    for (std::int64_t i = next_lo; i <= n + 1; ++i) {
      double f = 0.0;
      if (p > 0.0 && i - 1 >= i_lo && i - 1 <= n)
        f += p * diag[static_cast<std::size_t>(i - 1 - i_lo)];
      if (q > 0.0 && i >= i_lo && i <= n)
        f += q * diag[static_cast<std::size_t>(i - i_lo)];
      next[static_cast<std::size_t>(i - next_lo)] = f;
    }
    states_seen += static_cast<std::int64_t>(next.size());
    if (states_seen > kStateBudget)
      throw StateSpaceTooLargeError("exact law lattice exceeds the state budget");
    diag = std::move(next);
    i_lo = next_lo;

    // drop dead zero-probability tails (possible when p or q is 0)
    while (!diag.empty() && diag.front() == 0.0) {
      diag.erase(diag.begin());
      ++i_lo;
    }
    while (!diag.empty() && diag.back() == 0.0) diag.pop_back();
  }

  // merge duplicate atoms (same (k_small, k_large) reached by both crossing
  // types) and order by (tau, k_small)
  std::sort(atoms.begin(), atoms.end(), [](const LawAtom& a, const LawAtom& b) {
    const auto ta = a.k_small + a.k_large, tb = b.k_small + b.k_large;
    if (ta != tb) return ta < tb;
    return a.k_small < b.k_small;
  });
  std::vector<LawAtom> merged;
  merged.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().k_small == a.k_small &&
        merged.back().k_large == a.k_large) {
      merged.back().prob += a.prob;
      merged.back().prob_small_cross += a.prob_small_cross;
    } else {
      merged.push_back(a);
    }
  }
  return DiscreteLaw(std::move(merged), params, p, strict);
}

StoppingSummandLaw stopping_summand_limit(double p, double theta) {
  if (p < 0.0 || p > 1.0) throw OutOfRangeError("p must lie in [0,1]");
  StoppingSummandLaw law;
  law.p = p;
  law.q_theta = p * theta / mu(p, theta);
  law.q_one = 1.0 - law.q_theta;
  return law;
}

double e_xi_inf(double p, double theta) {
  const auto law = stopping_summand_limit(p, theta);
  return law.q_theta * theta + law.q_one;
}

MonteCarloEstimate estimate_stopping_summand(double p, const SizeParams& params,
                                             std::int64_t n_sim,
                                             std::uint64_t seed, int workers) {
  if (n_sim < 1) throw ConfigError("n_sim must be >= 1");
  const std::int64_t n_blocks = (n_sim + kBlockSize - 1) / kBlockSize;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(n_blocks), 0);
  const double theta = params.theta();

  parallel_for_index(n_blocks, workers, [&](std::int64_t b) {
    RngStream rng(seed, static_cast<std::uint64_t>(b));
    const std::int64_t lo = b * kBlockSize;
    const std::int64_t hi = std::min(n_sim, lo + kBlockSize);
    std::int64_t count = 0;
    for (std::int64_t k = lo; k < hi; ++k) {
      const auto outcome = sample_passage(p, params, rng);
      if (outcome.xi_tau == theta) ++count;
    }
    hits[static_cast<std::size_t>(b)] = count;
  });

  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  MonteCarloEstimate est;
  est.n = n_sim;
  est.value = static_cast<double>(total) / static_cast<double>(n_sim);
  est.std_err =
      std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(n_sim));
  return est;
}

double moment_ratio_theory(double p, double theta, double resources, int m) {
  if (m < 1) throw UnsupportedOrderError("moment order m must be >= 1");
  const double mean = mu(p, theta);
  return std::pow(mean, m) + 0.5 * m * (m + 1) * std::pow(mean, m - 1) *
                                 var_xi(p, theta) / resources;
}

double moment_ratio_exact(double p, const SizeParams& params, int m) {
  if (m < 1) throw UnsupportedOrderError("moment order m must be >= 1");
  const auto law = exact_passage_law(p, params, /*strict=*/false);
  const LatticeGeom geom(params);
  return law.expect([&](const LawAtom& a) {
    const double ratio = geom.consumed(a.k_small, a.k_large) /
                         static_cast<double>(a.k_small + a.k_large);
    return std::pow(ratio, m);
  });
}

double renewal_window_mass(double p, const SizeParams& params,
                           RenewalWindow window) {
  if (window == RenewalWindow::theta_window && p <= 0.0)
    throw DivisionAtBoundaryError("theta window requires p > 0");
  if (window == RenewalWindow::one_window && p >= 1.0)
    throw DivisionAtBoundaryError("unit window requires p < 1");
  const auto law = exact_passage_law(p, params, /*strict=*/false);
  const double q_theta = law.prob_xi_theta();
  if (window == RenewalWindow::theta_window) return q_theta / p;
  return (1.0 - q_theta) / (1.0 - p);
}

}  // namespace twosize
