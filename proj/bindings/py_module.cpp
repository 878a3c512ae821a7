#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twosize/analytics.hpp"
#include "twosize/model.hpp"
#include "twosize/moments.hpp"
#include "twosize/renewal.hpp"
#include "twosize/sde.hpp"
#include "twosize/wright_fisher.hpp"

namespace py = pybind11;
using namespace twosize;

namespace {

SizeParams make_params(double theta, double resources,
                       std::optional<std::pair<std::int64_t, std::int64_t>>
                           theta_rational) {
  if (theta_rational)
    return SizeParams::with_rational(theta_rational->first,
                                     theta_rational->second, resources);
  return SizeParams(theta, resources);
}

DiffusionVariant variant_of(bool strict) {
  return strict ? DiffusionVariant::strict_variant
                : DiffusionVariant::original;
}

}  // namespace

PYBIND11_MODULE(_twosize, m) {
  m.doc() = "two-size Wright-Fisher model: simulators, exact laws, diffusion "
            "limit and long-term analytics";

  py::register_exception<Error>(m, "TwosizeError");

  py::class_<SizeParams>(m, "SizeParams")
      .def(py::init(&make_params), py::arg("theta"), py::arg("resources"),
           py::arg("theta_rational") = std::nullopt)
      .def_property_readonly("theta", &SizeParams::theta)
      .def_property_readonly("resources", &SizeParams::resources);

  py::class_<RhoSpec>(m, "RhoSpec")
      .def_property_readonly("name", &RhoSpec::name);

  m.def("neutral", []() { return RhoSpec(Neutral{}); });
  m.def("genic", [](double s) { return RhoSpec(GenicSelection{s}); },
        py::arg("s"));
  m.def(
      "fittest",
      [](std::vector<double> weights, int max_terms) {
        return RhoSpec(FittestTypeWins{std::move(weights), max_terms});
      },
      py::arg("weights"), py::arg("max_terms") = 64);
  m.def("diploid", [](double s, double h) { return RhoSpec(Diploid{s, h}); },
        py::arg("s"), py::arg("h"));
  m.def(
      "mutation",
      [](double beta0, double beta1) {
        return RhoSpec(ParentIndependentMutation{beta0, beta1});
      },
      py::arg("beta0"), py::arg("beta1"));
  m.def(
      "table",
      [](std::vector<double> x, std::vector<double> rho_R,
         std::vector<double> rho) {
        return RhoSpec(CustomTable{std::move(x), std::move(rho_R),
                                   std::move(rho)});
      },
      py::arg("x"), py::arg("rho_R"), py::arg("rho"));

  m.def("rho_finite", &rho_finite, py::arg("spec"), py::arg("params"),
        py::arg("x"));
  m.def("rho_limit", &rho_limit, py::arg("spec"), py::arg("x"));
  m.def("mu", &mu, py::arg("p"), py::arg("theta"));
  m.def("var_xi", &var_xi, py::arg("p"), py::arg("theta"));
  m.def("e_xi_sq", &e_xi_sq, py::arg("p"), py::arg("theta"));

  m.def(
      "sample_passage",
      [](double p, const SizeParams& params, std::uint64_t seed,
         std::uint64_t stream) {
        RngStream rng(seed, stream);
        const auto o = sample_passage(p, params, rng);
        return py::dict(py::arg("tau") = o.tau, py::arg("k_small") = o.k_small,
                        py::arg("s_tau") = o.s_tau,
                        py::arg("xi_tau") = o.xi_tau,
                        py::arg("overshoot") = o.overshoot);
      },
      py::arg("p"), py::arg("params"), py::arg("seed"), py::arg("stream") = 0);

  m.def(
      "exact_passage_law",
      [](double p, const SizeParams& params, bool strict) {
        const auto law = exact_passage_law(p, params, strict);
        std::vector<std::tuple<std::int64_t, std::int64_t, double>> atoms;
        atoms.reserve(law.atoms().size());
        for (const auto& a : law.atoms())
          atoms.emplace_back(a.k_small, a.k_large, a.prob);
        return atoms;
      },
      py::arg("p"), py::arg("params"), py::arg("strict") = false);

  m.def("stopping_summand_limit",
        [](double p, double theta) {
          return stopping_summand_limit(p, theta).q_theta;
        },
        py::arg("p"), py::arg("theta"));
  m.def("moment_ratio_theory", &moment_ratio_theory, py::arg("p"),
        py::arg("theta"), py::arg("resources"), py::arg("m"));
  m.def("moment_ratio_exact", &moment_ratio_exact, py::arg("p"),
        py::arg("params"), py::arg("m"));

  m.def(
      "simulate_trajectory",
      [](double x0, const RhoSpec& spec, const SizeParams& params, bool strict,
         std::int64_t n_gens, std::uint64_t seed, std::uint64_t stream,
         std::int64_t stride) {
        RngStream rng(seed, stream);
        const auto traj =
            simulate_trajectory(x0, spec, params, strict, n_gens, rng, stride);
        std::vector<std::int64_t> gens = traj.gens;
        std::vector<double> freq;
        std::vector<std::int64_t> size;
        freq.reserve(traj.states.size());
        size.reserve(traj.states.size());
        for (const auto& st : traj.states) {
          freq.push_back(st.x_freq);
          size.push_back(st.m_size);
        }
        return py::make_tuple(gens, freq, size);
      },
      py::arg("x0"), py::arg("spec"), py::arg("params"),
      py::arg("strict") = false, py::arg("n_gens") = 100, py::arg("seed") = 0,
      py::arg("stream") = 0, py::arg("stride") = 1);

  m.def(
      "exact_one_step_law",
      [](double x, const RhoSpec& spec, const SizeParams& params, bool strict) {
        const auto law = exact_one_step_law(x, spec, params, strict);
        std::vector<std::tuple<double, std::int64_t, double>> atoms;
        atoms.reserve(law.atoms().size());
        for (const auto& a : law.atoms())
          atoms.emplace_back(atom_frequency(a), DiscreteLaw::tau_of(a), a.prob);
        return atoms;
      },
      py::arg("x"), py::arg("spec"), py::arg("params"),
      py::arg("strict") = false);

  m.def("moment_limit", &moment_limit, py::arg("x"), py::arg("order"),
        py::arg("theta"), py::arg("spec"),
        py::arg("variant") = DiffusionVariant::original);
  m.def(
      "moment_estimate",
      [](double x, int order, const RhoSpec& spec, const SizeParams& params,
         std::int64_t n_sim, std::uint64_t seed, int workers, bool strict) {
        const auto est =
            moment_estimate(x, order, spec, params, n_sim, seed, workers, strict);
        return py::make_tuple(est.estimate, est.std_err);
      },
      py::arg("x"), py::arg("order"), py::arg("spec"), py::arg("params"),
      py::arg("n_sim"), py::arg("seed"), py::arg("workers") = 1,
      py::arg("strict") = false);
  m.def("moment_exact", &moment_exact, py::arg("x"), py::arg("order"),
        py::arg("spec"), py::arg("params"), py::arg("strict") = false);

  py::enum_<DiffusionVariant>(m, "DiffusionVariant")
      .value("original", DiffusionVariant::original)
      .value("strict_variant", DiffusionVariant::strict_variant);

  py::class_<DiffusionSpec>(m, "DiffusionSpec")
      .def_static("from_spec", &DiffusionSpec::from_spec, py::arg("spec"),
                  py::arg("theta"),
                  py::arg("variant") = DiffusionVariant::original)
      .def_readonly("theta", &DiffusionSpec::theta);

  m.def("drift", &drift, py::arg("x"), py::arg("spec"));
  m.def("diffusion_sq", &diffusion_sq, py::arg("x"), py::arg("spec"));
  m.def("generator_apply", &generator_apply, py::arg("f_value"),
        py::arg("f_d1"), py::arg("f_d2"), py::arg("x"), py::arg("spec"));

  m.def(
      "euler_maruyama",
      [](double x0, const DiffusionSpec& spec, double h, double T,
         std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        const auto path = euler_maruyama(x0, spec, h, T, rng);
        return py::make_tuple(path.times, path.values);
      },
      py::arg("x0"), py::arg("spec"), py::arg("h"), py::arg("T"),
      py::arg("seed"), py::arg("stream") = 0);

  m.def(
      "hitting_time_mc",
      [](double x0, const DiffusionSpec& spec, double h, std::int64_t n_sim,
         double max_T, std::uint64_t seed, int workers) {
        const auto r = hitting_time_mc(x0, spec, h, n_sim, max_T, seed, workers);
        return py::dict(py::arg("p_hit0") = r.p_hit0,
                        py::arg("p_hit0_se") = r.p_hit0_se,
                        py::arg("mean_t01") = r.mean_t01,
                        py::arg("mean_t01_se") = r.mean_t01_se,
                        py::arg("timeout_frac") = r.timeout_frac);
      },
      py::arg("x0"), py::arg("spec"), py::arg("h"), py::arg("n_sim"),
      py::arg("max_T"), py::arg("seed"), py::arg("workers") = 1);

  m.def("extinction_prob", &extinction_prob_genic, py::arg("x"),
        py::arg("theta"), py::arg("s"));
  m.def("mean_absorption_neutral", &mean_absorption_neutral, py::arg("x"),
        py::arg("theta"));
  m.def("mean_absorption_numeric", &mean_absorption_numeric, py::arg("x"),
        py::arg("theta"), py::arg("s"), py::arg("tol") = 1e-8,
        py::arg("variant") = DiffusionVariant::original);
  m.def(
      "stationary_density",
      [](const std::vector<double>& grid, double theta, double beta0,
         double beta1, double s, double tol) {
        const auto res = stationary_density(grid, theta, beta0, beta1, s, tol);
        return py::make_tuple(res.values, res.meta);
      },
      py::arg("x_grid"), py::arg("theta"), py::arg("beta0"), py::arg("beta1"),
      py::arg("s") = 0.0, py::arg("tol") = 1e-8);

  m.attr("__version__") = "0.1.0";
}
