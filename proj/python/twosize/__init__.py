"""Two-size Wright-Fisher toolkit: simulators, exact one-step laws, the
diffusion limit and its long-term analytics.

The heavy lifting lives in the C++ extension ``_twosize``; this package
re-exports its public surface.
"""

from ._twosize import (  # noqa: F401
    DiffusionSpec,
    DiffusionVariant,
    RhoSpec,
    SizeParams,
    TwosizeError,
    __version__,
    diffusion_sq,
    diploid,
    drift,
    e_xi_sq,
    euler_maruyama,
    exact_one_step_law,
    exact_passage_law,
    extinction_prob,
    fittest,
    generator_apply,
    genic,
    hitting_time_mc,
    mean_absorption_neutral,
    mean_absorption_numeric,
    moment_estimate,
    moment_exact,
    moment_limit,
    moment_ratio_exact,
    moment_ratio_theory,
    mu,
    mutation,
    neutral,
    rho_finite,
    rho_limit,
    sample_passage,
    simulate_trajectory,
    stationary_density,
    stopping_summand_limit,
    table,
    var_xi,
)
