"""Numerical toolkit for stationary counting processes with independent increments.

Three independent computational routes to the count probabilities f_n(t),
plus a Monte Carlo oracle:

* ``volterra``   -- forward-marching solver for the self-convolution balance
  t*f_n(t) = sum_k int_0^t f_k(tau) f_{n-k}(t-tau) dtau on a uniform grid.
* ``laplace``    -- exact rational-function algebra for the transforms
  fhat_n(p) = lambda^n/(p+lambda)^{n+1}, their defining recursion, and
  inversion back to the time domain (closed form and Talbot contour).
* ``generator``  -- semigroup route: short-time jump law -> generator
  eta(p) -> transform exp(t*eta(p)) -> count pmf.
* ``montecarlo`` -- path simulation with per-path substreams, the
  independent statistical check on everything else.
"""

from .generator import AtomicJumpLaw, eta, g_of, parse_law, pmf_from_generator, semigroup_residual
from .laplace import (
    RationalFn,
    cross_term_identity_check,
    hat_closed_form,
    hat_convolution,
    invert_exact,
    invert_numeric,
    recursion_residual,
)
from .montecarlo import (
    EmpiricalPmf,
    SimConfig,
    count_in_windows,
    empirical_laplace,
    empirical_pmf,
    path_stream,
    sample_path,
)
from .volterra import (
    PmfTable,
    PoissonModel,
    StateError,
    TimeGrid,
    build_grid,
    march_row,
    normalization_deficit,
    residual_norm,
    seed_row_zero,
    solve_up_to,
    tail_mass_integral,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicJumpLaw",
    "EmpiricalPmf",
    "PmfTable",
    "PoissonModel",
    "RationalFn",
    "SimConfig",
    "StateError",
    "TimeGrid",
    "build_grid",
    "count_in_windows",
    "cross_term_identity_check",
    "empirical_laplace",
    "empirical_pmf",
    "eta",
    "g_of",
    "hat_closed_form",
    "hat_convolution",
    "invert_exact",
    "invert_numeric",
    "march_row",
    "normalization_deficit",
    "parse_law",
    "path_stream",
    "pmf_from_generator",
    "recursion_residual",
    "residual_norm",
    "sample_path",
    "seed_row_zero",
    "semigroup_residual",
    "solve_up_to",
    "tail_mass_integral",
    "__version__",
]
