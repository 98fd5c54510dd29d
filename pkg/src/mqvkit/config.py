"""Configuration constants for mqvkit."""

import os

from .schemas import ArithmeticMode, RunConfig

# Invertibility: min singular value must exceed this fraction of the max
INVERTIBILITY_RTOL = 1e-8

# Singular values between these fractions of the scale are neither zero nor not
AMBIGUITY_BAND = (1e-11, 1e-8)

# Moment-fiber membership, relative to max(1, |mu|)
FIBER_TOL = 1e-8

# Eigenvalue clustering radius for numeric Jordan data
CLUSTER_RADIUS = 1e-6

# q^alpha == 1 test in float mode
FLOAT_Q_TOL = 1e-10

# Float q^alpha closer to 1 than this but not within FLOAT_Q_TOL is undecidable
FLOAT_Q_UNDECIDED = 1e-6

# Central finite-difference step, multiplied by the problem scale
FD_STEP = 1e-6

# Rank of finite-difference Jacobians: gap between these relative levels
PROBE_RANK_RTOL = 1e-5
PROBE_RANK_FLOOR = 1e-8

# Levenberg-Marquardt damping schedule
LM_LAMBDA_INIT = 1e-3
LM_LAMBDA_REJECT = 10.0
LM_LAMBDA_ACCEPT = 0.3
LM_CONVERGED = 1e-11
LM_LAMBDA_MAX = 1e12

# Witness irreducibility is decided after balancing, with this margin
WITNESS_STABILITY_RTOL = 1e-3

# Default search budget
DS_RESTARTS = 8
DS_ITERATIONS = 200

DEFAULT_SEED = 0


def load_run_config(
    seed: int | None = None,
    tol: float | None = None,
    mode: str | None = None,
    output: str | None = None,
) -> RunConfig:
    """Build the run configuration from explicit values and the environment.

    Explicit arguments win; otherwise ``MQVKIT_SEED``, ``MQVKIT_TOL`` and
    ``MQVKIT_MODE`` are consulted before falling back to defaults.

    Args:
        seed: Random seed override.
        tol: Tolerance override.
        mode: Arithmetic mode override ("float" or "rational").
        output: Optional output path for machine lines.

    Returns:
        Validated RunConfig.
    """
    if seed is None:
        seed = int(os.environ.get("MQVKIT_SEED", DEFAULT_SEED))
    if tol is None:
        tol = float(os.environ.get("MQVKIT_TOL", FIBER_TOL))
    if mode is None:
        mode = os.environ.get("MQVKIT_MODE", ArithmeticMode.FLOAT.value)
    return RunConfig(seed=seed, tol=tol, mode=ArithmeticMode(mode), output=output)
