"""Central numeric policy: tolerances and working-precision rules.

Everything tolerance-like lives in one frozen record so the library, the
verification suites and the tests all agree on what "equal" means.  The
precision rules govern the extended-precision kernels in
:mod:`contangle.kernels`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

__all__ = [
    "Tolerances",
    "TOL",
    "PRECISION_FLOOR",
    "PRECISION_MARGIN",
    "MAX_PRECISION",
    "ENV_PRECISION",
    "ENV_BACKEND",
    "default_min_precision",
    "starting_precision",
]


@dataclass(frozen=True)
class Tolerances:
    """Relative/absolute tolerances used across the package.

    These are deliberately centralized: a check in the verification module
    and the equivalent assertion in the test-suite must not drift apart.
    """

    #: relative asymmetry allowed when wrapping a covariance matrix
    cm_symmetry: float = 1e-12
    #: slack below 1 tolerated for symplectic eigenvalues of physical states
    physicality: float = 1e-9
    #: closed-form reduced determinant vs. explicit matrix determinant
    oracle_det: float = 1e-9
    #: bracket width for the standard-form squeezing solver
    standard_form_xtol: float = 1e-14
    #: recursion vs. direct closed form, and N=3 strong/weak coincidence
    recursion: float = 1e-12
    #: decomposition bookkeeping identity
    bookkeeping: float = 1e-10
    #: alternating comparison sum vs. its gamma-function closed form
    gamma: float = 1e-10
    #: squeezing -> fidelity -> squeezing round trip (absolute)
    fidelity_roundtrip: float = 1e-10
    #: dual-path molecular determinant agreement
    molecular_det: float = 1e-14
    #: most negative residual accepted as "zero up to noise" in scans
    positivity_floor: float = -1e-25


TOL = Tolerances()

#: never evaluate an alternating sum below this many bits
PRECISION_FLOOR = 64
#: extra bits on top of the party count (the binomial coefficients of an
#: N-term alternating sum can cancel roughly N bits)
PRECISION_MARGIN = 64
#: escalation gives up here; reaching it means the request is absurd
MAX_PRECISION = 1 << 22

ENV_PRECISION = "CONTANGLE_PRECISION_BITS"
ENV_BACKEND = "CONTANGLE_BACKEND"


def default_min_precision() -> int:
    """Minimum working precision in bits, overridable via the environment.

    Set ``CONTANGLE_PRECISION_BITS`` to force a higher starting precision
    for every kernel call (useful when validating the escalation logic or
    reproducing a scan bit-for-bit).
    """
    raw = os.environ.get(ENV_PRECISION)
    if raw is None:
        return PRECISION_FLOOR
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(
            f"{ENV_PRECISION} must be an integer, got {raw!r}"
        ) from exc
    if value < 2:
        raise ValueError(f"{ENV_PRECISION} must be >= 2, got {value}")
    return min(value, MAX_PRECISION)


def starting_precision(n_terms: int, min_precision: int | None = None) -> int:
    """Initial working precision for an alternating sum with *n_terms* terms."""
    floor = default_min_precision() if min_precision is None else min_precision
    return max(PRECISION_FLOOR, n_terms + PRECISION_MARGIN, floor)
