"""Alternating binomial sums with automatic precision escalation.

The residual contangle of an N-party state is an alternating sum whose
terms carry binomial weights up to ``C(N-1, (N-1)//2)``; for N around a
thousand the cancellation eats close to a thousand bits, and for weak
squeezing the surviving value can lie far below the double-precision
range.  The kernels therefore:

* evaluate in arbitrary-precision arithmetic, starting at roughly
  ``N + 64`` bits and doubling whenever more than half the working bits
  cancelled (detected by comparing the exponents of the largest term and
  of the sum);
* report results as :class:`SumResult`, which carries the nearest double
  *and* an exponent-exact ``mantissa * 2**exp2`` view, so magnitudes below
  the double range stay ordered and printable.

Two interchangeable backends exist: a compiled MPFR kernel (built at
install time when the MPFR/GMP headers are available) and a pure
:mod:`mpmath` one.  Selection happens at import; set the environment
variable ``CONTANGLE_BACKEND`` to ``native`` or ``python`` to force a
choice, anything else defaults to the compiled kernel when present.
"""

from __future__ import annotations

import math
import operator
import os
from dataclasses import dataclass

import mpmath

from .. import config
from . import pure

try:
    from . import _sumcore
except ImportError:  # compiled kernel not built; the pure backend covers it
    _sumcore = None

__all__ = [
    "SumResult",
    "compare",
    "residual_sum",
    "comparison_sum",
    "backend_name",
    "available_backends",
]


def _resolve(choice: str):
    """Map a backend choice string to (module, name); '' means automatic."""
    choice = choice.strip().lower()
    if choice in ("", "auto"):
        if _sumcore is not None:
            return _sumcore, "native"
        return pure, "python"
    if choice == "native":
        if _sumcore is None:
            raise ImportError(
                f"{config.ENV_BACKEND}=native requested but the compiled "
                "kernel is not available; rebuild with MPFR/GMP installed"
            )
        return _sumcore, "native"
    if choice == "python":
        return pure, "python"
    raise ValueError(
        f"unrecognized {config.ENV_BACKEND} value {choice!r}; "
        "use 'native', 'python' or 'auto'"
    )


_BACKEND, _BACKEND_NAME = _resolve(os.environ.get(config.ENV_BACKEND, ""))


def backend_name() -> str:
    """Name of the backend selected at import ('native' or 'python')."""
    return _BACKEND_NAME


def available_backends() -> tuple[str, ...]:
    return ("native", "python") if _sumcore is not None else ("python",)


@dataclass(frozen=True)
class SumResult:
    """Value of an alternating sum, with headroom below the double range.

    ``value`` is the sum rounded to the nearest binary64 (zero when the
    true magnitude underflows).  ``mantissa * 2**exp2`` reproduces the sum
    with the mantissa in ``[0.5, 1)`` up to sign; both are zero only for
    an exactly zero sum.  ``precision`` records the working precision in
    bits at which the escalation loop accepted the result.
    """

    value: float
    mantissa: float
    exp2: int
    precision: int

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0.0

    def magnitude_log2(self) -> float:
        """log2 of the absolute value; -inf for zero."""
        if self.is_zero:
            return -math.inf
        return self.exp2 + math.log2(abs(self.mantissa))

    def decimal(self, digits: int = 12) -> str:
        """Decimal string with ``digits`` significant digits.

        Unlike formatting ``value``, this stays exact for magnitudes
        outside the double range.
        """
        if self.is_zero:
            return "0"
        with mpmath.mp.workdps(max(digits + 10, 25)):
            exact = mpmath.ldexp(mpmath.mpf(self.mantissa), self.exp2)
            return mpmath.nstr(exact, digits)


def compare(x: SumResult, y: SumResult) -> int:
    """Three-way order of two results by true value (-1, 0 or +1).

    Works on the (sign, exp2, mantissa) view, so values far below the
    double range are still ordered correctly.
    """
    sx = (x.mantissa > 0.0) - (x.mantissa < 0.0)
    sy = (y.mantissa > 0.0) - (y.mantissa < 0.0)
    if sx != sy:
        return -1 if sx < sy else 1
    if sx == 0:
        return 0
    if x.exp2 != y.exp2:
        bigger = 1 if x.exp2 > y.exp2 else -1
        return bigger * sx
    if x.mantissa == y.mantissa:
        return 0
    return sx * (1 if abs(x.mantissa) > abs(y.mantissa) else -1)


def _escalate(evaluate, n_terms: int, min_precision: int | None) -> SumResult:
    prec = config.starting_precision(n_terms, min_precision)
    while True:
        value, mantissa, exp2, max_exp2, any_term = evaluate(prec)
        if not any_term:
            return SumResult(0.0, 0.0, 0, prec)
        if mantissa != 0.0 and exp2 >= max_exp2 - prec // 2:
            return SumResult(value, mantissa, exp2, prec)
        if prec >= config.MAX_PRECISION:
            raise ArithmeticError(
                f"cancellation still exceeds half the working bits at "
                f"{prec} bits; giving up"
            )
        prec = min(2 * prec, config.MAX_PRECISION)


def residual_sum(
    n_kept: int,
    n_traced: int,
    r_bar: float,
    *,
    min_precision: int | None = None,
) -> SumResult:
    """Residual contangle of the symmetric ``n_kept``-mode state.

    The state is the reduction of the pure ``n_kept + n_traced``-mode
    fully symmetric state with mean squeezing ``r_bar``.  Evaluated as the
    alternating binomial sum over the one-versus-block terms, at whatever
    precision the cancellation demands.
    """
    n = operator.index(n_kept)
    m = operator.index(n_traced)
    if n < 2:
        raise ValueError(f"need at least two kept modes, got {n}")
    if m < 0:
        raise ValueError(f"traced mode count must be >= 0, got {m}")
    r = float(r_bar)
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"mean squeezing must be finite and >= 0, got {r}")
    return _escalate(
        lambda prec: _BACKEND.eval_residual(n, m, r, prec), n, min_precision
    )


def comparison_sum(
    n_parties: int,
    a: float,
    b: float,
    c: float,
    *,
    min_precision: int | None = None,
) -> SumResult:
    """Alternating binomial sum of the comparison sequence
    ``(n-1-j) / ((n-1) * (c + b * j**a))`` for ``j`` from 0 to ``n-1``."""
    n = operator.index(n_parties)
    if n < 2:
        raise ValueError(f"need at least two parties, got {n}")
    a, b, c = float(a), float(b), float(c)
    if not (math.isfinite(a) and a >= 0.0):
        raise ValueError(f"exponent a must be finite and >= 0, got {a}")
    if not (math.isfinite(b) and b > 0.0) or not (math.isfinite(c) and c > 0.0):
        raise ValueError(f"coefficients b, c must be finite and > 0, got {b}, {c}")
    return _escalate(
        lambda prec: _BACKEND.eval_comparison(n, a, b, c, prec), n, min_precision
    )
