"""Two-argument generalized weighted (power) mean.

``gwa(x, y, params)`` evaluates ``[(1 - alpha) x**m + alpha y**m] ** (1/m)``
with the geometric limit ``x**(1-alpha) * y**alpha`` near ``m = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from numba import njit

from .errors import DomainError

#: |m| at or below this is evaluated with the geometric closed form.
M_ZERO_EPS = 1e-9

#: Below this |m| the mean is evaluated through expm1/log1p.
M_SMALL = 1e-2

#: Admissible exponent range. Outside it the linear-space evaluation can
#: overflow for the arguments the UCB scores produce.
M_RANGE = (-2.0, 4.0)


@dataclass(frozen=True)
class GwaParams:
    """Weight ``alpha`` of the second argument and mean exponent ``m``."""

    alpha: float
    m: float

    def __post_init__(self):
        alpha, m = float(self.alpha), float(self.m)
        if not math.isfinite(alpha) or not 0.0 <= alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        if not math.isfinite(m):
            raise DomainError(f"m must be finite, got {self.m!r}")
        lo, hi = M_RANGE
        if not lo <= m <= hi:
            raise DomainError(f"m must lie in [{lo}, {hi}], got {self.m!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "m", m)


def _gwa_core(x, y, alpha, m):
    # Shared by the Python entry point and the compiled simulation kernel.
    if alpha == 0.0:
        return x
    if alpha == 1.0:
        return y
    if abs(m) <= M_ZERO_EPS:
        return x ** (1.0 - alpha) * y**alpha
    if m < 0.0 and (x == 0.0 or y == 0.0):
        # x**m diverges, so the outer negative power sends the mean to 0.
        return 0.0
    if abs(m) < M_SMALL and x > 0.0 and y > 0.0:
        # The closed form loses ~eps/|m| relative accuracy here.
        inner = (1.0 - alpha) * math.expm1(m * math.log(x)) + alpha * math.expm1(m * math.log(y))
        return math.exp(math.log1p(inner) / m)
    return ((1.0 - alpha) * x**m + alpha * y**m) ** (1.0 / m)


gwa_kernel = njit(nogil=True, cache=True)(_gwa_core)


def gwa(x: float, y: float, params: GwaParams) -> float:
    """Generalized weighted average of two nonnegative numbers.

    Parameters
    ----------
    x, y : float
        Nonnegative arguments; ``y`` carries weight ``params.alpha``.
    params : GwaParams
        Weight and exponent.

    Returns
    -------
    float
        The mean. It lies between ``min(x, y)`` and ``max(x, y)``, equals
        ``x`` when ``alpha == 0`` and ``y`` when ``alpha == 1``, and is 0
        whenever ``m < 0`` and a positively weighted argument is 0.

    Raises
    ------
    DomainError
        If an argument is negative or not finite, or the result overflows.
    """
    if not isinstance(params, GwaParams):
        raise DomainError(f"expected GwaParams, got {type(params).__name__}")
    x, y = float(x), float(y)
    if not (math.isfinite(x) and math.isfinite(y)) or x < 0.0 or y < 0.0:
        raise DomainError(f"arguments must be finite and nonnegative, got ({x}, {y})")
    try:
        out = _gwa_core(x, y, params.alpha, params.m)
    except (OverflowError, ZeroDivisionError) as exc:
        raise DomainError(f"generalized mean overflowed for ({x}, {y}, {params})") from exc
    if not math.isfinite(out):
        raise DomainError(f"generalized mean overflowed for ({x}, {y}, {params})")
    return out
