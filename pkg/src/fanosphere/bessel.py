"""Spherical Bessel functions j_l, y_1 and the channel-sum identity.

Only real, order-1 functions plus a stable j_l array are needed here;
complex arguments (Mie coefficients) live in ``mqed``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, ValidationError

# Below this argument j1 is evaluated by series to avoid the sin/cos
# cancellation; both branches carry < 1e-13 relative error at the switch.
J1_SERIES_SWITCH = 0.05

_LMAX_GUARD = 200


@dataclass(frozen=True)
class BesselOrderRange:
    """Order range for j_l arrays; guards against runaway recurrences."""

    l_max: int

    def __post_init__(self):
        if self.l_max < 1:
            raise ValidationError("l_max must be >= 1")
        if self.l_max > _LMAX_GUARD:
            raise ValidationError(f"l_max must be <= {_LMAX_GUARD}")


def j1(x):
    """j_1(x) = sin(x)/x^2 - cos(x)/x, series branch for small x."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValidationError("j1 requires x >= 0")
    small = x < J1_SERIES_SWITCH
    xs = np.where(small, 1.0, x)  # dummy argument keeps the division finite
    direct = np.sin(xs) / xs**2 - np.cos(xs) / xs
    series = x / 3.0 - x**3 / 30.0 + x**5 / 840.0 - x**7 / 45360.0
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def y1(x):
    """y_1(x) = -cos(x)/x^2 - sin(x)/x, singular at the origin."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValidationError("y1 requires x > 0")
    out = -np.cos(x) / x**2 - np.sin(x) / x
    return out if out.ndim else float(out)


def j1_prime(x):
    """d/dx j_1(x) = j_0(x) - 2 j_1(x)/x."""
    x = np.asarray(x, dtype=float)
    small = x < J1_SERIES_SWITCH
    xs = np.where(small, 1.0, x)
    direct = np.sin(xs) / xs - 2.0 * (np.sin(xs) / xs**2 - np.cos(xs) / xs) / xs
    series = 1.0 / 3.0 - x**2 / 10.0 + x**4 / 168.0 - x**6 / 6480.0
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def y1_prime(x):
    """d/dx y_1(x) = y_0(x) - 2 y_1(x)/x with y_0 = -cos(x)/x."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValidationError("y1_prime requires x > 0")
    y0 = -np.cos(x) / x
    out = y0 - 2.0 * y1(x) / x
    return out if out.ndim else float(out)


def jl_array(x: float, order_range: BesselOrderRange) -> np.ndarray:
    """j_0(x) .. j_lmax(x) for scalar x >= 0.

    Miller-type downward recurrence normalized by the closed-form j_0,
    stable for l > x; plain upward recurrence once x exceeds every order.
    """
    if x < 0:
        raise ValidationError("jl_array requires x >= 0")
    l_max = order_range.l_max
    out = np.zeros(l_max + 1)
    if x == 0.0:
        out[0] = 1.0
        return out

    j0 = math.sin(x) / x
    if x > l_max + 20:
        # upward recurrence is stable in the oscillatory regime
        out[0] = j0
        out[1] = math.sin(x) / x**2 - math.cos(x) / x
        for l in range(1, l_max):
            out[l + 1] = (2 * l + 1) / x * out[l] - out[l - 1]
        return out

    l_start = l_max + math.ceil(math.sqrt(40.0 * l_max)) + 10
    f_up = 0.0  # f_{l+1}
    f = 1e-30   # f_l, arbitrary seed at l_start
    vals = np.zeros(l_max + 1)
    for l in range(l_start, 0, -1):
        f_down = (2 * l + 1) / x * f - f_up  # f_{l-1}
        f_up, f = f, f_down
        if l - 1 <= l_max:
            vals[l - 1] = f
        if abs(f) > 1e250:  # rescale everything to dodge overflow
            f_up *= 1e-250
            f *= 1e-250
            vals *= 1e-250
    out[:] = vals * (j0 / vals[0])
    return out


def weighted_jl_sum(x: float, l_min: int = 1, tol: float = 1e-12) -> float:
    """sum_{l >= l_min} l(l+1)(2l+1) j_l(x)^2, adaptively truncated.

    For l_min = 1 the sum equals 2 x^2 / 3 exactly.
    """
    if x < 0:
        raise ValidationError("weighted_jl_sum requires x >= 0")
    if l_min not in (1, 2):
        raise ValidationError("l_min must be 1 or 2")
    if x == 0.0:
        return 0.0

    scale = 2.0 * x * x / 3.0 + 1.0
    l_max = min(_LMAX_GUARD, max(12, math.ceil(x + 12.0 * x ** (1.0 / 3.0) + 12)))
    while True:
        jl = jl_array(x, BesselOrderRange(l_max))
        ls = np.arange(l_min, l_max + 1, dtype=float)
        terms = ls * (ls + 1.0) * (2.0 * ls + 1.0) * jl[l_min:] ** 2
        total = float(np.sum(terms))
        # beyond l ~ x the terms decay super-exponentially; the last term
        # (times a small geometric factor) bounds the tail
        tail_bound = 3.0 * terms[-1] if terms.size else 0.0
        if l_max > x + 10 and tail_bound < tol * scale:
            return total
        if l_max >= _LMAX_GUARD:
            raise ConvergenceError(
                f"weighted_jl_sum hit the l_max guard ({_LMAX_GUARD}) at x={x}",
                residual=tail_bound,
            )
        l_max = min(_LMAX_GUARD, l_max + 40)
