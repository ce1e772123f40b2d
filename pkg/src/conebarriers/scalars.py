"""Scalar numerical kernels: Wright omega, a guarded Newton-Raphson driver,
and double-double (compensated) arithmetic.

The Newton-Raphson driver is generic over the numeric type of the callback:
when the callback returns :class:`DoubleDouble` values the iterate and the
update step are carried in double-double precision, which is what the
infinity-norm conjugate procedure uses near the dual boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "wright_omega",
    "StopRule",
    "RootResult",
    "newton_raphson",
    "DoubleDouble",
    "dd_sqrt",
]

_EPS = 2.220446049250313e-16  # 2**-52


# --------------------------------------------------------------------------
# Wright omega
# --------------------------------------------------------------------------

def wright_omega(beta: float) -> float:
    """Unique positive solution of ``x + log(x) = beta``.

    Initial guess ``beta`` for ``beta > 1`` and ``exp(beta)`` otherwise
    (the two asymptotic regimes of ``x + log x``), refined by Newton steps
    on ``x + log(x) - beta``.  The map is concave and increasing, so after
    the first step the iterates increase monotonically to the root; a
    handful of steps reaches full double precision.
    """
    beta = float(beta)
    if not math.isfinite(beta):
        raise ValueError("wright_omega: beta must be finite")
    x = beta if beta > 1.0 else math.exp(beta)
    for _ in range(32):
        f = x + math.log(x) - beta
        # Newton step for f with f' = 1 + 1/x, written to avoid overflow.
        step = f * x / (x + 1.0)
        x_new = x - step
        if x_new <= 0.0:  # cannot occur from the monotone regime; be safe
            x_new = 0.5 * x
        if abs(step) <= 2.0 * _EPS * x_new:
            x = x_new
            break
        x = x_new
    return x


# --------------------------------------------------------------------------
# Double-double arithmetic
# --------------------------------------------------------------------------

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _quick_two_sum(a: float, b: float) -> tuple[float, float]:
    # assumes |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    c = _SPLITTER * a
    ahi = c - (c - a)
    alo = a - ahi
    c = _SPLITTER * b
    bhi = c - (c - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


class DoubleDouble:
    """Unevaluated sum ``hi + lo`` with ``|lo| <= ulp(hi)/2``."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi: float, lo: float = 0.0):
        hi, lo = _two_sum(float(hi), float(lo))
        self.hi = hi
        self.lo = lo

    # -- conversions ------------------------------------------------------
    def __float__(self) -> float:
        return self.hi + self.lo

    def __repr__(self) -> str:
        return f"DoubleDouble({self.hi!r}, {self.lo!r})"

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "DoubleDouble":
        return x if isinstance(x, DoubleDouble) else DoubleDouble(float(x))

    def __add__(self, other) -> "DoubleDouble":
        o = self._coerce(other)
        s, e = _two_sum(self.hi, o.hi)
        t, f = _two_sum(self.lo, o.lo)
        e += t
        s, e = _quick_two_sum(s, e)
        e += f
        hi, lo = _quick_two_sum(s, e)
        out = object.__new__(DoubleDouble)
        out.hi, out.lo = hi, lo
        return out

    __radd__ = __add__

    def __neg__(self) -> "DoubleDouble":
        out = object.__new__(DoubleDouble)
        out.hi, out.lo = -self.hi, -self.lo
        return out

    def __sub__(self, other) -> "DoubleDouble":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "DoubleDouble":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "DoubleDouble":
        o = self._coerce(other)
        p, e = _two_prod(self.hi, o.hi)
        e += self.hi * o.lo + self.lo * o.hi
        hi, lo = _quick_two_sum(p, e)
        out = object.__new__(DoubleDouble)
        out.hi, out.lo = hi, lo
        return out

    __rmul__ = __mul__

    def __truediv__(self, other) -> "DoubleDouble":
        o = self._coerce(other)
        q1 = self.hi / o.hi
        rem = self - o * DoubleDouble(q1)
        q2 = rem.hi / o.hi
        rem = rem - o * DoubleDouble(q2)
        q3 = rem.hi / o.hi
        return DoubleDouble(q1) + DoubleDouble(q2) + DoubleDouble(q3)

    def __rtruediv__(self, other) -> "DoubleDouble":
        return self._coerce(other) / self

    def __abs__(self) -> "DoubleDouble":
        return -self if self.hi < 0.0 or (self.hi == 0.0 and self.lo < 0.0) else self

    # -- comparisons (against floats or DoubleDoubles) ---------------------
    def _cmp(self, other) -> float:
        d = self - self._coerce(other)
        return d.hi if d.hi != 0.0 else d.lo

    def __lt__(self, other):
        return self._cmp(other) < 0.0

    def __le__(self, other):
        return self._cmp(other) <= 0.0

    def __gt__(self, other):
        return self._cmp(other) > 0.0

    def __ge__(self, other):
        return self._cmp(other) >= 0.0

    def __eq__(self, other):
        return self._cmp(other) == 0.0

    def __hash__(self):
        return hash((self.hi, self.lo))


def dd_sqrt(x) -> DoubleDouble:
    """Square root of a nonnegative double-double value."""
    x = DoubleDouble._coerce(x)
    if x.hi < 0.0:
        raise ValueError("dd_sqrt: negative operand")
    if x.hi == 0.0:
        return DoubleDouble(0.0)
    s = math.sqrt(x.hi)
    # one refinement step: s + (x - s^2) / (2 s) has double-double accuracy
    return DoubleDouble(s) + (x - DoubleDouble(s) * DoubleDouble(s)) / (2.0 * s)


# --------------------------------------------------------------------------
# Guarded Newton-Raphson
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class StopRule:
    """Deterministic stopping rule for :func:`newton_raphson`.

    ``abs_h=None`` resolves to ``1e3 * eps * (1 + |h(y0)|)`` so the residual
    test adapts to the scale of the function at the start point.  The
    residual test alone can fire while the root still carries significant
    error when ``h`` is nearly flat (its value becomes small long before the
    iterate settles), so it only counts as converged once the impending
    Newton correction ``|h/h'|`` is below ``root_rtol`` relative to the
    iterate; a sufficiently small accepted step always stops.
    """

    abs_h: float | None = None
    rel_step: float = 4.0 * _EPS
    root_rtol: float = 1e-9
    max_iter: int = 64


@dataclass(frozen=True)
class RootResult:
    root: float
    iterations: int
    converged: bool
    residual: float


def newton_raphson(h_and_deriv, y0, stop: StopRule = StopRule()) -> RootResult:
    """Newton-Raphson iteration ``y <- y - h(y)/h'(y)`` with explicit stopping.

    Stops successfully when ``|h| <= abs_h`` or the last step satisfied
    ``|dy| <= rel_step * (1 + |y|)``; reports ``converged=False`` when the
    derivative vanishes or the iteration cap is hit.  ``iterations`` counts
    accepted steps, so a start point that already satisfies the residual
    test reports zero.

    The callback may return floats or :class:`DoubleDouble` values; in the
    latter case the step and the iterate are carried in double-double.
    """
    y = y0
    h, hp = h_and_deriv(y)
    abs_h = stop.abs_h
    if abs_h is None:
        abs_h = 1e3 * _EPS * (1.0 + abs(float(h)))

    def residual_stop(h, hp, y):
        if abs(float(h)) > abs_h:
            return False
        if float(hp) == 0.0:
            return True
        pending = abs(float(h) / float(hp))
        return pending <= max(stop.root_rtol * abs(float(y)),
                              stop.rel_step * (1.0 + abs(float(y))))

    if residual_stop(h, hp, y):
        return RootResult(float(y), 0, True, abs(float(h)))
    for k in range(1, stop.max_iter + 1):
        if float(hp) == 0.0:
            return RootResult(float(y), k - 1, False, abs(float(h)))
        step = h / hp
        y = y - step
        h, hp = h_and_deriv(y)
        if residual_stop(h, hp, y) or \
                abs(float(step)) <= stop.rel_step * (1.0 + abs(float(y))):
            return RootResult(float(y), k, True, abs(float(h)))
    return RootResult(float(y), stop.max_iter, False, abs(float(h)))
