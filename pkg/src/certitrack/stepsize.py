"""Certified step-size selection by exact bisection.

The step ``t`` must keep the cosine of the angle between ``g_i`` and
``g_i + t (f - g)`` inside ``[L, U]``.  That cosine is

    beta(t) = (th1 + t th2) / sqrt(th1 (th1 + 2 t th2 + t^2 th3))

and is only ever compared through its square together with the sign of the
numerator, so every decision is an exact rational comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .polysys import PolySystem, bw_inner, bw_norm_sq

__all__ = [
    "StepQuery",
    "StepResult",
    "BisectionCapExceeded",
    "compute_sign",
    "beta_sq",
    "in_window",
    "lu_quadratic",
    "default_cap",
    "check_hypothesis",
    "L0",
]

L0 = Fraction(999, 1000)


class BisectionCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class StepQuery:
    theta1: Fraction
    theta2: Fraction
    theta3: Fraction
    L: Fraction
    U: Fraction

    def validate(self) -> None:
        t1, t2, t3 = self.theta1, self.theta2, self.theta3
        if not (t1 > 0 and t3 > 0):
            raise ValueError("theta1 and theta3 must be positive")
        if not t2 * t2 < t1 * t3:
            raise ValueError("theta2^2 < theta1*theta3 violated (collinear directions)")
        if t2 < 0 and t2 * t2 > self.L ** 2 * t1 * t3:
            raise ValueError("theta2 < -L sqrt(theta1 theta3)")
        if not (1 - Fraction(1, 1000) < self.L < self.U < 1):
            raise ValueError("need 1 - 10^-3 < L < U < 1")


@dataclass(frozen=True)
class StepResult:
    t: Fraction
    depth: int
    exhausted: bool = False

    @property
    def l(self) -> int:
        return self.depth


def beta_sq(theta1, theta2, theta3, t) -> Fraction:
    """``r(t) = (th1 + t th2)^2 / (th1 (th1 + 2 t th2 + t^2 th3))``."""
    num = theta1 + t * theta2
    return num * num / (theta1 * (theta1 + 2 * t * theta2 + t * t * theta3))


def compute_sign(theta1, theta2, theta3, t, L, U) -> tuple[int, Fraction]:
    """Sign of ``beta(t) - (L+U)/2`` and the exact ``r(t)``."""
    r = beta_sq(theta1, theta2, theta3, t)
    mid_sq = (L + U) ** 2 / 4
    s = 1 if (theta1 + t * theta2 > 0 and r > mid_sq) else -1
    return s, r


def in_window(theta1, theta2, theta3, t, L, U) -> bool:
    """Exact test of ``L <= beta(t) <= U``."""
    if theta1 + t * theta2 < 0:
        return False
    r = beta_sq(theta1, theta2, theta3, t)
    return L * L <= r <= U * U


def default_cap(theta1, theta3, L, U, slack: int = 64) -> int:
    bound = max(Fraction(1), 16 * Fraction(theta3) / (theta1 * (U - L)))
    # ceil(log2(bound)) from the integer ceiling of the bound
    return slack + (math.ceil(bound) - 1).bit_length()


def _den_exp(q: Fraction) -> int:
    # exponent of a power-of-two denominator
    return q.denominator.bit_length() - 1


def lu_quadratic(
    theta1,
    theta2,
    theta3,
    L,
    U,
    *,
    match_denominator: Fraction | None = None,
    cap: int | None = None,
    slack: int = 64,
) -> StepResult:
    """Find a dyadic ``t in (0, 1]`` with ``L <= beta(t) <= U``.

    Returns ``t = 1`` when ``beta(1) >= L``; ``exhausted`` is set when in that
    case ``beta(1) > U`` as well (no admissible ``t`` exists).

    With ``match_denominator`` (the current path parameter ``s``), bisection
    keeps going past the first admissible point while the denominator of
    ``t`` is still smaller than that of ``s``, so that ``s + t`` has a
    reduced denominator.
    """
    theta1, theta2, theta3 = Fraction(theta1), Fraction(theta2), Fraction(theta3)
    L, U = Fraction(L), Fraction(U)
    L2, U2 = L * L, U * U
    if cap is None:
        cap = default_cap(theta1, theta3, L, U, slack)

    t1 = Fraction(1)
    _, r1 = compute_sign(theta1, theta2, theta3, t1, L, U)
    if theta1 + theta2 > 0 and r1 >= L2:
        return StepResult(t=t1, depth=0, exhausted=r1 > U2)

    target_exp = _den_exp(match_denominator) if match_denominator is not None else 0

    t0 = Fraction(0)
    t2 = (t0 + t1) / 2
    s2, r2 = compute_sign(theta1, theta2, theta3, t2, L, U)
    l = 0
    while True:
        valid = L2 <= r2 <= U2 and theta1 + t2 * theta2 >= 0
        if valid and _den_exp(t2) >= target_exp:
            break
        if l >= cap:
            raise BisectionCapExceeded(
                f"bisection exceeded {cap} iterations (theta={theta1}, {theta2}, {theta3})"
            )
        if s2 == 1:
            t0 = t2
        else:
            t1 = t2
        t2 = (t0 + t1) / 2
        s2, r2 = compute_sign(theta1, theta2, theta3, t2, L, U)
        l += 1
    return StepResult(t=t2, depth=l, exhausted=False)


def check_hypothesis(f: PolySystem, g: PolySystem, l0: Fraction = L0) -> bool:
    """``-l0 ||g|| ||f-g|| <= Re<g, f-g>``, checked on squares."""
    h = f - g
    x = bw_inner(g, h).re
    if x >= 0:
        return True
    return x * x <= l0 * l0 * bw_norm_sq(g) * bw_norm_sq(h)
