"""Condition quantities and the exact projective Newton step.

All quantities here are exact rationals.  The operator norm in the first
condition factor is replaced by the Frobenius norm, and only ``R**2 = 2``
ever enters the window formulas, so no square root is taken anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_arith import (
    GaussianRational,
    QMatrix,
    QVector,
    ZERO,
    invert,
    matvec,
    norm_sq,
    solve_linear,
)
from .polysys import PolySystem, evaluate, jacobian

__all__ = [
    "Constants",
    "CONSTANTS",
    "ConditionData",
    "CollinearSystems",
    "augmented_matrix",
    "augmented_inverse",
    "chi1_tilde_sq",
    "b_factor",
    "step_window",
    "newton_step",
    "projective_newton",
]


class CollinearSystems(ValueError):
    """The systems are real-collinear; the unit tangent direction is undefined."""


@dataclass(frozen=True)
class Constants:
    u0: Fraction = Fraction(8793, 50000)  # 0.17586
    delta: Fraction = Fraction(3, 4)
    w0_num: Fraction = Fraction(17, 50000)
    l0: Fraction = Fraction(999, 1000)

    def eps0(self, d: int) -> Fraction:
        """``u0**2 / ((4d)**3 * (1 + 9 u0 / 8)**2)``."""
        return self.u0 ** 2 / ((4 * d) ** 3 * (1 + Fraction(9, 8) * self.u0) ** 2)

    def w0(self, d: int) -> Fraction:
        return self.w0_num / d ** 3


CONSTANTS = Constants()


@dataclass(frozen=True)
class ConditionData:
    a: Fraction
    b: Fraction
    phi_sq: Fraction
    W: Fraction
    L: Fraction
    U: Fraction
    eps: Fraction
    M: QMatrix


def augmented_matrix(jac: QMatrix, z: Sequence[GaussianRational]) -> QMatrix:
    """Stack ``jac`` (n x (n+1)) on top of the row ``z*``."""
    if any(len(row) != len(z) for row in jac):
        raise ValueError("Jacobian width must equal the number of coordinates")
    return tuple(jac) + (tuple(c.conj() for c in z),)


def augmented_inverse(jac: QMatrix, z: Sequence[GaussianRational]) -> QMatrix:
    if not any(z):
        raise ValueError("z must be nonzero")
    return invert(augmented_matrix(jac, z))


def chi1_tilde_sq(M: QMatrix, n4: Fraction, n7: Fraction, degrees: Sequence[int]) -> Fraction:
    """Frobenius-norm square of ``M * Diag(sqrt(d_l) ||g|| ||z||^(d_l-1), ||z||)``.

    ``n4 = ||g||^2`` and ``n7 = ||z||^2``; the column weights are
    ``d_l * n4 * n7**(d_l - 1)`` for the equation columns and ``n7`` for the
    last one.
    """
    if n4 <= 0 or n7 <= 0:
        raise ValueError("n4 and n7 must be positive")
    n = len(degrees)
    if len(M) != n + 1 or any(len(row) != n + 1 for row in M):
        raise ValueError(f"M must be {n + 1}x{n + 1}")
    total = Fraction(0)
    for l, d in enumerate(degrees):
        col = Fraction(0)
        for row in M:
            col += row[l].abs2()
        total += d * col * n7 ** (d - 1)
    total *= n4
    last = Fraction(0)
    for row in M:
        last += row[n].abs2()
    return total + last * n7


def b_factor(M: QMatrix, v1: QVector, v2: QVector, n1, n4, n5, n7) -> Fraction:
    """``1 + ||M (n4 v1 - n5 v2; 0)||^2 / (n7 (n1 n4 - n5^2))``, the squared second factor."""
    gram = n1 * n4 - n5 * n5
    if gram <= 0:
        raise CollinearSystems("f and g_i are real-collinear (n1*n4 - n5^2 <= 0)")
    v3 = tuple(v * n4 - w * n5 for v, w in zip(v1, v2))
    v4 = matvec(M, v3 + (ZERO,))
    return 1 + norm_sq(v4) / (n7 * gram)


def step_window(a: Fraction, b: Fraction, d: int, constants: Constants = CONSTANTS):
    """Return ``(W, L, U)`` with ``W = W0(d)/(ab)``, ``L = 1 - W + W^2/6``, ``U = 1 - W/2``."""
    if a <= 0 or b <= 0:
        raise ValueError("condition factors must be positive")
    W = constants.w0(d) / (a * b)
    L = 1 - W + W * W / 6
    U = 1 - W / 2
    return W, L, U


def newton_step(jac: QMatrix, values: QVector, z: Sequence[GaussianRational], *, verify: bool = False) -> QVector:
    """``z - (jac; z*)^-1 (values; 0)`` given the Jacobian and values at ``z``."""
    A = augmented_matrix(jac, z)
    w = solve_linear(A, tuple(values) + (ZERO,), verify=verify)
    return tuple(zi - wi for zi, wi in zip(z, w))


def projective_newton(f: PolySystem, z: Sequence[GaussianRational]) -> QVector:
    """One projective Newton step for ``f`` at ``z``; raises :class:`SingularMatrix`."""
    z = tuple(z)
    return newton_step(jacobian(f, z), evaluate(f, z), z)


def condition_data(
    g: PolySystem,
    f: PolySystem,
    z: Sequence[GaussianRational],
    constants: Constants = CONSTANTS,
) -> ConditionData:
    """All per-step quantities for the pair ``(g, z)`` moving toward ``f``.

    Convenience wrapper used by diagnostics and tests; the tracker computes
    the same numbers from cached invariants.
    """
    from .polysys import bw_inner, bw_norm_sq

    z = tuple(z)
    n1 = bw_norm_sq(f)
    n4 = bw_norm_sq(g)
    n5 = bw_inner(f, g).re
    n7 = norm_sq(z)
    M = augmented_inverse(jacobian(g, z), z)
    a = chi1_tilde_sq(M, n4, n7, g.degrees)
    b = b_factor(M, evaluate(f, z), evaluate(g, z), n1, n4, n5, n7)
    d = g.max_degree
    W, L, U = step_window(a, b, d, constants)
    return ConditionData(a=a, b=b, phi_sq=a * b, W=W, L=L, U=U, eps=constants.eps0(d) / a, M=M)
