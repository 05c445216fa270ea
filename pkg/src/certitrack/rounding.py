"""Replace a Gaussian-rational projective point by a short Gaussian-integer one."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_arith import GaussianRational, QVector, norm_sq

__all__ = [
    "RoundingResult",
    "ZeroVector",
    "EpsOutOfRange",
    "RoundedToZero",
    "R_SQ",
    "short_zero",
    "trunc_toward_zero",
]

R_SQ = Fraction(441, 400)  # (21/20)^2


class ZeroVector(ValueError):
    pass


class EpsOutOfRange(ValueError):
    pass


class RoundedToZero(ArithmeticError):
    pass


@dataclass(frozen=True)
class RoundingResult:
    z_tilde: QVector
    k: int
    coord_bound_sq: Fraction  # 9 (n+1) / eps

    def within_bound(self) -> bool:
        return all(
            c.re * c.re <= self.coord_bound_sq and c.im * c.im <= self.coord_bound_sq
            for c in self.z_tilde
        )


def trunc_toward_zero(q: Fraction) -> int:
    """Nearest integer not larger than ``q`` in absolute value."""
    n, d = q.numerator, q.denominator
    return n // d if n >= 0 else -((-n) // d)


def short_zero(z: Sequence[GaussianRational], eps: Fraction) -> RoundingResult:
    """Gaussian-integer ``z~`` with ``d_R(z~, z) <= sqrt(eps)``.

    Denominators are cleared with the product of all coordinate denominators,
    then the largest ``k`` with ``4**k <= eps ||x||^2 / (2 (n+1) r)`` is found
    and ``2**-k x`` is truncated toward zero.
    """
    eps = Fraction(eps)
    if not (0 < eps < Fraction(1, 5)):
        raise EpsOutOfRange(f"eps must lie in (0, 1/5), got {eps}")
    z = tuple(z)
    if not any(z):
        raise ZeroVector("cannot round the zero vector")
    dim = len(z)

    m = 1
    for c in z:
        m *= c.re.denominator * c.im.denominator
    x = [(int(c.re * m), int(c.im * m)) for c in z]

    threshold = eps * norm_sq(z) * m * m / (2 * dim * R_SQ)
    k = 0
    alpha = 4
    while alpha <= threshold:
        alpha *= 4
        k += 1

    # truncation toward zero of x / 2^k on integers
    def shift(v: int) -> int:
        return v >> k if v >= 0 else -((-v) >> k)

    z_tilde = tuple(GaussianRational(shift(a), shift(b)) for a, b in x)
    if not any(z_tilde):
        raise RoundedToZero("all coordinates truncated to zero")
    return RoundingResult(z_tilde=z_tilde, k=k, coord_bound_sq=9 * dim / eps)
