"""Exact arithmetic over the Gaussian rationals Q[i].

Scalars are :class:`GaussianRational`, vectors are plain tuples of them and
matrices are tuples of row tuples.  Every value is immutable, and every
rational is kept in lowest terms (``fractions.Fraction`` normalizes on
construction).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

__all__ = [
    "GaussianRational",
    "QVector",
    "QMatrix",
    "SingularMatrix",
    "parse_rational",
    "format_rational",
    "gr",
    "qvector",
    "qmatrix",
    "norm_sq",
    "hermitian_inner",
    "matvec",
    "matmul",
    "identity",
    "solve_linear",
    "invert",
    "frobenius_sq_weighted",
    "bit_length",
    "vector_bit_length",
]

RationalLike = Union[int, Fraction, str]


class SingularMatrix(ArithmeticError):
    """Raised when an exact linear solve meets a singular matrix."""


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (decimal integers, optional sign)."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _to_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact rational")


class GaussianRational:
    """A complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0) -> None:
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        # fast path: both parts already Fractions
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational._make(Fraction(x), Fraction(0))
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussianRational._make(a * c, b)
            return GaussianRational._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return GaussianRational._make(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            den = other.abs2()
            if den == 0:
                raise ZeroDivisionError("division by zero")
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational._make((a * c + b * d) / den, (b * c - a * d) / den)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational.coerce(other) / self
        return NotImplemented

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / self ** (-k)
        result = GaussianRational._make(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    # comparisons / hashing --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if isinstance(obj, dict):
            return cls(str(obj.get("re", "0")), str(obj.get("im", "0")))
        if isinstance(obj, (list, tuple)) and len(obj) == 2:
            return cls(str(obj[0]), str(obj[1]))
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            return cls(str(obj), 0)
        raise ValueError(f"cannot parse Gaussian rational from {obj!r}")


QVector = Tuple[GaussianRational, ...]
QMatrix = Tuple[Tuple[GaussianRational, ...], ...]

ZERO = GaussianRational()
ONE = GaussianRational(1)


def gr(re: RationalLike = 0, im: RationalLike = 0) -> GaussianRational:
    """Shorthand constructor."""
    return GaussianRational(re, im)


def qvector(entries: Iterable) -> QVector:
    out = []
    for e in entries:
        if isinstance(e, GaussianRational):
            out.append(e)
        elif isinstance(e, (tuple, list)) and len(e) == 2:
            out.append(GaussianRational(*e))
        else:
            out.append(GaussianRational(e))
    return tuple(out)


def qmatrix(rows: Iterable[Iterable]) -> QMatrix:
    mat = tuple(qvector(r) for r in rows)
    if mat and any(len(r) != len(mat[0]) for r in mat):
        raise ValueError("ragged matrix")
    return mat


def norm_sq(v: Sequence[GaussianRational]) -> Fraction:
    """Exact squared Hermitian norm of a vector."""
    total = Fraction(0)
    for c in v:
        total += c.abs2()
    return total


def hermitian_inner(u: Sequence[GaussianRational], v: Sequence[GaussianRational]) -> GaussianRational:
    """``sum_k u_k * conj(v_k)``."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    re = Fraction(0)
    im = Fraction(0)
    for a, b in zip(u, v):
        # (a.re + i a.im)(b.re - i b.im)
        re += a.re * b.re + a.im * b.im
        im += a.im * b.re - a.re * b.im
    return GaussianRational._make(re, im)


def matvec(A: Sequence[Sequence[GaussianRational]], x: Sequence[GaussianRational]) -> QVector:
    out = []
    for row in A:
        if len(row) != len(x):
            raise ValueError("dimension mismatch in matvec")
        acc = ZERO
        for a, b in zip(row, x):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return tuple(out)


def matmul(A: QMatrix, B: QMatrix) -> QMatrix:
    cols = tuple(zip(*B))
    return tuple(tuple(_dot(row, col) for col in cols) for row in A)


def _dot(u, v) -> GaussianRational:
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def identity(n: int) -> QMatrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


# --- fraction-free elimination over Z[i] ---------------------------------
# Gaussian integers are (re, im) pairs of Python ints in this section.

def _gi_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gi_exact_div(x, y):
    den = y[0] * y[0] + y[1] * y[1]
    re = x[0] * y[0] + x[1] * y[1]
    im = x[1] * y[0] - x[0] * y[1]
    qr, rr = divmod(re, den)
    qi, ri = divmod(im, den)
    if rr or ri:
        raise ArithmeticError("inexact Gaussian-integer division in Bareiss step")
    return (qr, qi)


def _clear_row(row: Sequence[GaussianRational]) -> list:
    lcm = 1
    for c in row:
        lcm = math.lcm(lcm, c.re.denominator, c.im.denominator)
    return [
        ((c.re * lcm).numerator, (c.im * lcm).numerator)
        for c in row
    ]


def _bareiss_solve(A: Sequence[Sequence[GaussianRational]], rhs_cols: Sequence[Sequence[GaussianRational]]) -> list:
    """Solve ``A X = B`` for the columns of B; returns the solution columns."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    k_rhs = len(rhs_cols)
    for col in rhs_cols:
        if len(col) != n:
            raise ValueError("right-hand side length mismatch")
    width = n + k_rhs
    M = [_clear_row(list(A[i]) + [col[i] for col in rhs_cols]) for i in range(n)]

    prev = (1, 0)
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k] != (0, 0)), None)
        if piv is None:
            raise SingularMatrix(f"matrix is singular (no pivot in column {k})")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        pk = M[k][k]
        row_k = M[k]
        for i in range(k + 1, n):
            row_i = M[i]
            lead = row_i[k]
            for j in range(k + 1, width):
                a = _gi_mul(pk, row_i[j])
                b = _gi_mul(lead, row_k[j])
                row_i[j] = _gi_exact_div((a[0] - b[0], a[1] - b[1]), prev)
            row_i[k] = (0, 0)
        prev = pk

    # back substitution over Q[i]
    U = [[GaussianRational._make(Fraction(re), Fraction(im)) for re, im in row] for row in M]
    solutions = []
    for c in range(k_rhs):
        x = [ZERO] * n
        for i in range(n - 1, -1, -1):
            acc = U[i][n + c]
            for j in range(i + 1, n):
                if U[i][j]:
                    acc = acc - U[i][j] * x[j]
            x[i] = acc / U[i][i]
        solutions.append(tuple(x))
    return solutions


def solve_linear(A: QMatrix, b: Sequence[GaussianRational], *, verify: bool = False) -> QVector:
    """Exact solution of ``A x = b``; raises :class:`SingularMatrix`."""
    (x,) = _bareiss_solve(A, [tuple(b)])
    if verify and matvec(A, x) != tuple(b):
        raise AssertionError("solve_linear: multiply-back check failed")
    return x


def invert(A: QMatrix, *, verify: bool = False) -> QMatrix:
    """Exact inverse of a square matrix; raises :class:`SingularMatrix`."""
    n = len(A)
    cols = _bareiss_solve(A, identity(n))
    inv = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    if verify and matmul(A, inv) != identity(n):
        raise AssertionError("invert: A * A^-1 != I")
    return inv


def frobenius_sq_weighted(M: QMatrix, col_weights: Sequence[Fraction | int]) -> Fraction:
    """``sum_j w_j * sum_i |m_ij|^2``."""
    if M and len(col_weights) != len(M[0]):
        raise ValueError(f"expected {len(M[0])} column weights, got {len(col_weights)}")
    if any(w < 0 for w in col_weights):
        raise ValueError("column weights must be nonnegative")
    total = Fraction(0)
    for j, w in enumerate(col_weights):
        if not w:
            continue
        col = Fraction(0)
        for row in M:
            col += row[j].abs2()
        total += w * col
    return total


def bit_length(q: Fraction | int) -> int:
    """Bit length ``floor(log2(max(|p|, q))) + 1`` of a reduced rational; 1 for zero."""
    q = Fraction(q)
    return max(abs(q.numerator), q.denominator).bit_length() or 1


def vector_bit_length(v: Sequence[GaussianRational]) -> int:
    return max((max(bit_length(c.re), bit_length(c.im)) for c in v), default=1)
