"""Homogeneous polynomial systems over Q[i] with the Bombieri-Weyl product."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence

from .exact_arith import (
    GaussianRational,
    QMatrix,
    QVector,
    ZERO,
)

__all__ = [
    "MonomialTerm",
    "HomogeneousPolynomial",
    "PolySystem",
    "bw_weight",
    "bw_inner",
    "bw_norm_sq",
    "linear_combination",
    "evaluate",
    "jacobian",
    "load_system",
    "dump_system",
]


class MonomialTerm(NamedTuple):
    exp: tuple[int, ...]
    coeff: GaussianRational


@lru_cache(maxsize=None)
def bw_weight(alpha: tuple[int, ...], l: int) -> Fraction:
    """Bombieri-Weyl self-product ``alpha_0! ... alpha_n! / l!`` of a monomial."""
    if sum(alpha) != l:
        raise ValueError(f"exponent {alpha} has degree {sum(alpha)}, expected {l}")
    num = 1
    for a in alpha:
        num *= math.factorial(a)
    return Fraction(num, math.factorial(l))


@dataclass(frozen=True)
class HomogeneousPolynomial:
    """Sparse homogeneous polynomial; terms sorted by exponent, no zero coefficients."""

    degree: int
    nvars: int
    terms: tuple[MonomialTerm, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        seen = set()
        for exp, coeff in self.terms:
            if len(exp) != self.nvars:
                raise ValueError(f"exponent {exp} does not have {self.nvars} entries")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            if sum(exp) != self.degree:
                raise ValueError(f"term {exp} is not homogeneous of degree {self.degree}")
            if not coeff:
                raise ValueError("zero coefficients must not be stored")
            if exp in seen:
                raise ValueError(f"duplicate exponent {exp}")
            seen.add(exp)

    @classmethod
    def from_dict(cls, degree: int, nvars: int, coeffs: Mapping[tuple[int, ...], object]) -> "HomogeneousPolynomial":
        terms = []
        for exp, c in coeffs.items():
            c = GaussianRational.coerce(c) if not isinstance(c, GaussianRational) else c
            if c:
                terms.append(MonomialTerm(tuple(exp), c))
        terms.sort(key=lambda t: t.exp, reverse=True)
        return cls(degree, nvars, tuple(terms))

    def as_dict(self) -> dict:
        return {t.exp: t.coeff for t in self.terms}

    def __len__(self):
        return len(self.terms)


@dataclass(frozen=True)
class PolySystem:
    """``n`` homogeneous polynomials in ``n + 1`` variables."""

    polys: tuple[HomogeneousPolynomial, ...]

    def __post_init__(self):
        if not self.polys:
            raise ValueError("a system needs at least one polynomial")
        nv = self.polys[0].nvars
        if any(p.nvars != nv for p in self.polys):
            raise ValueError("all polynomials must share the same variables")
        if nv != len(self.polys) + 1:
            raise ValueError(f"expected n + 1 = {len(self.polys) + 1} variables, got {nv}")

    @property
    def n(self) -> int:
        return len(self.polys)

    @property
    def nvars(self) -> int:
        return self.n + 1

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.polys)

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    @property
    def size(self) -> int:
        """Number of stored (nonzero) monomials."""
        return sum(len(p) for p in self.polys)

    @classmethod
    def from_dicts(cls, degrees: Sequence[int], coeff_dicts: Sequence[Mapping]) -> "PolySystem":
        nvars = len(degrees) + 1
        return cls(tuple(
            HomogeneousPolynomial.from_dict(d, nvars, c) for d, c in zip(degrees, coeff_dicts)
        ))

    def __add__(self, other: "PolySystem") -> "PolySystem":
        return linear_combination(1, self, 1, other)

    def __sub__(self, other: "PolySystem") -> "PolySystem":
        return linear_combination(1, self, -1, other)

    def scale(self, a) -> "PolySystem":
        return linear_combination(a, self, 0, self)


def _check_shape(f: PolySystem, g: PolySystem) -> None:
    if f.n != g.n or f.degrees != g.degrees:
        raise ValueError(f"shape mismatch: degrees {f.degrees} vs {g.degrees}")


def _poly_inner(p: HomogeneousPolynomial, q: HomogeneousPolynomial) -> GaussianRational:
    qd = q.as_dict()
    acc = ZERO
    for exp, c in p.terms:
        other = qd.get(exp)
        if other is not None:
            acc = acc + c * other.conj() * bw_weight(exp, p.degree)
    return acc


def bw_inner(f: PolySystem, g: PolySystem) -> GaussianRational:
    """Hermitian Bombieri-Weyl product, linear in ``f`` and conjugate-linear in ``g``."""
    _check_shape(f, g)
    acc = ZERO
    for p, q in zip(f.polys, g.polys):
        acc = acc + _poly_inner(p, q)
    return acc


def bw_norm_sq(f: PolySystem) -> Fraction:
    total = Fraction(0)
    for p in f.polys:
        for exp, c in p.terms:
            total += c.abs2() * bw_weight(exp, p.degree)
    return total


def linear_combination(a, f: PolySystem, b, g: PolySystem) -> PolySystem:
    """``a*f + b*g`` with merged terms and pruned zeros."""
    _check_shape(f, g)
    a = GaussianRational.coerce(a)
    b = GaussianRational.coerce(b)
    polys = []
    for p, q in zip(f.polys, g.polys):
        merged: dict = {}
        if a:
            for exp, c in p.terms:
                merged[exp] = a * c
        if b:
            for exp, c in q.terms:
                merged[exp] = merged.get(exp, ZERO) + b * c
        polys.append(HomogeneousPolynomial.from_dict(p.degree, p.nvars, merged))
    return PolySystem(tuple(polys))


def _powers(z: QVector, max_deg: int) -> list[list[GaussianRational]]:
    one = GaussianRational(1)
    table = []
    for x in z:
        row = [one]
        for _ in range(max_deg):
            row.append(row[-1] * x)
        table.append(row)
    return table


def _monomial(pw, exp) -> GaussianRational:
    val = None
    for k, e in enumerate(exp):
        if e:
            val = pw[k][e] if val is None else val * pw[k][e]
    return val if val is not None else GaussianRational(1)


def evaluate(f: PolySystem, z: Sequence[GaussianRational]) -> QVector:
    if len(z) != f.nvars:
        raise ValueError(f"point has {len(z)} coordinates, system has {f.nvars} variables")
    pw = _powers(tuple(z), f.max_degree)
    out = []
    for p in f.polys:
        acc = ZERO
        for exp, c in p.terms:
            acc = acc + c * _monomial(pw, exp)
        out.append(acc)
    return tuple(out)


def jacobian(f: PolySystem, z: Sequence[GaussianRational]) -> QMatrix:
    """``n x (n+1)`` matrix of partial derivatives at ``z``."""
    if len(z) != f.nvars:
        raise ValueError(f"point has {len(z)} coordinates, system has {f.nvars} variables")
    pw = _powers(tuple(z), f.max_degree)
    rows = []
    for p in f.polys:
        row = [ZERO] * f.nvars
        for exp, c in p.terms:
            for j, e in enumerate(exp):
                if e == 0:
                    continue
                dexp = exp[:j] + (e - 1,) + exp[j + 1:]
                row[j] = row[j] + c * e * _monomial(pw, dexp)
        rows.append(tuple(row))
    return tuple(rows)


# --- JSON file format -----------------------------------------------------

def system_to_json(f: PolySystem) -> dict:
    return {
        "n": f.n,
        "vars": f.nvars,
        "polys": [
            {
                "degree": p.degree,
                "terms": [
                    {"exp": list(t.exp), **t.coeff.to_json()} for t in p.terms
                ],
            }
            for p in f.polys
        ],
    }


def system_from_json(obj: Mapping) -> PolySystem:
    try:
        n = int(obj["n"])
        nvars = int(obj.get("vars", n + 1))
        raw_polys = obj["polys"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed system object: {exc}") from exc
    if nvars != n + 1:
        raise ValueError(f"'vars' must equal n + 1 = {n + 1}, got {nvars}")
    if len(raw_polys) != n:
        raise ValueError(f"expected {n} polynomials, got {len(raw_polys)}")
    polys = []
    for raw in raw_polys:
        degree = int(raw["degree"])
        coeffs: dict = {}
        for term in raw["terms"]:
            exp = tuple(int(e) for e in term["exp"])
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have {nvars} entries")
            if sum(exp) != degree:
                raise ValueError(f"non-homogeneous term {exp} in a degree-{degree} polynomial")
            c = GaussianRational(str(term.get("re", "0")), str(term.get("im", "0")))
            coeffs[exp] = coeffs.get(exp, ZERO) + c
        polys.append(HomogeneousPolynomial.from_dict(degree, nvars, coeffs))
    return PolySystem(tuple(polys))


def load_system(path) -> PolySystem:
    with open(path, encoding="utf-8") as fh:
        return system_from_json(json.load(fh))


def dump_system(f: PolySystem, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(system_to_json(f), fh, indent=2)
        fh.write("\n")


def system_from_terms(terms_per_poly: Iterable[Mapping[tuple[int, ...], object]]) -> PolySystem:
    """Build a system inferring degrees from the exponents (convenience for scripts)."""
    dicts = [dict(t) for t in terms_per_poly]
    degrees = [sum(next(iter(d))) for d in dicts]
    return PolySystem.from_dicts(degrees, dicts)
