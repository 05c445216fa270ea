"""Shared fixtures and hypothesis strategies."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from certitrack.diagnostics import ToyFamily
from certitrack.exact_arith import GaussianRational
from certitrack.polysys import HomogeneousPolynomial, PolySystem

small_int = st.integers(min_value=-50, max_value=50)
small_pos = st.integers(min_value=1, max_value=30)


@st.composite
def rationals(draw, bits: int = 16):
    lim = 2**bits
    num = draw(st.integers(-lim, lim))
    den = draw(st.integers(1, lim))
    return Fraction(num, den)


@st.composite
def gaussians(draw, bits: int = 16):
    return GaussianRational(draw(rationals(bits)), draw(rationals(bits)))


def gaussian_vectors(dim: int, bits: int = 16):
    return st.tuples(*[gaussians(bits)] * dim)


def exponents(nvars: int, degree: int) -> list[tuple[int, ...]]:
    return [
        e for e in itertools.product(range(degree + 1), repeat=nvars) if sum(e) == degree
    ]


@st.composite
def homogeneous_polys(draw, nvars: int = 2, max_degree: int = 4, degree: int | None = None):
    d = degree if degree is not None else draw(st.integers(1, max_degree))
    coeffs = {}
    for e in exponents(nvars, d):
        if draw(st.booleans()):
            c = GaussianRational(draw(small_int), draw(small_int))
            if c:
                coeffs[e] = c
    if not coeffs:
        coeffs[exponents(nvars, d)[0]] = GaussianRational(1)
    return HomogeneousPolynomial.from_dict(d, nvars, coeffs)


@st.composite
def poly_systems(draw, n: int = 1, max_degree: int = 3, degrees=None):
    nvars = n + 1
    if degrees is None:
        degrees = [draw(st.integers(1, max_degree)) for _ in range(n)]
    return PolySystem(tuple(draw(homogeneous_polys(nvars, degree=d)) for d in degrees))


@pytest.fixture(scope="session")
def toy10():
    return ToyFamily(Fraction(10))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
