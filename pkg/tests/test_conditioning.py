from fractions import Fraction

import math
import pytest
from hypothesis import given, settings, strategies as st

from certitrack.conditioning import (
    CONSTANTS,
    CollinearSystems,
    augmented_inverse,
    b_factor,
    chi1_tilde_sq,
    condition_data,
    newton_step,
    projective_newton,
    step_window,
)
from certitrack.diagnostics import ToyFamily, chi1_operator, chi2_sq_direct
from certitrack.exact_arith import SingularMatrix, gr, identity, qmatrix, qvector
from certitrack.polysys import jacobian

from conftest import poly_systems

Q = Fraction
TOY_M = qmatrix([[Q(-1, 4), Q(1, 2)], [Q(1, 4), Q(1, 2)]])


def test_constants():
    assert CONSTANTS.u0 == Q(17586, 100000)
    assert CONSTANTS.delta == Q(3, 4)
    assert CONSTANTS.w0(2) == Q(17, 400000)
    assert CONSTANTS.l0 == Q(999, 1000)
    for d in range(1, 11):
        e = CONSTANTS.eps0(d)
        assert 0 < e < Q(1, 5)
        assert e == CONSTANTS.u0 ** 2 / ((4 * d) ** 3 * (1 + Q(9, 8) * CONSTANTS.u0) ** 2)


def test_augmented_inverse_examples():
    assert augmented_inverse(qmatrix([[-2, 2]]), qvector([1, 1])) == TOY_M
    assert augmented_inverse(qmatrix([[-2, 3]]), qvector([1, Q(3, 2)])) == qmatrix(
        [[Q(-1, 4), Q(1, 2)], [Q(1, 6), Q(1, 3)]]
    )
    with pytest.raises(SingularMatrix):
        augmented_inverse(qmatrix([[0, 0]]), qvector([1, 0]))


def test_augmented_row_is_conjugated():
    z = qvector([gr(1, 1), gr(0, 2)])
    M = augmented_inverse(qmatrix([[gr(1), gr(1)]]), z)
    from certitrack.exact_arith import matmul
    A = (qvector([1, 1]), tuple(c.conj() for c in z))
    assert matmul(A, M) == identity(2)


def test_chi1_examples():
    assert chi1_tilde_sq(TOY_M, Q(2), Q(2), (2,)) == 2
    assert chi1_tilde_sq(identity(2), Q(1), Q(1), (2,)) == 3


def test_chi1_projective_scaling():
    for lam in (Q(3), Q(-2, 7)):
        z = qvector([lam, lam])
        M = augmented_inverse(qmatrix([[-2 * lam, 2 * lam]]), z)
        assert chi1_tilde_sq(M, Q(2), 2 * lam * lam, (2,)) == 2


@pytest.mark.parametrize("m", [Q(1), Q(10), Q(7, 3)])
def test_b_factor_toy_start(m):
    n1 = 1 + (1 + m) ** 2
    b = b_factor(TOY_M, qvector([-m]), qvector([0]), n1, Q(2), 2 + m, Q(2))
    assert b == Q(5, 4)


def test_b_factor_edge_cases():
    assert b_factor(TOY_M, qvector([0]), qvector([0]), Q(3), Q(2), Q(1), Q(2)) == 1
    with pytest.raises(CollinearSystems):
        b_factor(TOY_M, qvector([1]), qvector([0]), Q(4), Q(1), Q(2), Q(2))


def test_step_window_examples():
    W, L, U = step_window(Q(2), Q(5, 4), 2)
    assert W == Q(17, 1000000)
    assert L == 1 - W + W * W / 6
    assert U == 1 - Q(17, 2000000)
    assert step_window(Q(1), Q(1), 1)[0] == Q(17, 50000)
    W, L, U = step_window(Q(10**9), Q(10**9), 3)
    assert L < U < 1 and 1 - L < Q(1, 10**18)


def test_step_window_rejects_nonpositive():
    with pytest.raises(ValueError):
        step_window(Q(0), Q(1), 2)


def test_newton_examples():
    g = ToyFamily(Q(10)).g
    z = qvector([1, Q(3, 2)])
    assert projective_newton(g, z) == qvector([Q(21, 16), Q(31, 24)])
    assert projective_newton(g, qvector([1, 1])) == qvector([1, 1])
    z2 = tuple(2 * c for c in z)
    assert projective_newton(g, z2) == tuple(2 * c for c in projective_newton(g, z))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_newton_scaling_covariance(data):
    f = data.draw(poly_systems(n=1, max_degree=3))
    z = qvector([gr(data.draw(st.integers(-9, 9)), data.draw(st.integers(-9, 9))) for _ in range(2)])
    lam = gr(data.draw(st.integers(1, 9)), data.draw(st.integers(-9, 9)))
    try:
        nz = projective_newton(f, z)
    except (SingularMatrix, ValueError):
        return
    assert projective_newton(f, tuple(lam * c for c in z)) == tuple(lam * c for c in nz)


def test_newton_step_matches_projective_newton():
    f = ToyFamily(Q(10)).f
    z = qvector([1, Q(10, 3)])
    from certitrack.polysys import evaluate
    assert newton_step(jacobian(f, z), evaluate(f, z), z, verify=True) == projective_newton(f, z)


# --- invariance and float cross-checks -------------------------------------

def _random_pair(data):
    g = data.draw(poly_systems(n=1, degrees=[2]))
    f = data.draw(poly_systems(n=1, degrees=[2]))
    z = qvector([gr(data.draw(st.integers(-5, 5)), data.draw(st.integers(-5, 5))) for _ in range(2)])
    return g, f, z


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_condition_data_projective_invariance(data):
    g, f, z = _random_pair(data)
    lam = Q(data.draw(st.integers(1, 9)), data.draw(st.integers(1, 9))) * data.draw(st.sampled_from([1, -1]))
    try:
        base = condition_data(g, f, z)
    except (SingularMatrix, CollinearSystems, ValueError):
        return
    z_scaled = condition_data(g, f, tuple(lam * c for c in z))
    g_scaled = condition_data(g.scale(lam), f, z)
    assert (z_scaled.a, z_scaled.b) == (base.a, base.b)
    assert (g_scaled.a, g_scaled.b) == (base.a, base.b)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_b_matches_direct_chi2(data):
    g, f, z = _random_pair(data)
    try:
        cd = condition_data(g, f, z)
    except (SingularMatrix, CollinearSystems, ValueError):
        return
    direct = chi2_sq_direct(g, f, z)
    assert math.isclose(float(cd.b), direct, rel_tol=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_frobenius_sandwich(data):
    g, f, z = _random_pair(data)
    try:
        cd = condition_data(g, f, z)
    except (SingularMatrix, CollinearSystems, ValueError):
        return
    op = chi1_operator(g, z) ** 2
    a = float(cd.a)
    assert op * (1 - 1e-8) <= a <= 2 * op * (1 + 1e-8)


def test_eps_below_fifth():
    fam = ToyFamily(Q(10))
    cd = condition_data(fam.g, fam.f, fam.z0)
    assert cd.a == 2 and cd.b == Q(5, 4)
    assert 0 < cd.eps < Q(1, 5)
