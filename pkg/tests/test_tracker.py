from fractions import Fraction

import pytest

from certitrack.diagnostics import ToyFamily, newton_contraction_check
from certitrack.exact_arith import gr, qvector
from certitrack.polysys import HomogeneousPolynomial, PolySystem, bw_inner, bw_norm_sq, linear_combination
from certitrack.stepsize import in_window
from certitrack.tracker import (
    TraceLevel,
    TrackerConfig,
    TrackStatus,
    cache_invariants,
    track_segment,
)

Q = Fraction


def one(coeffs, degree=2):
    return PolySystem((HomogeneousPolynomial.from_dict(degree, 2, coeffs),))


@pytest.fixture(scope="module")
def run10():
    fam = ToyFamily(Q(10))
    return fam, track_segment(fam.f, fam.g, fam.z0, TrackerConfig(trace_level="full"))


def test_cache_invariants():
    fam = ToyFamily(Q(10))
    assert cache_invariants(fam.f, fam.g) == (122, 2, 12, 100)
    assert cache_invariants(fam.g, fam.g)[3] == 0
    n1, n2, n3, nd = cache_invariants(fam.g.scale(-1), fam.g)
    assert nd == 4 * n2


def test_toy_m10_certified(run10):
    fam, res = run10
    assert res.status is TrackStatus.CERTIFIED
    assert 31 <= res.steps <= 357
    assert res.steps == len(res.trace)
    assert all(c.is_gaussian_integer() for c in res.z_star)
    assert newton_contraction_check(fam.f, res.z_star).passed


def test_path_parameter_monotone(run10):
    _, res = run10
    s_values = [r.s for r in res.trace] + [res.trace[-1].s_next]
    assert s_values[0] == 0 and s_values[-1] == 1
    assert all(a < b for a, b in zip(s_values, s_values[1:]))
    assert all(r.s_next == min(1, r.s + r.t) for r in res.trace)


def test_steps_respect_window(run10):
    fam, res = run10
    h = fam.f - fam.g
    for r in res.trace:
        if r.s_next == 1:
            continue
        gi = linear_combination(1 - r.s, fam.g, r.s, fam.f)
        theta1 = bw_norm_sq(gi)
        theta2 = bw_inner(gi, h).re
        theta3 = bw_norm_sq(h)
        assert in_window(theta1, theta2, theta3, r.t, r.L, r.U)
        assert r.W == Q(17, 50000) / 8 / (r.a * r.b)


def test_coordinate_bound_every_step(run10):
    _, res = run10
    for r in res.trace:
        bound = 9 * 2 / r.eps
        assert all(c.is_gaussian_integer() for c in r.z)
        assert all(c.re ** 2 <= bound and c.im ** 2 <= bound for c in r.z)


def test_toy_m100_bracket():
    fam = ToyFamily(Q(100))
    res = track_segment(fam.f, fam.g, fam.z0, TrackerConfig(trace_level="none"))
    assert res.certified and 54 <= res.steps <= 615


def test_without_denominator_matching():
    fam = ToyFamily(Q(10))
    res = track_segment(fam.f, fam.g, fam.z0, TrackerConfig(denominator_matching=False))
    assert res.certified and 31 <= res.steps <= 357
    assert newton_contraction_check(fam.f, res.z_star).passed


def test_collinear_rejected():
    g = ToyFamily(Q(10)).g
    res = track_segment(g.scale(3), g, qvector([1, 1]))
    assert res.status is TrackStatus.HYPOTHESIS_VIOLATED
    assert "inequality (1)" in res.message
    assert res.z_star is None and res.steps == 0


def test_hypothesis_violation_rejected():
    g = one({(2, 0): 1})
    f = one({(2, 0): Q(1, 10**4), (0, 2): Q(1, 10**6)})
    res = track_segment(f, g, qvector([0, 1]))
    assert res.status is TrackStatus.HYPOTHESIS_VIOLATED
    assert "inequality (1)" in res.message


def test_singular_start():
    fam = ToyFamily(Q(10))
    res = track_segment(fam.f, fam.g, qvector([1, 0]))
    assert res.status is TrackStatus.SINGULAR_ENCOUNTERED
    assert "step 0" in res.message


def test_max_steps():
    fam = ToyFamily(Q(10))
    res = track_segment(fam.f, fam.g, fam.z0, TrackerConfig(max_steps=5))
    assert res.status is TrackStatus.MAX_STEPS_EXCEEDED
    assert res.steps == 5 and len(res.trace) == 5


def test_bit_fuse():
    fam = ToyFamily(Q(10))
    res = track_segment(fam.f, fam.g, fam.z0, TrackerConfig(max_bits=4))
    assert res.status is TrackStatus.BIT_LIMIT_EXCEEDED


def test_input_validation():
    fam = ToyFamily(Q(10))
    with pytest.raises(ValueError):
        track_segment(fam.f, fam.g, qvector([0, 0]))
    with pytest.raises(ValueError):
        track_segment(fam.f, fam.g, qvector([1, 1, 1]))
    with pytest.raises(ValueError):
        TrackerConfig(max_steps=0)


def test_deterministic_json():
    fam = ToyFamily(Q(10))
    a = track_segment(fam.f, fam.g, fam.z0).dumps()
    b = track_segment(fam.f, fam.g, fam.z0).dumps()
    assert a == b
    assert '"status": "Certified"' in a


def test_trace_levels(run10):
    _, res = run10
    assert res.to_json(TraceLevel.NONE)["trace"] == []
    summary = res.to_json("summary")["trace"][0]
    assert "z" in summary  # the full run kept iterates
    assert set(summary) >= {"i", "s", "t", "a", "b", "W", "L", "U", "eps", "z_bits", "lu_depth"}


def test_complex_target():
    g = one({(0, 2): 1, (2, 0): -1})
    f = one({(0, 2): 1, (2, 0): gr(-1, -3)})  # x1^2 = (1 + 3i) x0^2
    res = track_segment(f, g, qvector([1, 1]))
    assert res.certified
    assert newton_contraction_check(f, res.z_star).passed
    x0, x1 = (complex(c) for c in res.z_star)
    w = x1 / x0
    # z* is an approximate zero, not the zero itself; it must sit on the
    # branch continued from +1, i.e. near the principal square root
    import cmath
    assert abs(w - cmath.sqrt(1 + 3j)) < 1e-2


def test_two_equations():
    nv = 3

    def p(c):
        return HomogeneousPolynomial.from_dict(2, nv, c)

    g = PolySystem((p({(0, 2, 0): 1, (2, 0, 0): -1}), p({(0, 0, 2): 1, (2, 0, 0): -1})))
    f = PolySystem((p({(0, 2, 0): 1, (2, 0, 0): -2}), p({(0, 0, 2): 1, (2, 0, 0): -3, (1, 1, 0): 1})))
    res = track_segment(f, g, qvector([1, 1, 1]))
    assert res.certified
    assert newton_contraction_check(f, res.z_star).passed
