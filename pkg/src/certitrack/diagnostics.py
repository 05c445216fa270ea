"""Floating-point verification helpers.

Nothing here is part of the certified computation.  Exact inputs are
converted to double precision as late as possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .exact_arith import (
    GaussianRational,
    QVector,
    SingularMatrix,
    hermitian_inner,
    invert,
    norm_sq,
    qvector,
)
from .conditioning import augmented_matrix, projective_newton
from .polysys import PolySystem, bw_inner, bw_norm_sq, jacobian, linear_combination
from .tracker import StepRecord, TrackerConfig, track_segment

__all__ = [
    "QuadratureError",
    "ToyFamily",
    "TOY_REFERENCE",
    "TOY_M_VALUES",
    "adaptive_simpson",
    "condition_length_toy",
    "StepBounds",
    "step_bounds",
    "BoundsReport",
    "bounds_report",
    "format_bounds_table",
    "mu_operator",
    "chi1_operator",
    "chi2_sq_direct",
    "projective_distance",
    "ContractionReport",
    "newton_contraction_check",
    "BitStats",
    "bit_stats",
    "lu_bit_scale",
]


class QuadratureError(RuntimeError):
    pass


# m -> (LB, steps, UB, UB/steps) as reported for the toy family x1^2 - (1 + m t) x0^2
TOY_REFERENCE: dict[int, tuple[int, int, int, float]] = {
    10: (31, 184, 357, 1.95),
    20: (38, 217, 435, 2.01),
    30: (42, 237, 480, 2.03),
    40: (45, 250, 512, 2.05),
    50: (47, 260, 537, 2.07),
    60: (49, 269, 558, 2.08),
    70: (50, 276, 575, 2.08),
    80: (52, 282, 590, 2.09),
    90: (53, 288, 603, 2.10),
    100: (54, 292, 615, 2.11),
    1000: (77, 395, 872, 2.21),
    2000: (84, 426, 949, 2.23),
    3000: (88, 446, 995, 2.23),
    4000: (91, 457, 1027, 2.25),
    5000: (93, 468, 1052, 2.25),
    10000: (100, 499, 1129, 2.26),
    20000: (106, 530, 1207, 2.28),
    30000: (110, 547, 1252, 2.29),
}
TOY_M_VALUES = tuple(TOY_REFERENCE)


@dataclass(frozen=True)
class ToyFamily:
    """``f_t = x1^2 - (1 + m t) x0^2`` with zero curve ``(1, sqrt(1 + m t))``."""

    m: Fraction

    def __post_init__(self):
        object.__setattr__(self, "m", Fraction(self.m))
        if self.m <= 0:
            raise ValueError("m must be positive")

    @property
    def g(self) -> PolySystem:
        return PolySystem.from_dicts([2], [{(0, 2): 1, (2, 0): -1}])

    @property
    def f(self) -> PolySystem:
        return PolySystem.from_dicts([2], [{(0, 2): 1, (2, 0): -(1 + self.m)}])

    @property
    def z0(self) -> QVector:
        return qvector([1, 1])

    def system_at(self, t) -> PolySystem:
        t = Fraction(t)
        return linear_combination(1 - t, self.g, t, self.f)

    def zero_at(self, t: float) -> tuple[float, float]:
        return (1.0, math.sqrt(1.0 + float(self.m) * t))

    @staticmethod
    def chi1(s: float) -> float:
        """Condition number along the path as a function of ``s = 1 + m t``."""
        return math.sqrt(1.0 + s * s) / math.sqrt(2.0 * s)

    @staticmethod
    def integrand(s: float) -> float:
        return ToyFamily.chi1(s) * math.sqrt(
            1.0 / (1.0 + s * s) ** 2 + 1.0 / (4.0 * s * (1.0 + s) ** 2)
        )


def _simpson(fa, fm, fb, h):
    return h * (fa + 4.0 * fm + fb) / 6.0


def adaptive_simpson(
    func: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-8,
    max_intervals: int = 200_000,
) -> float:
    """Adaptive Simpson quadrature with interval halving and Richardson correction."""
    if b == a:
        return 0.0
    # coarse composite estimate sets the absolute target
    panels = 64
    xs = np.linspace(a, b, 2 * panels + 1)
    ys = np.array([func(x) for x in xs])
    h = (b - a) / panels
    coarse = float(h / 6.0 * (ys[0:-1:2] + 4.0 * ys[1::2] + ys[2::2]).sum())
    tol = rel_tol * max(abs(coarse), np.finfo(float).tiny)

    total = 0.0
    fa, fm, fb = func(a), func(0.5 * (a + b)), func(b)
    stack = [(a, b, fa, fm, fb, _simpson(fa, fm, fb, b - a))]
    count = 0
    width = b - a
    while stack:
        lo, hi, flo, fmid, fhi, whole = stack.pop()
        mid = 0.5 * (lo + hi)
        fl = func(0.5 * (lo + mid))
        fr = func(0.5 * (mid + hi))
        left = _simpson(flo, fl, fmid, mid - lo)
        right = _simpson(fmid, fr, fhi, hi - mid)
        err = left + right - whole
        local_tol = tol * (hi - lo) / width
        if abs(err) <= 15.0 * local_tol or (hi - lo) < 1e-12 * width:
            total += left + right + err / 15.0
            continue
        count += 1
        if count > max_intervals:
            raise QuadratureError(f"adaptive Simpson did not converge within {max_intervals} subdivisions")
        stack.append((lo, mid, flo, fl, fmid, left))
        stack.append((mid, hi, fmid, fr, fhi, right))
    return total


def condition_length_toy(m, rel_tol: float = 1e-8) -> float:
    """Condition length of the toy path, integrated over ``s`` in ``[1, 1 + m]``."""
    m = float(m)
    if m <= 0:
        raise ValueError("m must be positive")
    if not (0 < rel_tol <= 1e-4):
        raise ValueError("rel_tol must lie in (0, 1e-4]")
    return adaptive_simpson(ToyFamily.integrand, 1.0, 1.0 + m, rel_tol)


@dataclass(frozen=True)
class StepBounds:
    lb: int  # floor(28 C0), the form matching the reference table
    ub: int  # ceil(79 sqrt(n+1) d^(3/2) C0)
    lb_text: int  # floor(28 d^(3/2) C0)


def step_bounds(c0: float, n: int, d: int) -> StepBounds:
    if c0 < 0:
        raise ValueError("condition length must be nonnegative")
    # sqrt((n+1) d^3) keeps 316 exact for n = 1, d = 2
    ub = math.ceil(79.0 * math.sqrt((n + 1) * d ** 3) * c0)
    lb = math.floor(28.0 * c0)
    lb_text = math.floor(28.0 * math.sqrt(d ** 3) * c0)
    return StepBounds(lb=lb, ub=ub, lb_text=lb_text)


@dataclass
class BoundsReport:
    m: Fraction
    c0: float
    lb: int
    ub: int
    observed_steps: int
    lb_text: int
    status: str = "Certified"

    @property
    def ratio_ub_over_steps(self) -> float:
        return self.ub / self.observed_steps if self.observed_steps else math.inf

    @property
    def bracketed(self) -> bool:
        return self.lb <= self.observed_steps <= self.ub

    def to_json(self) -> dict:
        return {
            "m": str(self.m),
            "c0": self.c0,
            "lb": self.lb,
            "lb_text": self.lb_text,
            "steps": self.observed_steps,
            "ub": self.ub,
            "ub_over_steps": self.ratio_ub_over_steps,
            "status": self.status,
        }


def bounds_report(m, cfg: TrackerConfig | None = None, rel_tol: float = 1e-8) -> BoundsReport:
    """Quadrature bounds plus an actual tracking run for the toy family."""
    fam = ToyFamily(m)
    c0 = condition_length_toy(fam.m, rel_tol)
    sb = step_bounds(c0, n=1, d=2)
    result = track_segment(fam.f, fam.g, fam.z0, cfg)
    return BoundsReport(
        m=fam.m, c0=c0, lb=sb.lb, ub=sb.ub, observed_steps=result.steps,
        lb_text=sb.lb_text, status=result.status.value,
    )


def format_bounds_table(reports: Iterable[BoundsReport]) -> str:
    """Fixed-width table; floats carry 17 significant digits."""
    lines = [f"{'m':>8} {'LB':>6} {'steps':>7} {'UB':>6} {'UB/steps':>20} {'C0':>20}"]
    for r in reports:
        lines.append(
            f"{str(r.m):>8} {r.lb:>6} {r.observed_steps:>7} {r.ub:>6}"
            f" {r.ratio_ub_over_steps:>20.17g} {r.c0:>20.17g}"
        )
    return "\n".join(lines)


# --- condition numbers at float precision ---------------------------------

def _to_complex_array(rows) -> np.ndarray:
    return np.array([[complex(c) for c in row] for row in rows], dtype=complex)


def _exact_aug_inverse(f: PolySystem, z: QVector):
    try:
        return invert(augmented_matrix(jacobian(f, z), z))
    except SingularMatrix:
        return None


def mu_operator(f: PolySystem, z: Sequence[GaussianRational]) -> float:
    """``||f|| * ||(Df(z)|_{z-perp})^-1 Diag(||z||^(d_i-1) sqrt(d_i))||`` (spectral norm)."""
    z = tuple(GaussianRational.coerce(c) for c in z)
    if not any(z):
        raise ValueError("z must be nonzero")
    M = _exact_aug_inverse(f, z)
    if M is None:
        return math.inf
    # the first n columns of the augmented inverse realize the restricted inverse
    A = _to_complex_array(M)[:, : f.n]
    zn = math.sqrt(float(norm_sq(z)))
    scale = np.array([zn ** (d - 1) * math.sqrt(d) for d in f.degrees])
    return math.sqrt(float(bw_norm_sq(f))) * float(np.linalg.norm(A * scale[None, :], 2))


def chi1_operator(g: PolySystem, z: Sequence[GaussianRational]) -> float:
    """Spectral-norm version of the first condition factor (no Frobenius relaxation)."""
    z = tuple(GaussianRational.coerce(c) for c in z)
    M = _exact_aug_inverse(g, z)
    if M is None:
        return math.inf
    gn = math.sqrt(float(bw_norm_sq(g)))
    zn = math.sqrt(float(norm_sq(z)))
    diag = [math.sqrt(d) * gn * zn ** (d - 1) for d in g.degrees] + [zn]
    A = _to_complex_array(M) * np.array(diag)[None, :]
    return float(np.linalg.norm(A, 2))


def _eval_float(f: PolySystem, z: np.ndarray) -> np.ndarray:
    out = np.zeros(f.n, dtype=complex)
    for i, p in enumerate(f.polys):
        for exp, c in p.terms:
            out[i] += complex(c) * np.prod(z ** np.array(exp))
    return out


def chi2_sq_direct(g: PolySystem, f: PolySystem, z: Sequence[GaussianRational]) -> float:
    """Second condition factor squared, built from the unit tangent toward ``f``.

    Evaluates ``||gdot||^2 + ||g||^2/||z||^2 * ||(Dg; z*)^-1 (gdot(z); 0)||^2``
    directly in floating point; used to cross-check the exact formula.
    """
    z = tuple(GaussianRational.coerce(c) for c in z)
    n_g = float(bw_norm_sq(g))
    n_f = float(bw_norm_sq(f))
    re_fg = float(bw_inner(f, g).re)
    denom = math.sqrt(n_g) * math.sqrt(n_f * n_g - re_fg ** 2)
    zf = np.array([complex(c) for c in z])
    gdot_z = (n_g * _eval_float(f, zf) - re_fg * _eval_float(g, zf)) / denom
    # ||gdot|| = 1 by construction; recompute to keep this route independent
    gdot_sq = (n_g ** 2 * n_f - 2 * n_g * re_fg * re_fg + re_fg ** 2 * n_g) / denom ** 2
    A = _to_complex_array(augmented_matrix(jacobian(g, z), z))
    w = np.linalg.solve(A, np.concatenate([gdot_z, [0.0]]))
    return gdot_sq + n_g / float(norm_sq(z)) * float(np.vdot(w, w).real)


# --- approximate-zero checks ----------------------------------------------

def projective_distance(z: Sequence[GaussianRational], w: Sequence[GaussianRational]) -> float:
    """Riemannian distance in projective space, from an exact ``sin^2``."""
    ip = hermitian_inner(z, w)
    cos_sq = ip.abs2() / (norm_sq(z) * norm_sq(w))
    sin_sq = max(0.0, float(1 - cos_sq))
    return math.asin(min(1.0, math.sqrt(sin_sq)))


@dataclass
class ContractionReport:
    displacements: list[float]
    passed: bool
    message: str = ""
    factor: float = 0.51


def newton_contraction_check(
    f: PolySystem,
    z: Sequence[GaussianRational],
    iters: int = 3,
    factor: float = 0.51,
) -> ContractionReport:
    """Heuristic approximate-zero screen.

    Runs ``iters`` exact projective Newton steps and requires every projective
    displacement to be at most ``factor`` times the previous one.  Passing is
    evidence of quadratic convergence, not a certificate.
    """
    if iters < 2:
        raise ValueError("need at least two iterations to compare displacements")
    cur = tuple(GaussianRational.coerce(c) for c in z)
    disp: list[float] = []
    for l in range(iters):
        try:
            nxt = projective_newton(f, cur)
        except SingularMatrix:
            return ContractionReport(disp, False, f"singular Jacobian at iteration {l}", factor)
        disp.append(projective_distance(cur, nxt))
        cur = nxt
    for l in range(1, len(disp)):
        if disp[l] > factor * disp[l - 1]:
            return ContractionReport(
                disp, False,
                f"displacement {l} ({disp[l]:.3e}) exceeds {factor} x previous ({disp[l - 1]:.3e})",
                factor,
            )
    return ContractionReport(disp, True, "", factor)


# --- bit growth -----------------------------------------------------------

@dataclass(frozen=True)
class BitStats:
    steps: int
    max_z_bits: int
    mean_z_bits: float
    max_s_den_bits: int
    mean_s_den_bits: float
    max_lu_depth: int


def bit_stats(trace: Sequence[StepRecord]) -> BitStats:
    if not trace:
        raise ValueError("empty trace")
    zb = [r.z_bits for r in trace]
    sb = [r.s_next.denominator.bit_length() - 1 for r in trace]
    return BitStats(
        steps=len(trace),
        max_z_bits=max(zb),
        mean_z_bits=sum(zb) / len(zb),
        max_s_den_bits=max(sb),
        mean_s_den_bits=sum(sb) / len(sb),
        max_lu_depth=max(r.lu_depth for r in trace),
    )


def min_path_norm_sq(f: PolySystem, g: PolySystem) -> Fraction:
    """Exact ``min_{t in [0,1]} ||(1-t) g + t f||^2``."""
    n1 = bw_norm_sq(f)
    n2 = bw_norm_sq(g)
    n3 = bw_inner(f, g).re
    # q(t) = n2 + 2 t (n3 - n2) + t^2 (n1 + n2 - 2 n3)
    a = n1 + n2 - 2 * n3
    b = n3 - n2
    cands = [Fraction(0), Fraction(1)]
    if a > 0:
        t = -b / a
        if 0 < t < 1:
            cands.append(t)
    return min(n2 + 2 * t * b + t * t * a for t in cands)


def lu_bit_scale(f: PolySystem, g: PolySystem, mu_max: float) -> float:
    """``log2 max(1, ||f-g|| n d^3 mu_max / min_t ||f_t||)``.

    The bisection depth, hence the bit length of the path parameters, is
    ``O`` of this quantity.
    """
    diff = math.sqrt(float(bw_norm_sq(f - g)))
    lo = math.sqrt(float(min_path_norm_sq(f, g)))
    val = diff * f.n * f.max_degree ** 3 * mu_max / lo
    return math.log2(max(1.0, val))
