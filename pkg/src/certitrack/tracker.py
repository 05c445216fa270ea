"""Certified linear-homotopy path tracking in exact rational arithmetic."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .conditioning import (
    CONSTANTS,
    CollinearSystems,
    Constants,
    augmented_matrix,
    b_factor,
    chi1_tilde_sq,
    newton_step,
    step_window,
)
from .exact_arith import (
    GaussianRational,
    QMatrix,
    QVector,
    SingularMatrix,
    format_rational,
    invert,
    norm_sq,
    vector_bit_length,
)
from .polysys import PolySystem, bw_inner, bw_norm_sq, evaluate, jacobian
from .rounding import short_zero
from .stepsize import lu_quadratic, check_hypothesis

__all__ = [
    "TraceLevel",
    "TrackStatus",
    "TrackerConfig",
    "StepRecord",
    "TrackResult",
    "cache_invariants",
    "track_segment",
]


class TraceLevel(str, enum.Enum):
    NONE = "none"
    SUMMARY = "summary"
    FULL = "full"


class TrackStatus(str, enum.Enum):
    CERTIFIED = "Certified"
    HYPOTHESIS_VIOLATED = "HypothesisViolated"
    SINGULAR_ENCOUNTERED = "SingularEncountered"
    MAX_STEPS_EXCEEDED = "MaxStepsExceeded"
    BIT_LIMIT_EXCEEDED = "BitLimitExceeded"


@dataclass(frozen=True)
class TrackerConfig:
    max_steps: int = 10**6
    denominator_matching: bool = True
    bisection_cap_slack: int = 64
    trace_level: TraceLevel = TraceLevel.SUMMARY
    max_bits: int | None = None  # safety fuse on coordinate bit length
    constants: Constants = CONSTANTS

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")
        object.__setattr__(self, "trace_level", TraceLevel(self.trace_level))


@dataclass(frozen=True)
class StepRecord:
    """One loop iteration.

    ``s`` is the parameter at the start of the step and ``s_next`` the one
    reached; ``eps`` is the rounding tolerance used to produce the new
    iterate, whose bit length is ``z_bits`` (the iterate itself is kept only
    at full trace level).
    """

    i: int
    s: Fraction
    s_next: Fraction
    t: Fraction
    a: Fraction
    b: Fraction
    W: Fraction
    L: Fraction
    U: Fraction
    eps: Fraction
    z_bits: int
    lu_depth: int
    exhausted: bool = False
    z: QVector | None = None

    def to_json(self) -> dict:
        out = {
            "i": self.i,
            "s": format_rational(self.s),
            "s_next": format_rational(self.s_next),
            "t": format_rational(self.t),
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "W": format_rational(self.W),
            "L": format_rational(self.L),
            "U": format_rational(self.U),
            "eps": format_rational(self.eps),
            "z_bits": self.z_bits,
            "lu_depth": self.lu_depth,
            "exhausted": self.exhausted,
        }
        if self.z is not None:
            out["z"] = [c.to_json() for c in self.z]
        return out


@dataclass
class TrackResult:
    status: TrackStatus
    z_star: QVector | None
    steps: int
    trace: list[StepRecord] = field(default_factory=list)
    message: str = ""

    @property
    def certified(self) -> bool:
        return self.status is TrackStatus.CERTIFIED

    def to_json(self, trace_level: TraceLevel | str = TraceLevel.SUMMARY) -> dict:
        level = TraceLevel(trace_level)
        return {
            "status": self.status.value,
            "steps": self.steps,
            "message": self.message,
            "z_star": None if self.z_star is None else [c.to_json() for c in self.z_star],
            "trace": [] if level is TraceLevel.NONE else [r.to_json() for r in self.trace],
        }

    def dumps(self, trace_level: TraceLevel | str = TraceLevel.SUMMARY) -> str:
        return json.dumps(self.to_json(trace_level), indent=2, sort_keys=True) + "\n"


def cache_invariants(f: PolySystem, g: PolySystem) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """``(||f||^2, ||g||^2, Re<f,g>, ||f-g||^2)``."""
    n1 = bw_norm_sq(f)
    n2 = bw_norm_sq(g)
    n3 = bw_inner(f, g).re
    n_dot = n1 + n2 - 2 * n3
    return n1, n2, n3, n_dot


def _affine_matrix(A: QMatrix, B: QMatrix, s: Fraction) -> QMatrix:
    u = 1 - s
    if s == 0:
        return A
    if s == 1:
        return B
    return tuple(tuple(a * u + b * s for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def _affine_vector(x: QVector, y: QVector, s: Fraction) -> QVector:
    u = 1 - s
    return tuple(a * u + b * s for a, b in zip(x, y))


def track_segment(
    f: PolySystem,
    g: PolySystem,
    z0: Sequence[GaussianRational],
    cfg: TrackerConfig | None = None,
) -> TrackResult:
    """Follow ``f_t = (1-t) g + t f`` from the approximate zero ``z0`` of ``g``.

    ``z0`` is trusted to lie in the certified basin of a zero of ``g``.  On
    success ``z_star`` is a Gaussian-integer approximate zero of ``f``.
    """
    cfg = cfg or TrackerConfig()
    const = cfg.constants
    if f.n != g.n or f.degrees != g.degrees:
        raise ValueError(f"shape mismatch: degrees {f.degrees} vs {g.degrees}")
    z = tuple(GaussianRational.coerce(c) for c in z0)
    if len(z) != f.nvars:
        raise ValueError(f"z0 must have {f.nvars} coordinates")
    if not any(z):
        raise ValueError("z0 must be nonzero")

    n1, n2, n3, n_dot = cache_invariants(f, g)
    if n3 * n3 == n1 * n2:
        return TrackResult(
            TrackStatus.HYPOTHESIS_VIOLATED, None, 0,
            message="f and g are real-collinear; inequality (1) on the angle between g and f-g cannot hold",
        )
    if not check_hypothesis(f, g, const.l0):
        return TrackResult(
            TrackStatus.HYPOTHESIS_VIOLATED, None, 0,
            message="inequality (1) violated: Re<g, f-g> < -L0 ||g|| ||f-g||",
        )

    degrees = f.degrees
    d = f.max_degree
    eps0 = const.eps0(d)
    keep_z = cfg.trace_level is TraceLevel.FULL

    trace: list[StepRecord] = []
    s = Fraction(0)
    i = 0
    while s < 1:
        if i >= cfg.max_steps:
            return TrackResult(TrackStatus.MAX_STEPS_EXCEEDED, None, i, trace,
                               message=f"stopped at s = {format_rational(s)} after {i} steps")
        u = 1 - s
        n4 = u * u * n2 + s * s * n1 + 2 * s * u * n3
        n5 = u * n3 + s * n1
        n6 = s * n1 - u * n2 + (1 - 2 * s) * n3
        n7 = norm_sq(z)

        M1 = jacobian(g, z)
        M2 = jacobian(f, z)
        try:
            M = invert(augmented_matrix(_affine_matrix(M1, M2, s), z))
        except SingularMatrix as exc:
            return TrackResult(TrackStatus.SINGULAR_ENCOUNTERED, None, i, trace,
                               message=f"step {i}: augmented Jacobian singular at s = {format_rational(s)} ({exc})")
        a = chi1_tilde_sq(M, n4, n7, degrees)

        v1 = evaluate(f, z)
        gz = evaluate(g, z)
        v2 = _affine_vector(gz, v1, s)
        try:
            b = b_factor(M, v1, v2, n1, n4, n5, n7)
        except CollinearSystems as exc:
            return TrackResult(TrackStatus.HYPOTHESIS_VIOLATED, None, i, trace, message=str(exc))
        W, L, U = step_window(a, b, d, const)

        step = lu_quadratic(
            n4, n6, n_dot, L, U,
            match_denominator=s if cfg.denominator_matching else None,
            slack=cfg.bisection_cap_slack,
        )
        s_next = min(Fraction(1), s + step.t)
        eps = eps0 / a

        M_next = _affine_matrix(M1, M2, s_next)
        v5 = _affine_vector(gz, v1, s_next)
        try:
            z_newton = newton_step(M_next, v5, z)
        except SingularMatrix as exc:
            return TrackResult(TrackStatus.SINGULAR_ENCOUNTERED, None, i, trace,
                               message=f"step {i}: Newton matrix singular at s = {format_rational(s_next)} ({exc})")
        rounded = short_zero(z_newton, eps)
        z = rounded.z_tilde
        bits = vector_bit_length(z)

        trace.append(StepRecord(
            i=i, s=s, s_next=s_next, t=step.t, a=a, b=b, W=W, L=L, U=U, eps=eps,
            z_bits=bits, lu_depth=step.depth, exhausted=step.exhausted,
            z=z if keep_z else None,
        ))
        s = s_next
        i += 1
        if cfg.max_bits is not None and bits > cfg.max_bits:
            return TrackResult(TrackStatus.BIT_LIMIT_EXCEEDED, None, i, trace,
                               message=f"coordinate bit length {bits} exceeds fuse {cfg.max_bits}")

    return TrackResult(TrackStatus.CERTIFIED, z, i, trace)
