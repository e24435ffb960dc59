"""Numeric checks that the six point-symmetry flows map solutions to
solutions of (laplacian of u) = f(u).

Fields are plain evaluators on the test box [-1, 1]^3 (the built-in families
are entire functions, so composing with rigid motions keeps them total).
Residuals use central second differences; flows use a fixed-step classical
fourth-order integrator, so everything is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from .algebra import AlgebraElement

BOX_HALF_WIDTH = 1.0
DEFAULT_STEP = 1e-3

Point = Tuple[float, float, float]


class OutsideBoxError(ValueError):
    """Residual sampling left the test box."""


class FlowError(ArithmeticError):
    """The flow integration produced a non-finite state."""


@dataclass(frozen=True)
class SourceTerm:
    """Right-hand side family f(u)."""

    kind: str  # zero | constant | linear | custom
    value: float = 0.0
    func: Optional[Callable[[float], float]] = None

    @classmethod
    def zero(cls) -> "SourceTerm":
        return cls("zero")

    @classmethod
    def constant(cls, value: float) -> "SourceTerm":
        return cls("constant", float(value))

    @classmethod
    def linear(cls) -> "SourceTerm":
        return cls("linear")

    @classmethod
    def custom(cls, func: Callable[[float], float]) -> "SourceTerm":
        return cls("custom", func=func)

    def __call__(self, u: float) -> float:
        if self.kind == "zero":
            return 0.0
        if self.kind == "constant":
            return self.value
        if self.kind == "linear":
            return u
        return self.func(u)


@dataclass(frozen=True)
class ScalarField:
    """Candidate solution u = h(x, y, z) with the source family it solves."""

    evaluator: Callable[[float, float, float], float]
    label: str
    source: SourceTerm

    def __call__(self, px: float, py: float, pz: float) -> float:
        return self.evaluator(px, py, pz)


def builtin_fields() -> Dict[str, ScalarField]:
    """Verified solution families: harmonic polynomials for the vanishing
    source, the squared radius for the constant source 6, exp(x) for the
    linear source."""
    return {
        "xy": ScalarField(lambda px, py, pz: px * py, "xy", SourceTerm.zero()),
        "x2_minus_y2": ScalarField(
            lambda px, py, pz: px * px - py * py, "x^2 - y^2", SourceTerm.zero()
        ),
        "r2": ScalarField(
            lambda px, py, pz: px * px + py * py + pz * pz,
            "x^2 + y^2 + z^2",
            SourceTerm.constant(6.0),
        ),
        "exp_x": ScalarField(
            lambda px, py, pz: math.exp(px), "exp(x)", SourceTerm.linear()
        ),
    }


# ---------------------------------------------------------------------------
# flows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FlowResult:
    endpoint: Tuple[float, float, float, float]
    steps: int
    method_order: int = 4


def _field_velocity(x_elem: AlgebraElement) -> Callable[[float, float, float], Point]:
    v1, v2, v3, w1, w2, w3 = (float(c) for c in x_elem.coeffs)

    def velocity(px: float, py: float, pz: float) -> Point:
        return (
            v1 + w2 * pz - w3 * py,
            v2 + w3 * px - w1 * pz,
            v3 + w1 * py - w2 * px,
        )

    return velocity


def flow(
    x_elem: AlgebraElement, s: float, p: Point, u0: float = 0.0, step: float = DEFAULT_STEP
) -> FlowResult:
    """Integrate the one-parameter flow of the field for parameter s.

    The u component rides along unchanged: the rigid generators have no
    u-part, and general u-parts are out of scope here.
    """
    velocity = _field_velocity(x_elem)
    n = max(1, math.ceil(abs(s) / step))
    h = s / n
    px, py, pz = (float(t) for t in p)
    for _ in range(n):
        a1, a2, a3 = velocity(px, py, pz)
        b1, b2, b3 = velocity(px + 0.5 * h * a1, py + 0.5 * h * a2, pz + 0.5 * h * a3)
        c1, c2, c3 = velocity(px + 0.5 * h * b1, py + 0.5 * h * b2, pz + 0.5 * h * b3)
        d1, d2, d3 = velocity(px + h * c1, py + h * c2, pz + h * c3)
        px += (h / 6.0) * (a1 + 2 * b1 + 2 * c1 + d1)
        py += (h / 6.0) * (a2 + 2 * b2 + 2 * c2 + d2)
        pz += (h / 6.0) * (a3 + 2 * b3 + 2 * c3 + d3)
        if not (math.isfinite(px) and math.isfinite(py) and math.isfinite(pz)):
            raise FlowError(f"flow diverged at ({px}, {py}, {pz})")
    return FlowResult((px, py, pz, u0), n)


def flow_point(x_elem: AlgebraElement, s: float, p: Point) -> Point:
    endpoint = flow(x_elem, s, p).endpoint
    return endpoint[:3]


# ---------------------------------------------------------------------------
# the six closed-form solution transformations
# ---------------------------------------------------------------------------


def _coordinate_map(k: int, s: float) -> Callable[[float, float, float], Point]:
    c, sn = math.cos(s), math.sin(s)
    if k == 1:
        return lambda px, py, pz: (px + s, py, pz)
    if k == 2:
        return lambda px, py, pz: (px, py + s, pz)
    if k == 3:
        return lambda px, py, pz: (px, py, pz + s)
    if k == 4:
        return lambda px, py, pz: (px, py * c - pz * sn, pz * c + py * sn)
    if k == 5:
        return lambda px, py, pz: (px * c + pz * sn, py, pz * c - px * sn)
    if k == 6:
        return lambda px, py, pz: (px * c - py * sn, px * sn + py * c, pz)
    raise ValueError(f"generator index {k} out of range 1..6")


def transform_solution(k: int, s: float, h: ScalarField) -> ScalarField:
    """The transported solution g_k(s) . h; same source family."""
    inner = _coordinate_map(k, s)
    previous = h.evaluator
    return ScalarField(
        lambda px, py, pz: previous(*inner(px, py, pz)),
        f"g{k}({s:g}).{h.label}",
        h.source,
    )


def pde_residual(h: ScalarField, source: SourceTerm, p: Point, step: float) -> float:
    """Central-difference laplacian minus the source, O(step^2) accurate."""
    if step <= 0:
        raise ValueError("step must be positive")
    px, py, pz = p
    margin = BOX_HALF_WIDTH - 2 * step
    if abs(px) > margin or abs(py) > margin or abs(pz) > margin:
        raise OutsideBoxError(f"point {p} closer than 2*step to the box boundary")
    center = h(px, py, pz)
    lap = (
        h(px + step, py, pz) + h(px - step, py, pz)
        + h(px, py + step, pz) + h(px, py - step, pz)
        + h(px, py, pz + step) + h(px, py, pz - step)
        - 6.0 * center
    ) / (step * step)
    return lap - source(center)


def verify_invariance(
    h: ScalarField,
    source: SourceTerm,
    k: int,
    s: float,
    samples: int,
    seed: int,
    step: float = DEFAULT_STEP,
) -> float:
    """Max |residual| of the transported field at seeded interior points."""
    transported = transform_solution(k, s, h)
    rng = np.random.default_rng(seed)
    points = rng.uniform(-0.9, 0.9, size=(samples, 3))
    worst = 0.0
    for point in points:
        residual = pde_residual(transported, source, tuple(point), step)
        worst = max(worst, abs(residual))
    return worst


def flow_vs_closed_form(
    k: int, s_grid: Sequence[float], point_grid: Sequence[Point]
) -> float:
    """Max distance between the integrated flow and the closed coordinate map."""
    worst = 0.0
    basis = AlgebraElement.numeric([1.0 if i == k - 1 else 0.0 for i in range(6)])
    for s in s_grid:
        closed = _coordinate_map(k, s)
        for p in point_grid:
            integrated = np.array(flow_point(basis, s, p))
            reference = np.array(closed(*p))
            worst = max(worst, float(np.abs(integrated - reference).max()))
    return worst
