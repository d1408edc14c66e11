"""Piecewise model map with perturbation budgets, orbits and the Marty bound.

The model sends every point of P to 1+i and every point of R^2_{j,l} to
phi(j, l)(z). An admissible entire function may differ from the model by
at most 1/2 on P and by delta_j**2 on R^2_{j,l}; steps therefore carry a
box enclosing every admissible image.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from fjl.exact import QBox, QPoint, box_inflate, pow2
from fjl.geometry import DEFAULT, Construction, RegionTag, locate, phi

ABSORBING_POINT = QPoint(1, 1)


@dataclass(frozen=True)
class PerturbationBudget:
    on_P: Fraction = Fraction(1, 2)
    cons: Construction = DEFAULT

    def on_R2(self, j: int) -> Fraction:
        d = self.cons.delta(j)
        return d * d

    def derivative_radius(self, j: int) -> Fraction:
        # Cauchy estimate on R^1 with radius dist(R^1, boundary of R^2) = delta_j
        return self.on_R2(j) / self.cons.delta(j)


BUDGET = PerturbationBudget()


@dataclass(frozen=True)
class ModelStep:
    tag: RegionTag
    value: Optional[QPoint]
    enclosure: Optional[QBox]
    derivative_bound: Optional[tuple[Fraction, Fraction]] = None
    scale: Optional[Fraction] = None

    @property
    def defined(self) -> bool:
        return self.value is not None


def model_step(z: QPoint, budget: PerturbationBudget = BUDGET) -> ModelStep:
    tag = locate(z)
    if tag.kind == "P":
        return ModelStep(tag, ABSORBING_POINT,
                         box_inflate(QBox.point(ABSORBING_POINT), budget.on_P))
    if tag.kind == "R2":
        j, l = tag.index
        m = phi(j, l, budget.cons)
        w = m(z)
        bound = None
        if tag.in_r1:
            r = budget.derivative_radius(j)
            bound = (m.scale - r, m.scale + r)
        return ModelStep(tag, w, box_inflate(QBox.point(w), budget.on_R2(j)),
                         bound, m.scale)
    return ModelStep(tag, None, None)


@dataclass
class OrbitRecord:
    points: list[QPoint]
    region_tags: list[RegionTag] = field(default_factory=list)
    # None once the orbit has been absorbed by P
    contraction: Optional[Fraction] = Fraction(1)
    status: str = "alive"
    left_at_step: Optional[int] = None

    def json_lines(self) -> Iterator[str]:
        """One JSON object per visited point."""
        contraction: Optional[Fraction] = Fraction(1)
        for step, z in enumerate(self.points):
            tag = self.region_tags[step] if step < len(self.region_tags) else None
            yield json.dumps({
                "step": step,
                "x": str(z.x),
                "y": str(z.y),
                "tag": tag.label() if tag else None,
                "contraction": None if contraction is None else str(contraction),
            })
            if tag is None:
                break
            if tag.kind == "P":
                contraction = None
            elif tag.kind == "R2" and contraction is not None:
                contraction *= phi(*tag.index).scale


def orbit(z: QPoint, n: int, budget: PerturbationBudget = BUDGET) -> OrbitRecord:
    """Iterate the exact model from ``z`` for up to ``n`` steps."""
    if n < 0:
        raise ValueError("step count must be non-negative")
    rec = OrbitRecord(points=[z])
    for step in range(1, n + 1):
        s = model_step(rec.points[-1], budget)
        rec.region_tags.append(s.tag)
        if not s.defined:
            rec.status = "left-model-domain"
            rec.left_at_step = step
            break
        if s.tag.kind == "P":
            rec.contraction = None
        elif rec.contraction is not None:
            rec.contraction *= s.scale
        rec.points.append(s.value)
    return rec


def marty_lower_bound(j: int) -> Fraction:
    """Lower bound for the spherical derivative of f^j on the Cantor set.

    Uses |(f^j)'| > 2^j and |f^j(z)| <= (j+1) + 2^(-j-3).
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    r = (j + 1) + pow2(-j - 3)
    return pow2(j + 1) / (1 + r * r)


def orbit_modulus_margin(j: int, cons: Construction = DEFAULT) -> Fraction:
    """Slack in |f^j(z)| <= (j+1) + 2^(-j-3) for z in Q^1_{j+1}.

    Compares squared moduli: the far corner of Q^1_{j+1} against the
    radius used by :func:`marty_lower_bound`.
    """
    h = cons.q_half(j + 1, 1)
    r = (j + 1) + pow2(-j - 3)
    far = (j + 1 + h) ** 2 + h * h
    return r * r - far


def exact_contraction(depth: int, cons: Construction = DEFAULT) -> Fraction:
    """Derivative of the exact model's depth-fold composition."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    out = Fraction(1)
    for m in range(1, depth + 1):
        out *= cons.scale(m)
    return out


def derivative_product_bound(depth: int, cons: Construction = DEFAULT) -> Fraction:
    """Lower bound for |(f^depth)'| valid for every admissible f."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    out = Fraction(1)
    for m in range(1, depth + 1):
        out *= cons.scale(m) - cons.delta(m)
    return out
