"""Equilateral-triangle analog of the pairwise and triple spin relations.

A point P inside an equilateral triangle ABC plays the role of a qubit
state: the vertex distances |PA|, |PB|, |PC| stand in for the three standard
deviations, and the quadrupled sub-triangle areas 4|PAB|, 4|PBC|, 4|PCA|
stand in for |<Sz>|, |<Sx>|, |<Sy>|. Under that substitution the pair
product, triple product, pair sum, and triple sum relations all hold, with
the same tau = 2/sqrt(3) tightening in the triple forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .relations import SATURATION_TOL, TAU, RelationId, RelationReport
from .rng import stream

_SQRT3_2 = math.sqrt(3.0) / 2.0
BARYCENTRIC_TOL = 1e-12


@dataclass(frozen=True)
class TrianglePoint:
    """Point in the closed triangle, in barycentric coordinates (u, v, w)."""

    side: float
    bary: tuple[float, float, float]

    def __post_init__(self):
        if self.side <= 0:
            raise ValueError("side must be positive")
        u, v, w = self.bary
        if min(u, v, w) < -BARYCENTRIC_TOL or abs(u + v + w - 1.0) > BARYCENTRIC_TOL:
            raise ValueError(f"barycentric coordinates {self.bary} outside the closed triangle")

    def cartesian(self) -> tuple[float, float]:
        _, v, w = self.bary
        return (self.side * (v + 0.5 * w), self.side * _SQRT3_2 * w)


def vertices(side: float) -> np.ndarray:
    """Canonical vertices A=(0,0), B=(side,0), C=(side/2, side*sqrt(3)/2)."""
    return np.array([[0.0, 0.0], [side, 0.0], [0.5 * side, _SQRT3_2 * side]])


def vertex_distances(p: TrianglePoint) -> tuple[float, float, float]:
    """Euclidean distances (|PA|, |PB|, |PC|)."""
    px, py = p.cartesian()
    verts = vertices(p.side)
    return tuple(float(math.hypot(px - vx, py - vy)) for vx, vy in verts)


def _shoelace(p1, p2, p3) -> float:
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    return 0.5 * abs(x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2))


def subtriangle_areas(p: TrianglePoint) -> tuple[float, float, float]:
    """Areas (|PAB|, |PBC|, |PCA|); they sum to the full triangle area."""
    pt = p.cartesian()
    a, b, c = vertices(p.side)
    return (_shoelace(pt, a, b), _shoelace(pt, b, c), _shoelace(pt, c, a))


def total_area(side: float) -> float:
    return side * side * math.sqrt(3.0) / 4.0


def check_analogs(p: TrianglePoint, saturation_tol: float = SATURATION_TOL) -> list[RelationReport]:
    """Evaluate the eight analog inequalities at one point.

    Returns one report per instance, tagged with the id of the spin relation
    it mirrors (three pair products, triple product, three pair sums, triple
    sum).
    """
    a, b, c = vertex_distances(p)
    area_pab, area_pbc, area_pca = subtriangle_areas(p)
    qz, qx, qy = 4.0 * area_pab, 4.0 * area_pbc, 4.0 * area_pca
    tau = TAU

    def rep(rel, lhs, rhs):
        gap = lhs - rhs
        return RelationReport(rel, lhs, rhs, gap, abs(gap) <= saturation_tol, saturation_tol)

    return [
        rep(RelationId.R2_PAIR_PRODUCT_X, b * c, qx / 2.0),
        rep(RelationId.R2_PAIR_PRODUCT_Y, c * a, qy / 2.0),
        rep(RelationId.R2_PAIR_PRODUCT_Z, a * b, qz / 2.0),
        rep(RelationId.R3_TRIPLE_PRODUCT, a * b * c, math.sqrt(tau**3 / 8.0 * qx * qy * qz)),
        rep(RelationId.R4_PAIR_SUM_X, b * b + c * c, qx),
        rep(RelationId.R4_PAIR_SUM_Y, c * c + a * a, qy),
        rep(RelationId.R4_PAIR_SUM_Z, a * a + b * b, qz),
        rep(RelationId.R5_TRIPLE_SUM, a * a + b * b + c * c, tau / 2.0 * (qx + qy + qz)),
    ]


def sample_barycentric(n: int, seed: int) -> np.ndarray:
    """(n, 3) interior points: uniform triples normalized to sum 1."""
    rng = stream(seed)
    x = rng.random((n, 3))
    return x / x.sum(axis=1, keepdims=True)


@dataclass(frozen=True)
class TriangleScan:
    """Minimum analog gaps over a sampled point cloud for one side length."""

    side: float
    samples: int
    seed: int
    min_gap: dict[RelationId, float]
    argmin_bary: dict[RelationId, tuple[float, float, float]]

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "samples": self.samples,
            "seed": self.seed,
            "analogs": {
                rel.value: {
                    "min_gap": self.min_gap[rel],
                    "argmin_barycentric": list(self.argmin_bary[rel]),
                }
                for rel in self.min_gap
            },
        }


def scan(n: int, seed: int, side: float = 1.0) -> TriangleScan:
    """Sample n interior points and record the minimum gap per analog."""
    bary = sample_barycentric(n, seed)
    gaps = kernels.triangle_analog_gaps(bary, side)
    rel_ids = tuple(RelationId[name] for name in kernels.TRIANGLE_GAP_COLUMNS)
    idx = gaps.argmin(axis=0)
    return TriangleScan(
        side=side,
        samples=n,
        seed=seed,
        min_gap={rel: float(gaps[idx[i], i]) for i, rel in enumerate(rel_ids)},
        argmin_bary={rel: tuple(float(x) for x in bary[idx[i]]) for i, rel in enumerate(rel_ids)},
    )


def centroid(side: float = 1.0) -> TrianglePoint:
    third = 1.0 / 3.0
    return TrianglePoint(side, (third, third, third))
