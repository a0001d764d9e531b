"""Exact three-point medians via the interior construction.

A triangle is normalized so its first corner is the identity (store the
translation, compute there, translate answers back).  Each corner gets a
radius delta(c_i) = d(c_i, I) where I is the interval between the other two
corners; the interior is the intersection of the three closed balls.  Every
median (minimizer of the summed distance to the corners) lies in the interior,
so an exhaustive interior scan is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cayley import DistanceOracle
from .errors import CapabilityError, InvariantError
from .groups import GroupModel, SymmetricModel
from .intervals import build_interval


@dataclass(frozen=True)
class Triangle:
    model: GroupModel
    corners: tuple
    translation: object
    normalized: tuple

    @classmethod
    def make(cls, model: GroupModel, c0, c1, c2) -> "Triangle":
        c0, c1, c2 = (
            model.parse_element(c) if isinstance(c, str) else model.check_element(c)
            for c in (c0, c1, c2)
        )
        inv0 = model.inverse(c0)
        normalized = (
            model.identity,
            model.multiply(inv0, c1),
            model.multiply(inv0, c2),
        )
        return cls(model, (c0, c1, c2), c0, normalized)


def make_triangle(model: GroupModel, c0, c1, c2) -> Triangle:
    return Triangle.make(model, c0, c1, c2)


def deltas(oracle: DistanceOracle, triangle: Triangle) -> tuple:
    """Per-corner distance to the interval spanned by the other two corners."""
    e, n1, n2 = triangle.normalized
    i12 = build_interval(oracle, n1, n2)
    i02 = build_interval(oracle, e, n2)
    i01 = build_interval(oracle, e, n1)
    d0 = min(oracle.distance(e, x) for x in i12.element_rank)
    d1 = min(oracle.distance(n1, x) for x in i02.element_rank)
    d2 = min(oracle.distance(n2, x) for x in i01.element_rank)
    return (d0, d1, d2)


@dataclass
class InteriorRegion:
    """Ball-intersection region in normalized coordinates.

    records maps each element to (d0, d1, d2, steiner weight), distances taken
    from the normalized corners.
    """

    triangle: Triangle
    deltas: tuple
    elements: list
    records: dict

    @property
    def size(self) -> int:
        return len(self.elements)


def interior(oracle: DistanceOracle, triangle: Triangle) -> InteriorRegion:
    """Intersection of the three closed corner balls, scanned exhaustively."""
    corners = triangle.normalized
    radii = deltas(oracle, triangle)
    pivot = min(range(3), key=lambda i: radii[i])
    candidates = oracle.ball(corners[pivot], radii[pivot])
    # half the perimeter floors the weight when the metric is symmetric
    bound = 0
    if triangle.model.generating_set.inverse_closed:
        perimeter = (
            oracle.distance(corners[0], corners[1])
            + oracle.distance(corners[1], corners[2])
            + oracle.distance(corners[0], corners[2])
        )
        bound = (perimeter + 1) // 2
    records = {}
    for x in sorted(candidates):
        dists = tuple(oracle.distance(c, x) for c in corners)
        weight = sum(dists)
        if weight < bound:
            raise InvariantError(
                f"weight {weight} beats the half-perimeter bound {bound}; the metric is inconsistent"
            )
        if all(dists[i] <= radii[i] for i in range(3)):
            records[x] = (*dists, weight)
    return InteriorRegion(triangle, radii, list(records), records)


def steiner_weight(oracle: DistanceOracle, h, triangle: Triangle) -> int:
    """Sum of distances from the (original) corners to h."""
    h = triangle.model.check_element(h)
    return sum(oracle.distance(c, h) for c in triangle.corners)


@dataclass
class MedianResult:
    triangle: Triangle
    minimizers: list
    weight: int
    interior_size: int


def _minimizers(region: InteriorRegion) -> MedianResult:
    if not region.records:
        raise InvariantError("interior region is empty; every median must lie inside it")
    triangle = region.triangle
    best = min(rec[3] for rec in region.records.values())
    model = triangle.model
    t = triangle.translation
    mins = sorted(
        model.multiply(t, x) for x, rec in region.records.items() if rec[3] == best
    )
    return MedianResult(triangle, mins, best, region.size)


def medians(oracle: DistanceOracle, triangle: Triangle) -> MedianResult:
    """All weight minimizers, reported in original coordinates."""
    return _minimizers(interior(oracle, triangle))


def median_parity_check(
    oracle: DistanceOracle, triangle: Triangle, result: MedianResult | None = None
) -> bool:
    """Pairwise distances between medians are even under a circular set."""
    model = triangle.model
    if not (isinstance(model, SymmetricModel) and model.kind == "circular"):
        raise CapabilityError(
            f"the parity law is stated for circular generating sets, not {model.name}"
        )
    if result is None:
        result = medians(oracle, triangle)
    return all(
        oracle.distance(a, b) % 2 == 0 for a, b in combinations(result.minimizers, 2)
    )


def median_report(oracle: DistanceOracle, triangle: Triangle, parity_check: bool = False) -> dict:
    """JSON-ready report of the median computation in original coordinates."""
    model = triangle.model
    fmt = model.format_element
    region = interior(oracle, triangle)
    result = _minimizers(region)
    report = {
        "model": model.name,
        "corners": [fmt(c) for c in triangle.corners],
        "deltas": list(region.deltas),
        "interior_size": result.interior_size,
        "weight": result.weight,
        "medians": [fmt(x) for x in result.minimizers],
        "parity_ok": None,
    }
    if parity_check:
        report["parity_ok"] = median_parity_check(oracle, triangle, result)
    return report
