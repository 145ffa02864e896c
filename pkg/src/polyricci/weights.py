"""Face and simplex weights derived from edge weights by area/volume analogy.

Schemes (``--face-weights``):

* ``unit``            every face and simplex weighs 1 (combinatorial case)
* ``heron``           triangles by Heron's formula, polygons by fan triangulation
* ``triangulated``    same rule as ``heron``; kept as a separate name for the CLI
* ``shoelace``        polygon area from vertex coordinates
* ``simplex-unit``    volume of the regular unit simplex of the cell's dimension
* ``simplex-product`` orthogonal-corner volume, product of edge weights over n!

Polygons of degree >= 4 under the two simplex schemes fall back to the fan
triangulation, since those rules only define simplices.
"""
from __future__ import annotations

import math
from typing import Mapping, Sequence

from .errors import DegenerateWeightError, MissingDataError

WEIGHT_FLOOR = 1e-9

SCHEMES = ("unit", "heron", "triangulated", "shoelace", "simplex-unit", "simplex-product")


def heron_weight(a: float, b: float, c: float, strict: bool = True, floor: float = WEIGHT_FLOOR) -> float:
    """Area of the triangle with side lengths ``a``, ``b``, ``c``."""
    x, y, z = sorted((a, b, c), reverse=True)
    if not (z > 0 and x < y + z):
        if strict:
            raise DegenerateWeightError(f"sides ({a}, {b}, {c}) violate the strict triangle inequality")
        return floor
    # Kahan's ordering keeps the product accurate for needle-shaped triangles.
    prod = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z))
    area = 0.25 * math.sqrt(prod)
    if strict:
        return area
    return max(area, floor)


def _diagonal(boundary_weights: Sequence[float], k: int) -> float:
    # chord from vertex 0 to vertex k, estimated from the two boundary edges meeting at k
    return 0.5 * (boundary_weights[k - 1] + boundary_weights[k])


def triangulated_weight(boundary_weights: Sequence[float], strict: bool = True, floor: float = WEIGHT_FLOOR) -> float:
    """Fan-triangulated polygon area.

    ``boundary_weights[i]`` is the weight of the edge from boundary vertex i to
    vertex i+1 (cyclically). Fan triangles are (0, k, k+1) for k = 1..d-2.
    """
    w = list(boundary_weights)
    d = len(w)
    if d < 3:
        raise ValueError("polygon needs at least 3 sides")
    if d == 3:
        return heron_weight(*w, strict=strict, floor=floor)
    total = 0.0
    for k in range(1, d - 1):
        left = w[0] if k == 1 else _diagonal(w, k)
        right = w[d - 1] if k + 1 == d - 1 else _diagonal(w, k + 1)
        total += heron_weight(left, w[k], right, strict=strict, floor=floor)
    return total


def shoelace_weight(boundary: Sequence, coords: Mapping) -> float:
    pts = []
    for v in boundary:
        if v not in coords:
            raise MissingDataError(f"no coordinates for vertex {v!r}")
        pts.append(coords[v])
    s = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * abs(s)


def simplex_unit_weight(n: int) -> float:
    """Volume of the regular n-simplex with unit edges."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return math.sqrt(n + 1) / (math.factorial(n) * math.sqrt(2.0 ** n))


def simplex_product_weight(edge_weights: Sequence[float]) -> float:
    n = len(edge_weights)
    if n < 1:
        raise ValueError("need at least one edge weight")
    return math.prod(edge_weights) / math.factorial(n)


def simplex_base_edge_weights(c, vertices: Sequence[int], rule: str = "base") -> list[float]:
    """Edge weights that enter the product rule for a simplex on ``vertices``.

    ``base``: the n edges at the smallest vertex.
    ``geomean``: n copies of the geometric mean of all n(n+1)/2 edges.
    """
    verts = sorted(vertices)
    n = len(verts) - 1
    if rule == "base":
        return [c.edges[c.edge_id(verts[0], x)].weight for x in verts[1:]]
    if rule == "geomean":
        ws = [c.edges[c.edge_id(a, b)].weight for i, a in enumerate(verts) for b in verts[i + 1:]]
        g = math.exp(sum(math.log(x) for x in ws) / len(ws))
        return [g] * n
    raise ValueError(f"unknown simplex edge rule {rule!r}")


def boundary_edge_weights(c, cycle: Sequence[int]) -> list[float]:
    cyc = list(cycle)
    return [c.edges[c.edge_id(a, b)].weight for a, b in zip(cyc, cyc[1:] + cyc[:1])]


def face_weight(c, cycle: Sequence[int], scheme: str = "unit", coords=None,
                strict: bool = True, simplex_rule: str = "base") -> float:
    """Weight of a prospective 2-face with boundary ``cycle`` in complex ``c``.

    ``coords`` for the shoelace scheme maps vertex ids to (x, y).
    """
    if scheme == "unit":
        return 1.0
    if scheme == "shoelace":
        if coords is None:
            raise MissingDataError("shoelace weights need a coordinate table")
        return shoelace_weight(cycle, coords)
    if len(cycle) == 3 and scheme == "simplex-unit":
        return simplex_unit_weight(2)
    if len(cycle) == 3 and scheme == "simplex-product":
        return simplex_product_weight(simplex_base_edge_weights(c, cycle, simplex_rule))
    if scheme in ("heron", "triangulated", "simplex-unit", "simplex-product"):
        return triangulated_weight(boundary_edge_weights(c, cycle), strict=strict)
    raise ValueError(f"unknown weight scheme {scheme!r}")


def simplex_weight(c, vertices: Sequence[int], scheme: str = "unit", simplex_rule: str = "base") -> float:
    n = len(vertices) - 1
    if scheme == "simplex-unit":
        return simplex_unit_weight(n)
    if scheme == "simplex-product":
        return simplex_product_weight(simplex_base_edge_weights(c, vertices, simplex_rule))
    return 1.0
