"""Forman-Ricci curvature of edges in 2-complexes, and the edge Laplacians."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .complex import PolyhedralComplex
from .errors import DomainError, MisuseError


def _weights(c: PolyhedralComplex, edge_weights: Sequence[float] | None):
    we = [e.weight for e in c.edges] if edge_weights is None else list(edge_weights)
    if len(we) != c.edge_count:
        raise ValueError("one weight per edge required")
    if any(not w > 0 for w in we):
        raise DomainError("edge weights must be positive")
    if any(not w > 0 for w in c.vertex_weights) or any(not f.weight > 0 for f in c.faces):
        raise DomainError("vertex and face weights must be positive")
    return we


def forman_ricci_weighted(c: PolyhedralComplex, e: int, edge_weights: Sequence[float] | None = None) -> float:
    """Weighted Forman-Ricci curvature of edge ``e``.

    ``edge_weights`` overrides the weights stored on the edges (the flow uses
    this); vertex and face weights always come from the complex.
    """
    we = _weights(c, edge_weights)
    return _forman_weighted(c, e, we)


def _forman_weighted(c: PolyhedralComplex, e: int, we: list[float]) -> float:
    w_e = we[e]
    edge = c.edges[e]
    wv = c.vertex_weights
    parents = c.parents_of_edge(e)
    total = sum(w_e / c.faces[f].weight for f in parents)
    total += (wv[edge.u] + wv[edge.v]) / w_e
    parent_set = set(parents)
    for other in sorted(c.parallel_edges(e)):
        root = math.sqrt(w_e * we[other])
        face_part = sum(root / c.faces[f].weight for f in c.parents_of_edge(other) if f in parent_set)
        vertex_part = sum(wv[x] / root for x in c.shared_vertices(e, other))
        total -= abs(face_part - vertex_part)
    return w_e * total


def forman_ricci_combinatorial(c: PolyhedralComplex, e: int) -> int:
    """#parent faces - #parallel edges + 2."""
    return len(c.parents_of_edge(e)) - len(c.parallel_edges(e)) + 2


def forman_ricci_1d(c: PolyhedralComplex, e: int) -> int:
    """4 - deg(u) - deg(v); only meaningful on a complex without faces."""
    if c.faces:
        raise MisuseError("1-dimensional curvature requested on a complex with faces")
    edge = c.edges[e]
    return 4 - c.degree(edge.u) - c.degree(edge.v)


def lemma1_delta(d: int) -> int:
    """Curvature change of each boundary edge when a unit face of degree d is added."""
    return 6 - d


def rough_laplacian(c: PolyhedralComplex, e: int) -> int:
    edge = c.edges[e]
    parents = c.parents_of_edge(e)
    return (
        sum(c.faces[f].degree for f in parents)
        - 5 * len(parents)
        + c.degree(edge.u)
        + c.degree(edge.v)
        - 2
    )


class OrientationAssignment:
    """Edges point from the smaller to the larger vertex id; faces run along
    their canonical boundary cycle."""

    def __init__(self, c: PolyhedralComplex):
        self.c = c
        self._face_sense: list[dict[int, int]] = []
        for f in c.faces:
            senses = {}
            cyc = f.boundary
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                senses[c.edge_id(a, b)] = 1 if a < b else -1
            self._face_sense.append(senses)

    def head(self, e: int) -> int:
        return self.c.edges[e].v

    def vertex_sign(self, e1: int, e2: int, v: int) -> int:
        """+1 if both edges point into ``v`` or both out of it."""
        return 1 if (self.head(e1) == v) == (self.head(e2) == v) else -1

    def face_sign(self, e1: int, e2: int, f: int) -> int:
        """+1 if face ``f`` traverses both edges along (or both against) their orientation."""
        senses = self._face_sense[f]
        return senses[e1] * senses[e2]


def bochner_laplacian_matrix(
    c: PolyhedralComplex,
    orient: OrientationAssignment | None = None,
    edge_weights: Sequence[float] | None = None,
) -> np.ndarray:
    """Edge-by-edge Bochner Laplacian. Symmetric; diagonal is #faces + 2 at unit weights."""
    we = _weights(c, edge_weights)
    orient = orient or OrientationAssignment(c)
    m = c.edge_count
    out = np.zeros((m, m))
    wv = c.vertex_weights
    for e1 in range(m):
        candidates = c.face_sharing_edges(e1) | c.vertex_sharing_edges(e1) | {e1}
        faces1 = set(c.parents_of_edge(e1))
        for e2 in candidates:
            if e2 < e1:
                continue
            root = math.sqrt(we[e1] * we[e2])
            val = 0.0
            for f in sorted(faces1.intersection(c.parents_of_edge(e2))):
                val += orient.face_sign(e1, e2, f) * root / c.faces[f].weight
            for v in sorted(c.shared_vertices(e1, e2)):
                val += orient.vertex_sign(e1, e2, v) * wv[v] / root
            out[e1, e2] = out[e2, e1] = val
    return out


@dataclass
class CurvatureReport:
    values: list[float]
    histogram: dict = field(default_factory=dict)

    @property
    def mean(self) -> float:
        return sum(self.values) / len(self.values) if self.values else 0.0

    @property
    def min(self) -> float:
        return min(self.values) if self.values else 0.0

    @property
    def max(self) -> float:
        return max(self.values) if self.values else 0.0

    def summary(self) -> dict:
        return {
            "mean": self.mean,
            "min": self.min,
            "max": self.max,
            "histogram": self.histogram,
        }

    def to_csv(self, c: PolyhedralComplex) -> str:
        rows = ["edge_id,u,v,ric"]
        for e, val in zip(c.edges, self.values):
            text = str(int(val)) if float(val).is_integer() else repr(float(val))
            rows.append(f"{e.id},{c.labels[e.u]},{c.labels[e.v]},{text}")
        return "\n".join(rows) + "\n"

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=1) + "\n"


def histogram(values: Sequence[float], bins: int = 10) -> dict:
    """Unit-width bins for integer data, ``bins`` equal bins otherwise."""
    if not values:
        return {"bin_edges": [], "counts": []}
    arr = np.asarray(values, dtype=float)
    lo, hi = float(arr.min()), float(arr.max())
    if np.all(arr == np.round(arr)):
        edges = np.arange(lo, hi + 2)
        # integer bins are [k, k+1); the last edge closes the top value
        counts, _ = np.histogram(arr, bins=edges)
    else:
        counts, edges = np.histogram(arr, bins=bins, range=(lo, hi))
    return {"bin_edges": [float(x) for x in edges], "counts": [int(x) for x in counts]}


def curvature_report(c: PolyhedralComplex, mode: str = "combinatorial", edge_weights=None) -> CurvatureReport:
    """Curvature of every edge. ``mode`` is weighted, combinatorial or 1d."""
    if mode == "weighted":
        we = _weights(c, edge_weights)
        vals = [_forman_weighted(c, e, we) for e in range(c.edge_count)]
    elif mode == "combinatorial":
        vals = [forman_ricci_combinatorial(c, e) for e in range(c.edge_count)]
    elif mode == "1d":
        if c.faces:
            raise MisuseError("1-dimensional curvature requested on a complex with faces")
        vals = [forman_ricci_1d(c, e) for e in range(c.edge_count)]
    else:
        raise ValueError(f"unknown curvature mode {mode!r}")
    return CurvatureReport(vals, histogram(vals))


def weighted_curvatures(c: PolyhedralComplex, edge_weights=None) -> list[float]:
    we = _weights(c, edge_weights)
    return [_forman_weighted(c, e, we) for e in range(c.edge_count)]
