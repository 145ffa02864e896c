"""Edge dispersion: how spread out the common neighbours of an edge are."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complex import PolyhedralComplex


@dataclass(frozen=True)
class DispersionValue:
    u: int
    v: int
    disp: int
    common: int


def common_neighbors(c: PolyhedralComplex, u: int, v: int) -> set[int]:
    if u == v:
        raise ValueError("common_neighbors needs two distinct vertices")
    return (c.neighbors(u) & c.neighbors(v)) - {u, v}


def dispersion(c: PolyhedralComplex, u: int, v: int, literal: bool = False) -> DispersionValue:
    """Number of pairs of common neighbours of (u, v) that are far apart.

    A pair {i, j} counts when i and j are not adjacent and have no common
    neighbour among the other common neighbours of (u, v). With ``literal``
    the second test looks at all common neighbours of i and j in the graph,
    which always include u and v, so every pair is rejected.
    """
    cuv = common_neighbors(c, u, v)
    total = 0
    for i, j in combinations(sorted(cuv), 2):
        if j in c.neighbors(i):
            continue
        shared = c.neighbors(i) & c.neighbors(j)
        if not literal:
            shared = shared & cuv
        if not shared:
            total += 1
    return DispersionValue(u, v, total, len(cuv))


def all_dispersions(c: PolyhedralComplex, literal: bool = False) -> list[DispersionValue]:
    return [dispersion(c, e.u, e.v, literal) for e in c.edges]


def dispersion_csv(c: PolyhedralComplex, values: list[DispersionValue]) -> str:
    rows = ["u,v,common,disp"]
    for d in values:
        rows.append(f"{c.labels[d.u]},{c.labels[d.v]},{d.common},{d.disp}")
    return "\n".join(rows) + "\n"
