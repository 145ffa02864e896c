"""Bloch's curvature functions and the Gauss-Bonnet Euler characteristic.

All quantities here are combinatorial, so they are computed with
:class:`fractions.Fraction` and the Gauss-Bonnet sum is exact.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import PolyhedralComplex

SPHERICAL = "spherical"
EUCLIDEAN = "euclidean"
HYPERBOLIC = "hyperbolic"

HALF = Fraction(3, 2)


@dataclass(frozen=True)
class AuxiliaryValues:
    dimension: int
    A: int
    B: int
    U: int
    D: int
    N: int


def auxiliary(c: PolyhedralComplex, cell: tuple[str, int]) -> AuxiliaryValues:
    """Counts of parents (A), children (B), children of parents (U),
    parents of children (D) and the parallel-neighbour count (N) of a cell.

    ``cell`` is ``("vertex", id)``, ``("edge", id)`` or ``("face", id)``.
    """
    kind, idx = cell
    if kind == "vertex":
        deg = c.degree(idx)
        return AuxiliaryValues(0, deg, 0, 2 * deg, 0, deg)
    if kind == "edge":
        edge = c.edges[idx]
        parents = c.parents_of_edge(idx)
        return AuxiliaryValues(
            1,
            len(parents),
            2,
            sum(c.faces[f].degree for f in parents),
            c.degree(edge.u) + c.degree(edge.v),
            len(c.face_sharing_edges(idx) ^ c.vertex_sharing_edges(idx)),
        )
    if kind == "face":
        face_edges = c.face_edges(idx)
        neighbours = set()
        for e in face_edges:
            neighbours.update(c.parents_of_edge(e))
        neighbours.discard(idx)
        return AuxiliaryValues(
            2, 0, len(face_edges), 0, sum(len(c.parents_of_edge(e)) for e in face_edges), len(neighbours)
        )
    raise ValueError(f"unknown cell kind {kind!r}")


def r0(a0: int) -> Fraction:
    return 1 + HALF * a0 - a0 * a0


def r1(a1: int, b1: int, u1: int, d1: int) -> Fraction:
    return 1 + 6 * a1 + HALF * b1 - u1 - d1


def r2(b2: int) -> Fraction:
    return Fraction(1 + 6 * b2 - b2 * b2)


def curvature_functions(c: PolyhedralComplex) -> tuple[list[Fraction], list[Fraction], list[Fraction]]:
    """Per-vertex R0, per-edge R1, per-face R2."""
    r0s = [r0(c.degree(v)) for v in range(c.vertex_count)]
    r1s = []
    for e in range(c.edge_count):
        aux = auxiliary(c, ("edge", e))
        r1s.append(r1(aux.A, aux.B, aux.U, aux.D))
    r2s = [r2(f.degree) for f in c.faces]
    return r0s, r1s, r2s


def euler_characteristic_gb(c: PolyhedralComplex) -> Fraction:
    r0s, r1s, r2s = curvature_functions(c)
    return sum(r0s, Fraction(0)) - sum(r1s, Fraction(0)) + sum(r2s, Fraction(0))


def euler_characteristic_comb(c: PolyhedralComplex) -> int:
    """V - E + F; simplices of dimension >= 3 are not cells of the 2-complex."""
    return c.vertex_count - c.edge_count + c.face_count


def ricci_from_auxiliary(c: PolyhedralComplex, e: int) -> int:
    aux = auxiliary(c, ("edge", e))
    return aux.A + aux.B - aux.N


def classify_prototype(chi, tol: float = 1e-9) -> str:
    if abs(chi) <= tol:
        return EUCLIDEAN
    return SPHERICAL if chi > 0 else HYPERBOLIC


@dataclass
class PositivityCriteria:
    mean_a1: Fraction
    mean_b1: Fraction
    mean_r1: Fraction
    chi: Fraction
    cond1: bool
    cond2: bool
    cond3: bool

    @property
    def any_condition(self) -> bool:
        return self.cond1 or self.cond2 or self.cond3

    @property
    def implication_applies(self) -> bool:
        """Hypotheses of the positivity theorem hold: some condition and mean R1 > 0."""
        return self.any_condition and self.mean_r1 > 0

    @property
    def implication_consistent(self) -> bool | None:
        """``chi > 0`` when the theorem applies; None when it does not."""
        if not self.implication_applies:
            return None
        return self.chi > 0

    @property
    def lemma_applies(self) -> bool:
        return self.mean_a1 >= 2 and self.mean_r1 > 0

    def to_dict(self) -> dict:
        return {
            "cond1_mean_b1_ge_20_9": self.cond1,
            "cond2_b1_eq_2_and_a1_ge_2": self.cond2,
            "cond3_quadratic": self.cond3,
            "theorem_applies": self.implication_applies,
            "theorem_consistent": self.implication_consistent,
            "lemma_applies": self.lemma_applies,
        }


def positivity_criteria(c: PolyhedralComplex) -> PositivityCriteria:
    m = c.edge_count
    chi = euler_characteristic_gb(c)
    if m == 0:
        zero = Fraction(0)
        return PositivityCriteria(zero, zero, zero, chi, False, False, False)
    aux = [auxiliary(c, ("edge", e)) for e in range(m)]
    a1 = Fraction(sum(x.A for x in aux), m)
    b1 = Fraction(sum(x.B for x in aux), m)
    mean_r1 = Fraction(sum(r1(x.A, x.B, x.U, x.D) for x in aux), m)
    cond1 = b1 >= Fraction(20, 9)
    cond2 = b1 == 2 and a1 >= 2
    cond3 = (a1 + b1) ** 2 - 6 * a1 - HALF * b1 - 1 >= 0
    return PositivityCriteria(a1, b1, mean_r1, chi, cond1, cond2, cond3)


def _num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else float(x)


@dataclass
class BlochReport:
    r0: list[Fraction]
    r1: list[Fraction]
    r2: list[Fraction]
    chi_gb: Fraction
    chi_comb: int
    triangles: int
    criteria: PositivityCriteria
    prototype: str = field(init=False)

    def __post_init__(self):
        self.prototype = classify_prototype(self.chi_gb)

    @property
    def mean_chi(self) -> int | None:
        """chi divided by the triangle count, rounded down."""
        if self.triangles == 0:
            return None
        return math.floor(Fraction(self.chi_gb) / self.triangles)

    def to_dict(self) -> dict:
        return {
            "r0": [_num(x) for x in self.r0],
            "r1": [_num(x) for x in self.r1],
            "r2": [_num(x) for x in self.r2],
            "chi_gb": _num(self.chi_gb),
            "chi_comb": self.chi_comb,
            "mean_chi": self.mean_chi,
            "mean_r1": _num(self.criteria.mean_r1),
            "mean_a1": _num(self.criteria.mean_a1),
            "mean_b1": _num(self.criteria.mean_b1),
            "prototype": self.prototype,
            "criteria": self.criteria.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def bloch_report(c: PolyhedralComplex) -> BlochReport:
    r0s, r1s, r2s = curvature_functions(c)
    chi_gb = sum(r0s, Fraction(0)) - sum(r1s, Fraction(0)) + sum(r2s, Fraction(0))
    triangles = sum(1 for f in c.faces if f.degree == 3)
    return BlochReport(r0s, r1s, r2s, chi_gb, euler_characteristic_comb(c), triangles, positivity_criteria(c))
