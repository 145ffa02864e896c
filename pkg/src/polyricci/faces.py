"""Detect triangles, chordless cycles and cliques, and fill them in as cells.

Adjacency is held as Python-int bitsets, so the inner loops of the cycle and
clique searches are a handful of integer AND/OR operations per step.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complex import PolyhedralComplex, canonical_cycle
from .weights import face_weight, simplex_weight

DEFAULT_MAX_CYCLE_DEGREE = 6
DEFAULT_MAX_SIMPLEX_DIM = 4


def _bitsets(c: PolyhedralComplex) -> list[int]:
    masks = [0] * c.vertex_count
    for e in c.edges:
        masks[e.u] |= 1 << e.v
        masks[e.v] |= 1 << e.u
    return masks


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def enumerate_triangles(c: PolyhedralComplex) -> list[tuple[int, int, int]]:
    """Every triangle once, as a sorted triple, in lexicographic order."""
    adj = _bitsets(c)
    out = []
    for u in range(c.vertex_count):
        higher_u = adj[u] >> (u + 1) << (u + 1)
        for v in _bits(higher_u):
            common = higher_u & adj[v] >> (v + 1) << (v + 1)
            for w in _bits(common):
                out.append((u, v, w))
    return out


def _cycles_from(adj: list[int], s: int, d: int) -> list[tuple[int, ...]]:
    """Chordless d-cycles whose smallest vertex is ``s``.

    Grows induced paths s, p1, ..., pk over vertices > s. ``blocked`` holds the
    closed neighbourhoods of p1..p(k-1) plus everything <= s; a new vertex must
    avoid it, and must avoid N(s) unless it closes the cycle. Each cycle is
    seen in both directions, so only the one with p1 < p(d-1) is kept.
    """
    out = []
    low = (1 << (s + 1)) - 1
    ns = adj[s]
    path = [s]

    def grow(blocked: int) -> None:
        last = path[-1]
        cand = adj[last] & ~blocked
        if len(path) == d - 1:
            for x in _bits(cand & ns):
                if path[1] < x:
                    out.append(tuple(path) + (x,))
            return
        cand &= ~ns
        nb = blocked | adj[last] | (1 << last)
        for x in _bits(cand):
            path.append(x)
            grow(nb)
            path.pop()

    for p1 in _bits(ns & ~low):
        path.append(p1)
        grow(low)
        path.pop()
    return out


def _cycles_worker(args):
    adj, starts, d = args
    found = []
    for s in starts:
        found.extend(_cycles_from(adj, s, d))
    return found


def enumerate_chordless_cycles(c: PolyhedralComplex, d: int, threads: int = 1) -> list[tuple[int, ...]]:
    """Every induced cycle on exactly ``d`` >= 4 vertices, canonical and sorted."""
    if d < 4:
        raise ValueError("chordless cycle length must be >= 4; use enumerate_triangles for 3")
    adj = _bitsets(c)
    starts = list(range(c.vertex_count))
    if threads > 1 and len(starts) > threads:
        chunks = [(adj, starts[i::threads], d) for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_cycles_worker, chunks))
        found = [cyc for part in parts for cyc in part]
    else:
        found = _cycles_worker((adj, starts, d))
    return sorted(canonical_cycle(cyc) for cyc in found)


def enumerate_cliques(c: PolyhedralComplex, k: int) -> list[tuple[int, ...]]:
    """All complete subgraphs on exactly ``k`` >= 3 vertices, sorted tuples."""
    if k < 3:
        raise ValueError("clique size must be >= 3")
    return cliques_by_size(c, k).get(k, [])


def cliques_by_size(c: PolyhedralComplex, max_size: int) -> dict[int, list[tuple[int, ...]]]:
    """Cliques of every size 3..max_size in one pass.

    Each clique is reached once by extending with strictly larger vertices only.
    """
    adj = _bitsets(c)
    out: dict[int, list[tuple[int, ...]]] = {k: [] for k in range(3, max_size + 1)}
    stack: list[int] = []

    def extend(cand: int) -> None:
        size = len(stack)
        if size >= 3:
            out[size].append(tuple(stack))
        if size == max_size:
            return
        for x in _bits(cand):
            stack.append(x)
            extend(cand & adj[x] >> (x + 1) << (x + 1))
            stack.pop()

    for v in range(c.vertex_count):
        stack.append(v)
        extend(adj[v] >> (v + 1) << (v + 1))
        stack.pop()
    for k in out:
        out[k].sort()
    return out


@dataclass
class FaceCensus:
    vertices: int
    edges: int
    face_counts: dict[int, int] = field(default_factory=dict)
    simplex_counts: dict[int, int] = field(default_factory=dict)

    @property
    def average_degree(self) -> float:
        return 2 * self.edges / self.vertices if self.vertices else 0.0

    def face_csv(self) -> str:
        rows = ["degree,count"] + [f"{d},{n}" for d, n in sorted(self.face_counts.items())]
        return "\n".join(rows) + "\n"

    def simplex_csv(self) -> str:
        rows = ["simplex_dim,count"] + [f"{d},{n}" for d, n in sorted(self.simplex_counts.items())]
        return "\n".join(rows) + "\n"


def fill_faces(
    c: PolyhedralComplex,
    max_cycle_degree: int = DEFAULT_MAX_CYCLE_DEGREE,
    max_simplex_dim: int = DEFAULT_MAX_SIMPLEX_DIM,
    scheme: str = "unit",
    coords=None,
    strict: bool = True,
    threads: int = 1,
    simplex_rule: str = "base",
) -> PolyhedralComplex:
    """Copy of the 1-skeleton of ``c`` with faces and simplices filled in.

    2-faces: all triangles plus chordless cycles of length 4..max_cycle_degree,
    ordered by (degree, canonical boundary). Simplices: cliques on 4..N+1
    vertices (dimensions 3..N); triangles are already 2-faces.
    """
    out = c.skeleton()
    cycles: list[tuple[int, ...]] = []
    if max_cycle_degree >= 3:
        cycles.extend(enumerate_triangles(out))
    for d in range(4, max_cycle_degree + 1):
        cycles.extend(enumerate_chordless_cycles(out, d, threads=threads))
    for cyc in cycles:
        out.add_face(cyc, face_weight(out, cyc, scheme, coords=coords, strict=strict, simplex_rule=simplex_rule))
    if max_simplex_dim >= 3:
        by_size = cliques_by_size(out, max_simplex_dim + 1)
        for k in range(4, max_simplex_dim + 2):
            for clique in by_size[k]:
                out.add_simplex(clique, simplex_weight(out, clique, scheme, simplex_rule))
    return out


def census(
    c: PolyhedralComplex,
    max_cycle_degree: int | None = None,
    max_simplex_dim: int | None = None,
) -> FaceCensus:
    """Counts of filled 2-faces by degree and of simplices by dimension.

    Dimension 2 counts 3-cliques (the triangles). Degrees/dimensions up to the
    given maxima are always present in the maps, zero-filled.
    """
    faces: dict[int, int] = {}
    for f in c.faces:
        faces[f.degree] = faces.get(f.degree, 0) + 1
    top_d = max([max_cycle_degree or 3, *faces]) if faces or max_cycle_degree else 3
    face_counts = {d: faces.get(d, 0) for d in range(3, top_d + 1)}
    sims: dict[int, int] = {2: faces.get(3, 0)}
    for s in c.simplices:
        if s.dimension >= 3:
            sims[s.dimension] = sims.get(s.dimension, 0) + 1
    top_n = max([max_simplex_dim or 2, *sims])
    simplex_counts = {n: sims.get(n, 0) for n in range(2, top_n + 1)}
    return FaceCensus(c.vertex_count, c.edge_count, face_counts, simplex_counts)
