"""2-dimensional polyhedral complex: vertices, edges, polygonal faces.

Edges are undirected and stored with ``u < v``. Faces are vertex cycles kept
in canonical form (see :func:`canonical_cycle`), so two cycles that differ by
rotation or reflection describe the same face. Simplices of dimension >= 3 are
an inventory only; nothing in the curvature code reads them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, DuplicateFaceError, StructuralError


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    weight: float = 1.0

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True)
class FaceRecord:
    id: int
    boundary: tuple[int, ...]
    weight: float = 1.0

    @property
    def degree(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True)
class SimplexRecord:
    dimension: int
    vertices: tuple[int, ...]
    weight: float = 1.0


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Smallest rotation of the lexicographically smaller orientation.

    >>> canonical_cycle((2, 0, 1))
    (0, 1, 2)
    >>> canonical_cycle((3, 2, 1, 0))
    (0, 1, 2, 3)
    """
    seq = list(cycle)
    n = len(seq)
    i = seq.index(min(seq))
    forward = tuple(seq[(i + k) % n] for k in range(n))
    backward = tuple(seq[(i - k) % n] for k in range(n))
    return min(forward, backward)


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class PolyhedralComplex:
    """Mutable during construction; treat as read-only once analysis starts.

    All query methods only read the internal indexes, so concurrent readers
    are safe as long as nobody is adding cells at the same time.
    """

    def __init__(self, vertex_count: int = 0, vertex_weights=None, labels=None):
        self.vertex_weights: list[float] = []
        self.labels: list[str] = []
        self.edges: list[Edge] = []
        self.faces: list[FaceRecord] = []
        self.simplices: list[SimplexRecord] = []
        self._adj: list[set[int]] = []
        self._vertex_edges: list[list[int]] = []
        self._edge_faces: list[list[int]] = []
        self._edge_index: dict[tuple[int, int], int] = {}
        self._face_index: dict[tuple[int, ...], int] = {}
        self._simplex_index: set[tuple[int, ...]] = set()
        for i in range(vertex_count):
            w = 1.0 if vertex_weights is None else vertex_weights[i]
            label = None if labels is None else labels[i]
            self.add_vertex(w, label)

    # -- construction -----------------------------------------------------

    def add_vertex(self, weight: float = 1.0, label: str | None = None) -> int:
        if weight <= 0:
            raise DomainError(f"vertex weight must be positive, got {weight}")
        vid = len(self.vertex_weights)
        self.vertex_weights.append(float(weight))
        self.labels.append(str(vid) if label is None else str(label))
        self._adj.append(set())
        self._vertex_edges.append([])
        return vid

    def add_edge(self, u: int, v: int, weight: float = 1.0) -> int:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise StructuralError(f"self-loop at vertex {u}")
        key = _edge_key(u, v)
        if key in self._edge_index:
            raise StructuralError(f"multi-edge between {u} and {v}")
        if not weight > 0:
            raise DomainError(f"edge weight must be positive, got {weight}")
        eid = len(self.edges)
        self.edges.append(Edge(eid, key[0], key[1], float(weight)))
        self._edge_index[key] = eid
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._vertex_edges[u].append(eid)
        self._vertex_edges[v].append(eid)
        self._edge_faces.append([])
        return eid

    def add_face(self, boundary: Sequence[int], weight: float = 1.0) -> int:
        cycle = tuple(int(x) for x in boundary)
        if len(cycle) < 3:
            raise StructuralError(f"face needs at least 3 vertices, got {len(cycle)}")
        if len(set(cycle)) != len(cycle):
            raise StructuralError(f"face boundary repeats a vertex: {cycle}")
        for x in cycle:
            self._check_vertex(x)
        edge_ids = []
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            eid = self._edge_index.get(_edge_key(a, b))
            if eid is None:
                raise StructuralError(f"face boundary uses missing edge {{{a}, {b}}}")
            edge_ids.append(eid)
        if not weight > 0:
            raise DomainError(f"face weight must be positive, got {weight}")
        canon = canonical_cycle(cycle)
        if canon in self._face_index:
            raise DuplicateFaceError(f"face {canon} already present")
        fid = len(self.faces)
        self.faces.append(FaceRecord(fid, canon, float(weight)))
        self._face_index[canon] = fid
        for eid in edge_ids:
            self._edge_faces[eid].append(fid)
        return fid

    def add_simplex(self, vertices: Iterable[int], weight: float = 1.0) -> SimplexRecord:
        verts = tuple(sorted(set(int(x) for x in vertices)))
        if len(verts) < 3:
            raise StructuralError("simplex needs at least 3 vertices")
        for i, a in enumerate(verts):
            for b in verts[i + 1:]:
                if (a, b) not in self._edge_index:
                    raise StructuralError(f"simplex {verts} misses edge {{{a}, {b}}}")
        if verts in self._simplex_index:
            raise DuplicateFaceError(f"simplex {verts} already present")
        if not weight > 0:
            raise DomainError(f"simplex weight must be positive, got {weight}")
        rec = SimplexRecord(len(verts) - 1, verts, float(weight))
        self.simplices.append(rec)
        self._simplex_index.add(verts)
        return rec

    # -- basic queries ----------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_weights)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < len(self.vertex_weights):
            raise IndexError(f"vertex id {v} out of range")

    def _check_edge(self, e: int) -> None:
        if not 0 <= e < len(self.edges):
            raise IndexError(f"edge id {e} out of range")

    def has_edge(self, u: int, v: int) -> bool:
        return _edge_key(u, v) in self._edge_index

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._edge_index[_edge_key(u, v)]
        except KeyError:
            raise KeyError(f"no edge between {u} and {v}") from None

    def has_face(self, cycle: Sequence[int]) -> bool:
        return canonical_cycle(cycle) in self._face_index

    def neighbors(self, v: int) -> set[int]:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def vertex_edges(self, v: int) -> list[int]:
        self._check_vertex(v)
        return self._vertex_edges[v]

    def face_edges(self, f: int) -> list[int]:
        cycle = self.faces[f].boundary
        return [self._edge_index[_edge_key(a, b)] for a, b in zip(cycle, cycle[1:] + cycle[:1])]

    def parents_of_edge(self, e: int) -> list[int]:
        """Face ids whose boundary contains edge ``e``, ascending."""
        self._check_edge(e)
        return sorted(self._edge_faces[e])

    def face_sharing_edges(self, e: int) -> set[int]:
        """Edges other than ``e`` lying on a common face with ``e``."""
        self._check_edge(e)
        out: set[int] = set()
        for f in self._edge_faces[e]:
            out.update(self.face_edges(f))
        out.discard(e)
        return out

    def vertex_sharing_edges(self, e: int) -> set[int]:
        self._check_edge(e)
        edge = self.edges[e]
        out = set(self._vertex_edges[edge.u])
        out.update(self._vertex_edges[edge.v])
        out.discard(e)
        return out

    def parallel_edges(self, e: int) -> set[int]:
        """Edges sharing a face or a vertex with ``e``, but not both."""
        return self.face_sharing_edges(e) ^ self.vertex_sharing_edges(e)

    def shared_face_count(self, e1: int, e2: int) -> int:
        return len(set(self._edge_faces[e1]) & set(self._edge_faces[e2]))

    def shared_vertices(self, e1: int, e2: int) -> set[int]:
        return set(self.edges[e1].endpoints) & set(self.edges[e2].endpoints)

    # -- index maintenance --------------------------------------------------

    def incidence_from_scratch(self) -> tuple[list[list[int]], list[list[int]]]:
        """Vertex->edges and edge->faces indexes recomputed from the cell lists."""
        vertex_edges: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for edge in self.edges:
            vertex_edges[edge.u].append(edge.id)
            vertex_edges[edge.v].append(edge.id)
        lookup = {(ed.u, ed.v): ed.id for ed in self.edges}
        edge_faces: list[list[int]] = [[] for _ in self.edges]
        for face in self.faces:
            cyc = face.boundary
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                edge_faces[lookup[_edge_key(a, b)]].append(face.id)
        return vertex_edges, edge_faces

    def incidence(self) -> tuple[list[list[int]], list[list[int]]]:
        return [list(x) for x in self._vertex_edges], [list(x) for x in self._edge_faces]

    # -- derived complexes --------------------------------------------------

    def copy(self) -> "PolyhedralComplex":
        return self.with_edge_weights([e.weight for e in self.edges])

    def skeleton(self) -> "PolyhedralComplex":
        """Vertices and edges only."""
        out = PolyhedralComplex(self.vertex_count, self.vertex_weights, self.labels)
        for edge in self.edges:
            out.add_edge(edge.u, edge.v, edge.weight)
        return out

    def with_edge_weights(self, weights: Sequence[float]) -> "PolyhedralComplex":
        """Same cells, new edge weights (face and simplex weights unchanged)."""
        if len(weights) != len(self.edges):
            raise ValueError("one weight per edge required")
        out = PolyhedralComplex(self.vertex_count, self.vertex_weights, self.labels)
        for edge, w in zip(self.edges, weights):
            out.add_edge(edge.u, edge.v, w)
        for face in self.faces:
            out.add_face(face.boundary, face.weight)
        for s in self.simplices:
            out.add_simplex(s.vertices, s.weight)
        return out

    def restrict(self, keep_edges: Iterable[int], drop_isolated: bool = True):
        """Subcomplex on the kept edges.

        Faces and simplices survive only if all their edges do. Vertex and
        edge ids are re-densified preserving order. Returns the new complex
        and a map from old edge id to new edge id.
        """
        keep = set(keep_edges)
        kept_edges = [ed for ed in self.edges if ed.id in keep]
        if drop_isolated:
            used = sorted({x for ed in kept_edges for x in ed.endpoints})
        else:
            used = list(range(self.vertex_count))
        vmap = {old: new for new, old in enumerate(used)}
        out = PolyhedralComplex(
            len(used),
            [self.vertex_weights[v] for v in used],
            [self.labels[v] for v in used],
        )
        emap = {}
        for ed in kept_edges:
            emap[ed.id] = out.add_edge(vmap[ed.u], vmap[ed.v], ed.weight)
        for face in self.faces:
            if all(eid in keep for eid in self.face_edges(face.id)):
                out.add_face([vmap[x] for x in face.boundary], face.weight)
        for s in self.simplices:
            if all(x in vmap for x in s.vertices) and all(
                self.edge_id(a, b) in keep for i, a in enumerate(s.vertices) for b in s.vertices[i + 1:]
            ):
                out.add_simplex([vmap[x] for x in s.vertices], s.weight)
        return out, emap

    def __repr__(self) -> str:
        return (
            f"PolyhedralComplex(vertices={self.vertex_count}, edges={self.edge_count}, "
            f"faces={self.face_count}, simplices={len(self.simplices)})"
        )


def from_edges(edges: Iterable[tuple[int, int]], vertex_count: int | None = None) -> PolyhedralComplex:
    """Unit-weight 1-skeleton from integer vertex pairs."""
    pairs = [(int(a), int(b)) for a, b in edges]
    n = vertex_count
    if n is None:
        n = 1 + max((max(p) for p in pairs), default=-1)
    c = PolyhedralComplex(n)
    for a, b in pairs:
        c.add_edge(a, b)
    return c
