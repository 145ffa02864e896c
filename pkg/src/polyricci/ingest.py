"""Reading networks from disk and turning them into 1-skeleton complexes."""
from __future__ import annotations

import io
import json
import math
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

from .complex import PolyhedralComplex
from .errors import EmptyInputError, ParseError

COMMENT_PREFIXES = ("#", "%")


@dataclass(frozen=True)
class EdgeListRecord:
    source: str
    target: str
    weight: float | None = None


def label_key(label: str):
    """Sort key that orders numeric labels numerically, then the rest as text."""
    try:
        return (0, int(label), "")
    except ValueError:
        pass
    try:
        return (1, float(label), "")
    except ValueError:
        return (2, 0.0, label)


def _split(line: str, delimiter: str | None) -> list[str]:
    if delimiter is None:
        if "," in line:
            return [x.strip() for x in line.split(",")]
        return line.split()
    return [x.strip() for x in line.split(delimiter)]


def parse_edge_list(
    stream: TextIO | str,
    delimiter: str | None = None,
    has_weights: bool | None = None,
    comment_prefixes: Iterable[str] = COMMENT_PREFIXES,
) -> tuple[list[EdgeListRecord], dict[str, int]]:
    """Parse an undirected edge list.

    ``has_weights=None`` accepts an optional third weight column. Duplicate
    lines (in either orientation) are merged; a duplicate with a different
    weight is an error. Returns the records and a label -> dense id map where
    ids follow :func:`label_key` order.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    prefixes = tuple(comment_prefixes)
    records: list[EdgeListRecord] = []
    seen: dict[frozenset, tuple[float | None, int]] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or (prefixes and line.startswith(prefixes)):
            continue
        fields = _split(line, delimiter)
        if has_weights is True:
            expected = (3,)
        elif has_weights is False:
            expected = (2,)
        else:
            expected = (2, 3)
        if len(fields) not in expected or any(not f for f in fields):
            raise ParseError(f"expected {' or '.join(map(str, expected))} fields, got {len(fields)}", lineno)
        src, dst = fields[0], fields[1]
        weight = None
        if len(fields) == 3:
            try:
                weight = float(fields[2])
            except ValueError:
                raise ParseError(f"non-numeric weight {fields[2]!r}", lineno) from None
            if not (weight > 0 and math.isfinite(weight)):
                raise ParseError(f"weight must be positive, got {fields[2]}", lineno)
        if src == dst:
            raise ParseError(f"self-loop on {src!r}", lineno)
        key = frozenset((src, dst))
        if key in seen:
            prev, prev_line = seen[key]
            if prev != weight:
                raise ParseError(f"duplicate edge {src}-{dst} with conflicting weight (first seen on line {prev_line})", lineno)
            continue
        seen[key] = (weight, lineno)
        records.append(EdgeListRecord(src, dst, weight))
    labels = sorted({x for r in records for x in (r.source, r.target)}, key=label_key)
    return records, {lab: i for i, lab in enumerate(labels)}


def serialize_edge_list(records: Iterable[EdgeListRecord], delimiter: str = " ") -> str:
    lines = []
    for r in records:
        fields = [r.source, r.target]
        if r.weight is not None:
            fields.append(repr(r.weight))
        lines.append(delimiter.join(fields))
    return "\n".join(lines) + ("\n" if lines else "")


def build_complex(records: list[EdgeListRecord], labels: Iterable[str] | None = None) -> PolyhedralComplex:
    """1-skeleton over ``labels`` (default: every label in the records)."""
    if labels is None:
        labels = {x for r in records for x in (r.source, r.target)}
    ordered = sorted(labels, key=label_key)
    ids = {lab: i for i, lab in enumerate(ordered)}
    c = PolyhedralComplex(len(ordered), labels=ordered)
    pairs = []
    for r in records:
        if r.source in ids and r.target in ids:
            a, b = ids[r.source], ids[r.target]
            pairs.append((min(a, b), max(a, b), 1.0 if r.weight is None else r.weight))
    for a, b, w in sorted(pairs):
        c.add_edge(a, b, w)
    return c


def components(records: list[EdgeListRecord]) -> list[set[str]]:
    adj: dict[str, set[str]] = {}
    for r in records:
        adj.setdefault(r.source, set()).add(r.target)
        adj.setdefault(r.target, set()).add(r.source)
    seen: set[str] = set()
    comps = []
    for start in sorted(adj, key=label_key):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    queue.append(y)
        comps.append(comp)
    return comps


def largest_component(records: list[EdgeListRecord]) -> PolyhedralComplex:
    """Largest connected component as a dense-id 1-skeleton.

    Ties on vertex count go to the component holding the smallest label.
    """
    if not records:
        raise EmptyInputError("edge list is empty")
    comps = components(records)
    best = min(comps, key=lambda comp: (-len(comp), label_key(min(comp, key=label_key))))
    return build_complex(records, best)


def is_connected(c: PolyhedralComplex) -> bool:
    if c.vertex_count == 0:
        return True
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in c.neighbors(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == c.vertex_count


def prune_leaves(c: PolyhedralComplex) -> PolyhedralComplex:
    """Strip degree-1 vertices (and their edges) until none remain."""
    deg = [c.degree(v) for v in range(c.vertex_count)]
    removed_edges: set[int] = set()
    queue = deque(v for v in range(c.vertex_count) if deg[v] == 1)
    while queue:
        v = queue.popleft()
        if deg[v] != 1:
            continue
        for eid in c.vertex_edges(v):
            if eid in removed_edges:
                continue
            removed_edges.add(eid)
            edge = c.edges[eid]
            other = edge.v if edge.u == v else edge.u
            deg[v] -= 1
            deg[other] -= 1
            if deg[other] == 1:
                queue.append(other)
    keep = [e.id for e in c.edges if e.id not in removed_edges]
    out, _ = c.restrict(keep)
    return out


# -- complex JSON ----------------------------------------------------------


def complex_to_dict(c: PolyhedralComplex) -> dict:
    return {
        "vertices": [
            {"id": i, "weight": w, "label": lab}
            for i, (w, lab) in enumerate(zip(c.vertex_weights, c.labels))
        ],
        "edges": [{"id": e.id, "u": e.u, "v": e.v, "weight": e.weight} for e in c.edges],
        "faces": [{"id": f.id, "cycle": list(f.boundary), "weight": f.weight} for f in c.faces],
        "simplices": [{"dim": s.dimension, "vertices": list(s.vertices), "weight": s.weight} for s in c.simplices],
    }


def complex_to_json(c: PolyhedralComplex) -> str:
    return json.dumps(complex_to_dict(c), indent=1) + "\n"


def complex_from_dict(data: dict) -> PolyhedralComplex:
    try:
        verts = sorted(data["vertices"], key=lambda x: x["id"])
        if [v["id"] for v in verts] != list(range(len(verts))):
            raise ParseError("vertex ids must be 0..n-1")
        c = PolyhedralComplex(
            len(verts),
            [v.get("weight", 1.0) for v in verts],
            [v.get("label", str(v["id"])) for v in verts],
        )
        for e in sorted(data.get("edges", []), key=lambda x: x["id"]):
            eid = c.add_edge(e["u"], e["v"], e.get("weight", 1.0))
            if eid != e["id"]:
                raise ParseError(f"edge ids must be dense, got {e['id']}")
        for f in sorted(data.get("faces", []), key=lambda x: x["id"]):
            c.add_face(f["cycle"], f.get("weight", 1.0))
        for s in data.get("simplices", []):
            rec = c.add_simplex(s["vertices"], s.get("weight", 1.0))
            if rec.dimension != s["dim"]:
                raise ParseError(f"simplex {s['vertices']} declared dim {s['dim']}")
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed complex JSON: {exc}") from None
    return c


def complex_from_json(text: str) -> PolyhedralComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    return complex_from_dict(data)


def parse_coordinates(stream: TextIO | str) -> dict[str, tuple[float, float]]:
    """``label x y`` per line; comments and blanks skipped."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    coords = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIXES):
            continue
        fields = _split(line, None)
        if len(fields) != 3:
            raise ParseError(f"expected 'label x y', got {len(fields)} fields", lineno)
        try:
            coords[fields[0]] = (float(fields[1]), float(fields[2]))
        except ValueError:
            raise ParseError("non-numeric coordinate", lineno) from None
    return coords


def load_complex(path: str | Path, has_weights: bool | None = None, component: bool = True):
    """Load either a complex JSON file or an edge list.

    Edge lists are reduced to their largest component unless ``component``
    is false. Returns ``(complex, raw_counts)`` where ``raw_counts`` holds the
    vertex and edge counts before component extraction.
    """
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        c = complex_from_json(text)
        return c, {"vertices": c.vertex_count, "edges": c.edge_count}
    records, label_map = parse_edge_list(text, has_weights=has_weights)
    if not records:
        raise EmptyInputError(f"{path}: no edges")
    raw = {"vertices": len(label_map), "edges": len(records)}
    c = largest_component(records) if component else build_complex(records)
    return c, raw
