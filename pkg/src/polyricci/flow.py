"""Discrete (normalized) Forman-Ricci flow on edge weights.

Forward-Euler steps of size ``epsilon``. After every step, edges whose weight
relative to the current maximum falls below ``threshold`` are removed together
with every face and simplex they bound; vertices left isolated go too. Faces
are never re-detected and their weights never recomputed.

By default a step that drives a weight to zero or below clamps it to
``floor``; the pruning rule then removes that edge. ``strict=True`` raises
:class:`DomainError` instead.
"""
from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .bloch import classify_prototype, curvature_functions, euler_characteristic_comb, euler_characteristic_gb
from .complex import PolyhedralComplex
from .curvature import weighted_curvatures
from .errors import DomainError, EmptyInputError
from .ingest import complex_to_json, prune_leaves
from .weights import WEIGHT_FLOOR

log = logging.getLogger(__name__)


@dataclass
class FlowConfig:
    epsilon: float = 0.1
    max_iter: int = 500
    threshold: float = 0.05
    normalized: bool = True
    renormalize: bool = True
    tol: float = 1e-6
    curvature: str = "forman"  # or "r1"
    def10_sign: bool = False
    strict: bool = False
    floor: float = WEIGHT_FLOOR

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise ValueError("epsilon must be non-negative")
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie in (0, 1)")
        if self.max_iter < 0:
            raise ValueError("max_iter must be non-negative")
        if self.curvature not in ("forman", "r1"):
            raise ValueError(f"unknown flow curvature {self.curvature!r}")


def _mean(values: Sequence[float]) -> float:
    if not values:
        return 0.0
    if max(values) == min(values):
        return values[0]
    return sum(values) / len(values)


def _check(new: list[float], strict: bool, floor: float) -> list[float]:
    bad = [i for i, w in enumerate(new) if not w > 0]
    if bad:
        if strict:
            raise DomainError(f"flow step made {len(bad)} edge weight(s) nonpositive (first: edge {bad[0]}); "
                              "reduce epsilon or run in lenient mode")
        new = [w if w > 0 else floor for w in new]
    return new


def _renormalize(new: list[float]) -> list[float]:
    top = max(new)
    return [w / top for w in new]


def _update(weights, curv, epsilon, centre, sign=-1.0):
    return [w + sign * epsilon * (k - centre) * w for w, k in zip(weights, curv)]


def flow_step_shortterm(c, weights, epsilon, strict=True, floor=WEIGHT_FLOOR) -> list[float]:
    """gamma' = gamma - epsilon * Ric(gamma) * gamma."""
    curv = weighted_curvatures(c, weights)
    return _check(_update(weights, curv, epsilon, 0.0), strict, floor)


def flow_step_normalized(c, weights, epsilon, renormalize=True, strict=True, floor=WEIGHT_FLOOR) -> list[float]:
    """gamma' = gamma - epsilon * (Ric - mean Ric) * gamma, then max weight scaled to 1."""
    curv = weighted_curvatures(c, weights)
    new = _check(_update(weights, curv, epsilon, _mean(curv)), strict, floor)
    return _renormalize(new) if renormalize else new


def r1_values(c: PolyhedralComplex) -> list[float]:
    return [float(x) for x in curvature_functions(c)[1]]


def flow_step_r1(c, weights, epsilon, def10_sign=False, renormalize=True, strict=True, floor=WEIGHT_FLOOR) -> list[float]:
    """Normalized step driven by R1 instead of the Forman curvature.

    By default above-average edges shrink; ``def10_sign`` makes them grow.
    """
    curv = r1_values(c)
    sign = 1.0 if def10_sign else -1.0
    new = _check(_update(weights, curv, epsilon, _mean(curv), sign), strict, floor)
    return _renormalize(new) if renormalize else new


@dataclass
class FlowRecord:
    t: int
    mean_ric: float
    n_edges: int
    chi: int


@dataclass
class FlowTrace:
    records: list[FlowRecord] = field(default_factory=list)
    weights: list[list[float]] = field(default_factory=list)
    snapshots: list[tuple[int, PolyhedralComplex]] = field(default_factory=list)
    termination: str = ""
    final: PolyhedralComplex | None = None
    survivor: PolyhedralComplex | None = None
    chi_gb: float = 0.0
    chi_comb: int = 0
    prototype: str = ""
    config: FlowConfig | None = None

    @property
    def iterations(self) -> int:
        return self.records[-1].t if self.records else 0

    def jsonl(self) -> str:
        return "".join(json.dumps(asdict(r)) + "\n" for r in self.records)

    def summary(self) -> dict:
        final = self.final
        chi_gb = self.chi_gb
        return {
            "iterations": self.iterations,
            "termination": self.termination,
            "final_vertices": final.vertex_count if final else 0,
            "final_edges": final.edge_count if final else 0,
            "final_faces": final.face_count if final else 0,
            "surviving_edges": self.survivor.edge_count if self.survivor else 0,
            "chi_gb": int(chi_gb) if float(chi_gb).is_integer() else float(chi_gb),
            "chi_comb": self.chi_comb,
            "prototype": self.prototype,
            "config": asdict(self.config) if self.config else None,
        }

    def snapshot_json(self) -> list[tuple[int, str]]:
        return [(t, complex_to_json(snap)) for t, snap in self.snapshots]


def _curvature(c: PolyhedralComplex, weights, config: FlowConfig) -> list[float]:
    if config.curvature == "r1":
        return r1_values(c)
    return weighted_curvatures(c, weights)


def run_flow(c: PolyhedralComplex, config: FlowConfig | None = None, snapshot_every: int = 0,
             keep_weights: bool = True) -> FlowTrace:
    """Iterate the flow until weights settle, the complex empties, or max_iter."""
    config = config or FlowConfig()
    if c.edge_count == 0:
        raise EmptyInputError("flow needs at least one edge")
    if config.epsilon == 0:
        log.warning("epsilon is 0: weights will not move; running to max_iter")
    current = c
    weights = [e.weight for e in c.edges]
    trace = FlowTrace(config=config)

    def record(t, curv):
        trace.records.append(FlowRecord(t, _mean(curv), current.edge_count, euler_characteristic_comb(current)))
        if keep_weights:
            trace.weights.append(list(weights))
        if snapshot_every and t % snapshot_every == 0:
            trace.snapshots.append((t, current.with_edge_weights(weights)))

    curv = _curvature(current, weights, config)
    record(0, curv)
    trace.termination = "max_iter"
    for t in range(1, config.max_iter + 1):
        if config.normalized:
            sign = 1.0 if (config.curvature == "r1" and config.def10_sign) else -1.0
            new = _update(weights, curv, config.epsilon, _mean(curv), sign)
        else:
            new = _update(weights, curv, config.epsilon, 0.0)
        new = _check(new, config.strict, config.floor)
        if config.normalized and config.renormalize:
            new = _renormalize(new)
        change = max(abs(a - b) / b for a, b in zip(new, weights))
        top = max(new)
        keep = [i for i, w in enumerate(new) if w / top >= config.threshold]
        pruned = len(keep) < len(new)
        if pruned:
            current, _ = current.restrict(keep)
            weights = [new[i] for i in keep]
        else:
            weights = new
        if current.edge_count == 0:
            trace.records.append(FlowRecord(t, 0.0, 0, euler_characteristic_comb(current)))
            if keep_weights:
                trace.weights.append([])
            trace.termination = "empty"
            break
        curv = _curvature(current, weights, config)
        record(t, curv)
        if config.epsilon > 0 and not pruned and change < config.tol:
            trace.termination = "converged"
            break

    trace.survivor = current.with_edge_weights(weights)
    final = prune_leaves(trace.survivor)
    trace.final = final
    trace.chi_gb = float(euler_characteristic_gb(final))
    trace.chi_comb = euler_characteristic_comb(final)
    trace.prototype = classify_prototype(trace.chi_gb)
    return trace
