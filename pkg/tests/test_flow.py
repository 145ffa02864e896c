import json
import logging

import pytest

from polyricci.bloch import EUCLIDEAN, HYPERBOLIC, SPHERICAL
from polyricci.curvature import weighted_curvatures
from polyricci.errors import DomainError, EmptyInputError
from polyricci.faces import fill_faces
from polyricci.flow import (
    FlowConfig,
    flow_step_normalized,
    flow_step_r1,
    flow_step_shortterm,
    r1_values,
    run_flow,
)
from polyricci.complex import PolyhedralComplex
from polyricci.ingest import prune_leaves

import builders as b


def ones(c):
    return [1.0] * c.edge_count


def test_shortterm_examples():
    cyc = b.cycle(7)
    assert flow_step_shortterm(cyc, ones(cyc), 0.1) == ones(cyc)
    assert flow_step_shortterm(b.bare_edge(), [1.0], 0.1) == [pytest.approx(0.8)]
    s = b.star(5)
    assert all(w > 1 for w in flow_step_shortterm(s, ones(s), 0.1))


def test_normalized_examples():
    tet = b.tetrahedron_boundary()
    assert flow_step_normalized(tet, ones(tet), 0.1) == ones(tet)
    assert flow_step_normalized(tet, ones(tet), 0.1, renormalize=False) == ones(tet)
    p = b.path(3)
    w = [1.0, 0.5]
    curv = weighted_curvatures(p, w)
    assert curv[0] != curv[1]
    new = flow_step_normalized(p, w, 0.1, renormalize=False)
    hi, lo = (0, 1) if curv[0] > curv[1] else (1, 0)
    assert new[hi] / w[hi] < new[lo] / w[lo]
    renorm = flow_step_normalized(p, w, 0.1)
    assert max(renorm) == 1.0


def test_renormalization_every_step():
    c = fill_faces(b.karate(), 3, 2)
    trace = run_flow(c, FlowConfig(epsilon=0.01, max_iter=20))
    assert all(max(w) == pytest.approx(1.0) for w in trace.weights if w)


def test_strict_mode_raises_on_nonpositive_weight():
    # Ric = 2 on a bare edge, so a step of 1 sends the weight to -1
    with pytest.raises(DomainError):
        flow_step_shortterm(b.bare_edge(), [1.0], 1.0, strict=True)
    lenient = flow_step_shortterm(b.bare_edge(), [1.0], 1.0, strict=False)
    assert lenient == [1e-9]
    c = fill_faces(b.karate(), 3, 2)
    with pytest.raises(DomainError):
        run_flow(c, FlowConfig(strict=True))


def test_r1_examples():
    tet = b.tetrahedron_boundary()
    assert flow_step_r1(tet, ones(tet), 0.1) == ones(tet)
    tri = b.with_faces([(0, 1), (1, 2), (0, 2), (2, 3)], [(0, 1, 2)])
    core = prune_leaves(tri)
    assert r1_values(core) == [3.0, 3.0, 3.0]
    assert flow_step_r1(core, ones(core), 0.1) == ones(core)


def test_r1_sign_flag_negates_update():
    c = b.with_faces([(0, 1), (1, 2), (0, 2), (2, 3), (3, 0)], [(0, 1, 2)])
    w = ones(c)
    down = flow_step_r1(c, w, 0.05, renormalize=False)
    up = flow_step_r1(c, w, 0.05, def10_sign=True, renormalize=False)
    for x, d, u in zip(w, down, up):
        assert d - x == pytest.approx(-(u - x), abs=1e-15)
    assert down != w


@pytest.mark.parametrize(
    "build",
    [b.tetrahedron_boundary, b.octahedron_boundary, b.torus7, b.filled_triangle, lambda: b.cycle(9), lambda: b.complete(5)],
)
def test_constant_curvature_fixed_points_bit_identical(build):
    c = build()
    w = [1.0] * c.edge_count
    for _ in range(50):
        w = flow_step_normalized(c, w, 0.1, renormalize=False)
    assert w == [1.0] * c.edge_count
    trace = run_flow(c, FlowConfig(max_iter=50, renormalize=False, tol=0.0))
    assert all(x == [1.0] * c.edge_count for x in trace.weights)


def test_run_flow_tetrahedron():
    trace = run_flow(b.tetrahedron_boundary())
    assert trace.termination == "converged"
    assert trace.iterations == 1
    assert trace.prototype == SPHERICAL and trace.chi_gb == 2


def test_run_flow_bare_cycle():
    trace = run_flow(b.cycle(12))
    assert trace.termination == "converged" and trace.iterations == 1
    assert trace.chi_gb == 0 and trace.prototype == EUCLIDEAN
    assert all(r.mean_ric == 0 for r in trace.records)


def test_run_flow_karate_defaults_finite():
    c = fill_faces(b.karate(), 3, 2)
    trace = run_flow(c)
    assert trace.termination in ("converged", "max_iter", "empty")
    assert trace.iterations <= 500
    assert trace.prototype in (SPHERICAL, EUCLIDEAN, HYPERBOLIC)
    counts = [r.n_edges for r in trace.records]
    assert counts[0] == 78
    assert all(x >= y for x, y in zip(counts, counts[1:]))
    summary = trace.summary()
    assert summary["prototype"] == trace.prototype
    json.dumps(summary)


def test_pruning_removes_faces_with_their_edges():
    c = fill_faces(b.karate(), 4, 2)
    trace = run_flow(c, FlowConfig(epsilon=0.05, max_iter=40), snapshot_every=1)
    prev = None
    for t, snap in trace.snapshots:
        edges = {tuple(snap.labels[x] for x in e.endpoints) for e in snap.edges}
        if prev is not None:
            assert edges <= prev
        prev = edges
        for f in snap.faces:
            cyc = f.boundary
            assert all(snap.has_edge(a, bb) for a, bb in zip(cyc, cyc[1:] + cyc[:1]))


def test_flow_deterministic():
    c = fill_faces(b.karate(), 3, 2)
    cfg = FlowConfig(epsilon=0.02, max_iter=30)
    assert run_flow(c, cfg).jsonl() == run_flow(c, cfg).jsonl()


def test_epsilon_zero_runs_to_max_iter(caplog):
    c = fill_faces(b.karate(), 3, 2)
    with caplog.at_level(logging.WARNING):
        trace = run_flow(c, FlowConfig(epsilon=0.0, max_iter=7))
    assert "epsilon is 0" in caplog.text
    assert trace.termination == "max_iter" and trace.iterations == 7
    assert all(w == trace.weights[0] for w in trace.weights)


def test_shortterm_and_r1_modes_run():
    c = fill_faces(b.karate(), 3, 2)
    short = run_flow(c, FlowConfig(normalized=False, epsilon=0.005, max_iter=10))
    assert short.records[0].t == 0
    r1 = run_flow(c, FlowConfig(curvature="r1", epsilon=0.005, max_iter=10))
    assert r1.records[0].mean_ric == pytest.approx(sum(r1_values(c)) / c.edge_count)


def test_trace_records_and_snapshots():
    trace = run_flow(b.tetrahedron_boundary(), snapshot_every=1)
    lines = [json.loads(x) for x in trace.jsonl().splitlines()]
    assert lines[0] == {"t": 0, "mean_ric": 4.0, "n_edges": 6, "chi": 2}
    assert [t for t, _ in trace.snapshot_json()] == [0, 1]
    json.loads(trace.snapshot_json()[0][1])


def test_config_validation():
    with pytest.raises(ValueError):
        FlowConfig(epsilon=-1)
    with pytest.raises(ValueError):
        FlowConfig(threshold=1.0)
    with pytest.raises(ValueError):
        FlowConfig(max_iter=-1)
    with pytest.raises(ValueError):
        FlowConfig(curvature="ollivier")
    with pytest.raises(EmptyInputError):
        run_flow(PolyhedralComplex(3))
