"""Forman-Ricci curvature, Bloch curvature functions and Ricci flow on
2-dimensional polyhedral complexes built from networks."""

__version__ = "0.1.0"

from .bloch import bloch_report, classify_prototype, euler_characteristic_comb, euler_characteristic_gb
from .complex import Edge, FaceRecord, PolyhedralComplex, SimplexRecord, canonical_cycle, from_edges
from .curvature import curvature_report, forman_ricci_combinatorial, forman_ricci_weighted
from .faces import census, enumerate_chordless_cycles, enumerate_cliques, enumerate_triangles, fill_faces
from .flow import FlowConfig, run_flow
from .ingest import largest_component, load_complex, parse_edge_list, prune_leaves

__all__ = [
    "Edge", "FaceRecord", "FlowConfig", "PolyhedralComplex", "SimplexRecord",
    "bloch_report", "canonical_cycle", "census", "classify_prototype", "curvature_report",
    "enumerate_chordless_cycles", "enumerate_cliques", "enumerate_triangles",
    "euler_characteristic_comb", "euler_characteristic_gb", "fill_faces",
    "forman_ricci_combinatorial", "forman_ricci_weighted", "from_edges",
    "largest_component", "load_complex", "parse_edge_list", "prune_leaves", "run_flow",
]
