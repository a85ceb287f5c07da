"""Exact effective resistance on metrized graphs.

Each edge is a resistor whose resistance equals its length.  Resistances are
computed from the weighted vertex Laplacian (conductance 1/length per edge,
loops contributing nothing) by exact rational elimination: inject a unit
current at p, extract it at q, ground one vertex, and read off the potential
difference.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import EdgeNotFound
from .graphs import GraphPoint, MetrizedGraph, subdivide_at


def _laplacian(g: MetrizedGraph, index: dict) -> list[list[Fraction]]:
    n = len(index)
    L = [[Fraction(0)] * n for _ in range(n)]
    for e in g.edges:
        if e.is_loop():
            continue
        c = 1 / e.length
        i, j = index[e.u], index[e.v]
        L[i][i] += c
        L[j][j] += c
        L[i][j] -= c
        L[j][i] -= c
    return L


def _potentials(g: MetrizedGraph, source, sink) -> dict:
    """Vertex potentials for a unit current source->sink, grounded at sink."""
    verts = [v for v in g.vertex_list if v != sink]
    index = {v: i for i, v in enumerate(g.vertex_list)}
    L = _laplacian(g, index)
    keep = [index[v] for v in verts]
    A = [[L[i][j] for j in keep] for i in keep]
    b = [Fraction(1) if v == source else Fraction(0) for v in verts]
    x = linalg.solve(A, b)
    pot = dict(zip(verts, x))
    pot[sink] = Fraction(0)
    return pot


def effective_resistance(g: MetrizedGraph, p, q) -> Fraction:
    """Resistance between the points p and q; symmetric, 0 iff p = q."""
    g.validate()
    g1, vp, rel = subdivide_at(g, p)
    q1 = rel(g.check_point(q))
    g2, vq, rel2 = subdivide_at(g1, q1)
    vp2 = rel2(GraphPoint.at_vertex(vp)).vertex
    if vp2 == vq:
        return Fraction(0)
    pot = _potentials(g2, vp2, vq)
    return pot[vp2]


def resistance_in_deleted_edge(g: MetrizedGraph, edge_id) -> Fraction | None:
    """Resistance between the endpoints of the edge in g minus that edge.

    Returns None when the edge is a bridge (infinite resistance) and 0 for a
    loop, whose endpoints coincide.
    """
    e = g.edge_by_id.get(edge_id)
    if e is None:
        raise EdgeNotFound(f"edge {edge_id!r} is not in the graph")
    if e.is_loop():
        return Fraction(0)
    rest = MetrizedGraph(g.vertex_list, [f for f in g.edges if f.id != e.id])
    if not rest.connects(e.u, e.v):
        return None
    # with the endpoints still connected, rest is connected as a whole
    return effective_resistance(rest, e.u, e.v)
