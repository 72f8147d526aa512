"""Combinatorial graph manifold and horizontal surface of a tree.

For a tree with at least three vertices, every vertex ``v`` of degree
``k >= 2`` gives a Seifert piece ``Σ_v × S¹_v`` where ``Σ_v`` is a disk with
``k`` holes labelled by the neighbours of ``v`` and outer circle ``b_v``.
Adjacent pieces are glued along ``S¹_v1 × S¹_v2`` swapping fiber and base.
The surface piece over ``v`` winds ``-1`` times around the fiber along each
inner circle and ``k`` times along the outer one.

Everything here is labels and integers; nothing is realized geometrically.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .bb import TLetter
from .graph import GraphError, SimplicialGraph, is_tree


@dataclass(frozen=True)
class SeifertPiece:
    vertex: str
    inner: tuple  # base circles, one per neighbour
    outer: str
    fiber: str


@dataclass(frozen=True)
class GluingTorus:
    edge: tuple
    identification: str = "swap"


@dataclass(frozen=True)
class Winding:
    circle: str
    base_degree: int
    fiber_degree: int


@dataclass(frozen=True)
class SurfacePiece:
    vertex: str
    inner_windings: tuple
    outer_winding: Winding
    euler: int

    def fiber_sum(self) -> int:
        return sum(w.fiber_degree for w in self.inner_windings) + self.outer_winding.fiber_degree


@dataclass
class ManifoldData:
    graph: SimplicialGraph
    pieces: dict
    gluings: list
    boundary_tori: list
    surface: list
    pairings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "pieces": [asdict(self.pieces[v]) for v in self.pieces],
            "gluings": [asdict(gl) for gl in self.gluings],
            "boundary_tori": [list(t) for t in self.boundary_tori],
            "surface": [asdict(p) for p in self.surface],
            "pairings": [[list(a), list(b)] for a, b in self.pairings],
            "surface_euler": surface_euler(self),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def build_manifold(g: SimplicialGraph) -> ManifoldData:
    if len(g) < 3:
        raise GraphError("need a tree with at least 3 vertices")
    if not is_tree(g):
        raise GraphError("graph is not a tree")
    interior = [v for v in g.vertices if g.degree(v) >= 2]
    pieces = {}
    surface = []
    for v in interior:
        nbrs = tuple(g.neighbors(v))
        k = len(nbrs)
        pieces[v] = SeifertPiece(v, nbrs, f"b_{v}", v)
        surface.append(
            SurfacePiece(
                vertex=v,
                inner_windings=tuple(Winding(u, 1, -1) for u in nbrs),
                outer_winding=Winding(f"b_{v}", 1, k),
                euler=1 - k,
            )
        )
    gluings, boundary = [], []
    for s, t in g.sorted_edges():
        if s in pieces and t in pieces:
            gluings.append(GluingTorus((s, t)))
        else:
            leaf, inner = (s, t) if t in pieces else (t, s)
            boundary.append((leaf, inner))
    # the circle of S_v1 labelled v2 meets the circle of S_v2 labelled v1
    pairings = [((s, t), (t, s)) for s, t in (gl.edge for gl in gluings)]
    return ManifoldData(g, pieces, gluings, boundary, surface, pairings)


def surface_euler(md: ManifoldData) -> int:
    """Sum of piece Euler characteristics; gluing circles contribute zero."""
    return sum(p.euler for p in md.surface)


def surface_group_generators(md: ManifoldData) -> list:
    """Generators ``u v^-1`` of the pieces' surface groups, deduplicated.

    Each pair is reported as the positive T-letter on that edge.
    """
    g = md.graph
    seen = set()
    for piece in md.surface:
        v = piece.vertex
        for w in piece.inner_windings:
            u = w.circle
            seen.add((u, v) if g.index(u) < g.index(v) else (v, u))
    return [TLetter(s, t, 1) for s, t in sorted(seen, key=lambda e: (g.index(e[0]), g.index(e[1])))]


def _boundary_class(md: ManifoldData, v: str, label: str) -> tuple:
    """Homology class ``(base, fiber)`` of the surface circle of piece ``v`` over ``label``."""
    piece = next(p for p in md.surface if p.vertex == v)
    w = next(w for w in piece.inner_windings if w.circle == label)
    return w.base_degree, w.fiber_degree


def check_gluing_compatibility(md: ManifoldData) -> list:
    """Per gluing torus, whether the two surface circles agree up to sign.

    The class ``(base, fiber)`` seen from ``P_v1`` becomes ``(fiber, base)``
    in the coordinates of ``P_v2`` because the gluing swaps the factors.
    """
    report = []
    for gl in md.gluings:
        v1, v2 = gl.edge
        c1 = _boundary_class(md, v1, v2)
        c2 = _boundary_class(md, v2, v1)
        swapped = (c1[1], c1[0])
        ok = swapped == c2 or swapped == (-c2[0], -c2[1])
        report.append({"edge": [v1, v2], "class_1": list(c1), "class_2": list(c2), "swapped_1": list(swapped), "pass": ok})
    return report
