"""Defining graphs of right-angled Artin groups.

A :class:`SimplicialGraph` is immutable once loaded.  Vertex order is the
order of appearance in the input and is used for every tie-break downstream.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input or an unsupported graph shape."""


@dataclass(frozen=True)
class JoinDecomposition:
    left: frozenset
    right: frozenset


@dataclass(frozen=True, eq=False)
class SimplicialGraph:
    vertices: tuple
    edges: frozenset
    _index: dict = field(init=False, repr=False, compare=False)
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        if not verts:
            raise GraphError("graph has no vertices")
        index = {}
        for i, v in enumerate(verts):
            if not isinstance(v, str) or not v:
                raise GraphError(f"vertex ids must be nonempty strings, got {v!r}")
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = i
        adj = [set() for _ in verts]
        for e in self.edges:
            a, b = tuple(e)
            adj[index[a]].add(index[b])
            adj[index[b]].add(index[a])
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))

    @classmethod
    def from_edges(cls, vertices: Sequence[str], edges: Iterable[Sequence[str]]) -> "SimplicialGraph":
        verts = list(vertices)
        known = set(verts)
        seen = set()
        for e in edges:
            e = list(e)
            if len(e) != 2:
                raise GraphError(f"edge must have 2 endpoints, got {e!r}")
            a, b = e
            if a == b:
                raise GraphError(f"self-loop at {a!r}")
            for x in (a, b):
                if x not in known:
                    raise GraphError(f"unknown endpoint {x!r}")
            key = frozenset((a, b))
            if key in seen:
                raise GraphError(f"duplicate edge {a!r}-{b!r}")
            seen.add(key)
        return cls(tuple(verts), frozenset(seen))

    # identity semantics: two loads of the same file are equal graphs
    def __eq__(self, other):
        if not isinstance(other, SimplicialGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __len__(self):
        return len(self.vertices)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def adjacent(self, a: str, b: str) -> bool:
        return self.index(b) in self._adj[self.index(a)]

    def neighbors(self, v: str) -> list:
        """Neighbors of ``v`` in canonical vertex order."""
        return [self.vertices[j] for j in sorted(self._adj[self.index(v)])]

    def degree(self, v: str) -> int:
        return len(self._adj[self.index(v)])

    @property
    def adjacency(self) -> dict:
        return {v: self.neighbors(v) for v in self.vertices}

    def sorted_edges(self) -> list:
        """Edges as ``(s, t)`` pairs with ``s`` before ``t``, in canonical order."""
        out = []
        for i, v in enumerate(self.vertices):
            for j in sorted(self._adj[i]):
                if j > i:
                    out.append((v, self.vertices[j]))
        return out

    def induced(self, subset: Iterable[str]) -> "SimplicialGraph":
        keep = set(subset)
        verts = [v for v in self.vertices if v in keep]
        return SimplicialGraph(tuple(verts), frozenset(e for e in self.edges if e <= keep))

    def to_json(self) -> str:
        return json.dumps({"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]})


def load_graph(text: str) -> SimplicialGraph:
    """Parse the JSON graph interchange format."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"parse error: {exc}") from None
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise GraphError("parse error: expected an object with 'vertices' and 'edges'")
    if not isinstance(data["vertices"], list) or not isinstance(data["edges"], list):
        raise GraphError("parse error: 'vertices' and 'edges' must be lists")
    return SimplicialGraph.from_edges(data["vertices"], data["edges"])


def bfs_distances(g: SimplicialGraph, source: str) -> dict:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def is_connected(g: SimplicialGraph) -> bool:
    return len(bfs_distances(g, g.vertices[0])) == len(g)


def diameter(g: SimplicialGraph) -> int:
    best = 0
    for v in g.vertices:
        dist = bfs_distances(g, v)
        if len(dist) != len(g):
            raise GraphError("graph is disconnected")
        best = max(best, max(dist.values()))
    return best


def shortest_path(g: SimplicialGraph, a: str, b: str) -> list:
    """BFS geodesic from ``a`` to ``b``, exploring neighbors in vertex order."""
    g.index(a)
    g.index(b)
    parent = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            break
        for w in g.neighbors(v):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    if b not in parent:
        raise GraphError(f"no path from {a!r} to {b!r}: graph is disconnected")
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def _complement_components(g: SimplicialGraph) -> list:
    n = len(g)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        seen[start] = True
        stack = [start]
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j != i and not seen[j] and j not in g._adj[i]:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def join_decomposition(g: SimplicialGraph) -> Optional[JoinDecomposition]:
    """Split ``g`` as a nontrivial join, or return None.

    ``g`` is a join exactly when its complement is disconnected.  The
    smallest complement component becomes ``left`` (ties go to the one
    holding the earliest vertex); everything else is ``right``.
    """
    if len(g) < 2:
        return None
    comps = _complement_components(g)
    if len(comps) < 2:
        return None
    smallest = min(comps, key=lambda c: (len(c), min(c)))
    left = frozenset(g.vertices[i] for i in smallest)
    right = frozenset(g.vertices) - left
    return JoinDecomposition(left, right)


def is_join(g: SimplicialGraph) -> bool:
    return join_decomposition(g) is not None


def validate_join(g: SimplicialGraph, j: JoinDecomposition) -> None:
    left, right = set(j.left), set(j.right)
    if not left or not right:
        raise GraphError("join sides must be nonempty")
    if left & right or left | right != set(g.vertices):
        raise GraphError("join sides must partition the vertex set")
    for a in left:
        for b in right:
            if not g.adjacent(a, b):
                raise GraphError(f"not a join: {a!r} and {b!r} are not adjacent")


def is_tree(g: SimplicialGraph) -> bool:
    return len(g.edges) == len(g) - 1 and is_connected(g)


def maximal_join_subgraph(g: SimplicialGraph) -> tuple:
    """Pick a maximal induced join subgraph ``J`` and a vertex ``v`` outside it.

    Exhaustive over induced subgraphs.  Among maximal joins the one with the
    lexicographically least sorted vertex list wins; ``v`` is the least vertex
    not in ``J``.
    """
    if is_join(g):
        raise GraphError("graph is a join")
    n = len(g)
    joins = []
    for size in range(2, n + 1):
        for combo in combinations(range(n), size):
            sub = g.induced(g.vertices[i] for i in combo)
            if is_join(sub):
                joins.append(frozenset(combo))
    maximal = [s for s in joins if not any(s < t for t in joins)]
    best = min(maximal, key=sorted)
    v = next(i for i in range(n) if i not in best)
    return frozenset(g.vertices[i] for i in best), g.vertices[v]


def path_graph(n: int, names: str = "abcdefghijklmnopqrstuvwxyz") -> SimplicialGraph:
    verts = list(names[:n])
    return SimplicialGraph.from_edges(verts, zip(verts, verts[1:]))


def star_graph(leaves: int, center: str = "c", names: str = "xyzuvw") -> SimplicialGraph:
    verts = [center] + list(names[:leaves])
    return SimplicialGraph.from_edges(verts, [(center, v) for v in verts[1:]])
