"""Brute-force reference computations.

Nothing here uses the normal-form machinery in :mod:`raaglab.words`; these
routines exist to cross-check it.  Words are lists of ``(vertex, sign)``.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from .graph import SimplicialGraph


def _commute(g: SimplicialGraph, u: str, v: str) -> bool:
    return u != v and frozenset((u, v)) in g.edges


def shuffle_closure(g: SimplicialGraph, word, limit: int = 200000) -> set:
    """Every word reachable by swapping adjacent commuting letters or deleting
    an adjacent inverse pair."""
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            (u, s), (v, t) = w[i], w[i + 1]
            if u == v and s == -t:
                nxt = w[:i] + w[i + 2:]
            elif _commute(g, u, v):
                nxt = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise RuntimeError("shuffle closure too large")
                queue.append(nxt)
    return seen


def brute_normal_form(g: SimplicialGraph, word) -> tuple:
    """Lexicographically least among the shortest words in the shuffle closure."""
    order = {v: i for i, v in enumerate(g.vertices)}
    key = lambda w: (len(w), [(order[v], 0 if s == 1 else 1) for v, s in w])
    return min(shuffle_closure(g, word), key=key)


class Heap:
    """Heap-of-pieces encoding: one stack per vertex.

    A letter of ``v`` pushes its sign on stack ``v`` and a ``0`` marker on the
    stack of every vertex that does not commute with ``v``.  Two reduced
    words give the same stacks iff they differ by shuffles.
    """

    def __init__(self, g: SimplicialGraph):
        self.g = g
        self.idx = {v: i for i, v in enumerate(g.vertices)}
        n = len(g.vertices)
        self.blockers = [
            [j for j in range(n) if j != i and not _commute(g, g.vertices[i], g.vertices[j])]
            for i in range(n)
        ]

    def empty(self) -> tuple:
        return tuple(() for _ in self.g.vertices)

    def push(self, piles: tuple, v: str, sign: int) -> tuple:
        i = self.idx[v]
        out = list(piles)
        if out[i] and out[i][-1] == -sign:
            out[i] = out[i][:-1]
            for j in self.blockers[i]:
                out[j] = out[j][:-1]
        else:
            out[i] = out[i] + (sign,)
            for j in self.blockers[i]:
                out[j] = out[j] + (0,)
        return tuple(out)

    def of_word(self, word) -> tuple:
        piles = self.empty()
        for v, s in word:
            piles = self.push(piles, v, s)
        return piles

    @staticmethod
    def size(piles: tuple) -> int:
        return sum(1 for p in piles for x in p if x)

    @staticmethod
    def height(piles: tuple) -> int:
        return sum(x for p in piles for x in p)


def cayley_ball(g: SimplicialGraph, r: int) -> dict:
    """Breadth-first search from the identity keyed by heaps.

    Returns ``{heap: (distance, a shortest word)}`` for the radius-``r`` ball.
    """
    heap = Heap(g)
    letters = [(v, s) for v in g.vertices for s in (1, -1)]
    start = heap.empty()
    out = {start: (0, ())}
    front = [start]
    for d in range(1, r + 1):
        nxt = []
        for key in front:
            word = out[key][1]
            for v, s in letters:
                k2 = heap.push(key, v, s)
                if k2 not in out:
                    out[k2] = (d, word + ((v, s),))
                    nxt.append(k2)
        front = nxt
    return out


def bfs_to_kernel(g: SimplicialGraph, word) -> int:
    """Distance from the element spelled by ``word`` to the nearest height-0 element."""
    heap = Heap(g)
    start = heap.of_word(word)
    if Heap.height(start) == 0:
        return 0
    letters = [(v, s) for v in g.vertices for s in (1, -1)]
    seen = {start}
    front = [start]
    d = 0
    while True:
        d += 1
        nxt = []
        for key in front:
            for v, s in letters:
                k2 = heap.push(key, v, s)
                if k2 in seen:
                    continue
                if Heap.height(k2) == 0:
                    return d
                seen.add(k2)
                nxt.append(k2)
        front = nxt


def floyd_warshall(g: SimplicialGraph) -> dict:
    inf = float("inf")
    d = {(u, v): (0 if u == v else 1 if frozenset((u, v)) in g.edges else inf) for u in g.vertices for v in g.vertices}
    for k in g.vertices:
        for i in g.vertices:
            for j in g.vertices:
                if d[i, k] + d[k, j] < d[i, j]:
                    d[i, j] = d[i, k] + d[k, j]
    return d


def is_join_bruteforce(g: SimplicialGraph) -> bool:
    """Try every bipartition into two nonempty, fully connected sides."""
    verts = list(g.vertices)
    n = len(verts)
    for size in range(1, n // 2 + 1):
        for left in combinations(verts, size):
            right = [v for v in verts if v not in left]
            if all(frozenset((a, b)) in g.edges for a in left for b in right):
                return True
    return False
