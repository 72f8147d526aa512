"""The Bestvina-Brady kernel H of the height map, its generators and rewriters.

A T-letter ``(s, t, k)`` stands for ``(s t^-1)^k`` with ``s`` before ``t`` in
vertex order; the reversed pair is stored as the same letter with the sign
flipped.  Internally a T-letter is the code ``2 * edge_index + (0|1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import (
    GraphError,
    JoinDecomposition,
    SimplicialGraph,
    diameter,
    is_connected,
    is_tree,
    shortest_path,
    validate_join,
)
from .words import (
    NormalForm,
    WordError,
    rmul_code,
    tables,
)

EXACT = "exact"
LOWER_BOUND = "lower_bound"
DEFAULT_NODE_BUDGET = 5 * 10**6


class NotAMember(ValueError):
    pass


@dataclass(frozen=True)
class TLetter:
    first: str
    second: str
    sign: int

    def __str__(self):
        return f"{self.first}*{self.second}" + ("" if self.sign == 1 else "^-1")


class _BBTables:
    __slots__ = ("edges", "edge_index", "expand", "diameter", "pair_steps", "steps_by_index", "is_tree")

    def __init__(self, g: SimplicialGraph):
        if not is_connected(g):
            raise GraphError(
                "graph is disconnected: the kernel is finitely generated iff the graph is connected"
            )
        self.edges = g.sorted_edges()
        self.edge_index = {}
        for k, (s, t) in enumerate(self.edges):
            self.edge_index[(s, t)] = 2 * k
            self.edge_index[(t, s)] = 2 * k + 1
        # T-code -> the two S-letter codes it expands to
        expand = []
        for s, t in self.edges:
            si, ti = 2 * g.index(s), 2 * g.index(t)
            expand.append((si, ti + 1))  # s t^-1
            expand.append((ti, si + 1))  # t s^-1
        self.expand = tuple(expand)
        self.diameter = diameter(g)
        self.is_tree = is_tree(g)
        self.pair_steps = {}
        for a in g.vertices:
            for b in g.vertices:
                path = shortest_path(g, a, b)
                self.pair_steps[(a, b)] = tuple(
                    self.edge_index[(u, v)] for u, v in zip(path, path[1:])
                )
        # same table keyed by vertex indices, for the hot loop in rewrite_general
        self.steps_by_index = tuple(
            tuple(self.pair_steps[(a, b)] for b in g.vertices) for a in g.vertices
        )


def bb_tables(g: SimplicialGraph) -> _BBTables:
    tab = g.__dict__.get("_bb_tables")
    if tab is None:
        tab = _BBTables(g)
        object.__setattr__(g, "_bb_tables", tab)
    return tab


class TWord:
    """A word in the T-generators.  ``codes`` are internal T-letter codes."""

    __slots__ = ("graph", "codes")

    def __init__(self, graph: SimplicialGraph, codes: Sequence[int]):
        self.graph = graph
        self.codes = tuple(codes)

    @classmethod
    def from_letters(cls, g: SimplicialGraph, letters: Iterable[TLetter]) -> "TWord":
        tab = bb_tables(g)
        codes = []
        for l in letters:
            try:
                c = tab.edge_index[(l.first, l.second)]
            except KeyError:
                raise WordError(f"{l.first}{l.second}^-1 is not a T-generator") from None
            codes.append(c if l.sign == 1 else c ^ 1)
        return cls(g, codes)

    @property
    def letters(self) -> tuple:
        edges = bb_tables(self.graph).edges
        return tuple(TLetter(*edges[c >> 1], -1 if c & 1 else 1) for c in self.codes)

    def __len__(self):
        return len(self.codes)

    def __add__(self, other: "TWord") -> "TWord":
        return TWord(self.graph, self.codes + other.codes)

    def __eq__(self, other):
        if not isinstance(other, TWord):
            return NotImplemented
        return self.codes == other.codes and self.graph == other.graph

    def __hash__(self):
        return hash(self.codes)

    def inverse(self) -> "TWord":
        return TWord(self.graph, [c ^ 1 for c in reversed(self.codes)])

    def __str__(self):
        return format_t_word(self.graph, self.codes)

    def __repr__(self):
        return f"TWord({str(self)!r})"


def format_t_word(g: SimplicialGraph, codes: Sequence[int]) -> str:
    edges = bb_tables(g).edges
    parts = []
    i = 0
    while i < len(codes):
        j = i
        while j < len(codes) and codes[j] == codes[i]:
            j += 1
        s, t = edges[codes[i] >> 1]
        k = (j - i) * (-1 if codes[i] & 1 else 1)
        parts.append(f"{s}*{t}" if k == 1 else f"{s}*{t}^{k}")
        i = j
    return " ".join(parts)


_TTOKEN = re.compile(r"^([^\s*^]+)\*([^\s*^]+)(?:\^([+-]?\d+))?$")


def parse_t_word(g: SimplicialGraph, text: str) -> TWord:
    """Parse ``"a*b^2 c*b^-1"`` where ``s*t^k`` means ``(s t^-1)^k``."""
    tab = bb_tables(g)
    codes = []
    for tok in text.split():
        m = _TTOKEN.match(tok)
        if not m:
            raise WordError(f"malformed T-token {tok!r}")
        s, t, exp = m.group(1), m.group(2), m.group(3)
        k = 1 if exp is None else int(exp)
        if k == 0:
            raise WordError(f"malformed exponent in {tok!r}")
        c = tab.edge_index.get((s, t))
        if c is None:
            raise WordError(f"{s}{t}^-1 is not a T-generator")
        codes.extend([c if k > 0 else c ^ 1] * abs(k))
    return TWord(g, codes)


def t_generators(g: SimplicialGraph) -> list:
    """One positive T-letter per edge, ``s`` before ``t``, in canonical order."""
    return [TLetter(s, t, 1) for s, t in bb_tables(g).edges]


def is_member(x: NormalForm) -> bool:
    return x.height == 0


def _require_member(h: NormalForm) -> None:
    if h.height != 0:
        raise NotAMember(f"not a member of the kernel: phi = {h.height}")


def eval_t_codes(g: SimplicialGraph, codes: Sequence[int], start: tuple = ()) -> tuple:
    """Normal form of ``start`` times the product of T-letters.

    A run of ``k`` equal letters ``(x y)^k`` is applied as ``x^k`` then
    ``y^k`` (x and y commute).  Each power is one backward scan that behaves
    like ``k`` calls of :func:`rmul_code`: matching inverses are cancelled as
    they are met and the leftover copies go in at the insertion point.
    """
    comm = tables(g).comm
    expand = bb_tables(g).expand
    out = list(start)
    n = len(codes)
    j = 0
    while j < n:
        c = codes[j]
        run = j + 1
        while run < n and codes[run] == c:
            run += 1
        count = run - j
        j = run
        for x in expand[c]:
            cm = comm[x]
            inv = x ^ 1
            k = count
            i = len(out) - 1
            pos = len(out)
            while i >= 0:
                y = out[i]
                if y == inv:
                    del out[i]
                    pos -= 1
                    k -= 1
                    if not k:
                        break
                elif not cm[y]:
                    break
                elif y > x:
                    pos = i
                i -= 1
            if k:
                out[pos:pos] = [x] * k
    return tuple(out)


def eval_t_word(w: TWord) -> NormalForm:
    return NormalForm(w.graph, eval_t_codes(w.graph, w.codes))


def _pair_codes(tab: _BBTables, a: str, b: str, m: int) -> list:
    if m == 0 or a == b:
        return []
    out = []
    flip = 0 if m > 0 else 1
    for c in tab.pair_steps[(a, b)]:
        out.extend([c ^ flip] * abs(m))
    return out


def rewrite_pair(g: SimplicialGraph, a: str, b: str, m: int) -> TWord:
    """T-word for ``a^m b^-m`` built along a graph geodesic from ``a`` to ``b``.

    Each step ``s_{i-1}, s_i`` contributes ``(s_{i-1} s_i^-1)^m``, so the
    length is ``dist(a, b) * |m|``.
    """
    g.index(a)
    g.index(b)
    return TWord(g, _pair_codes(bb_tables(g), a, b, m))


def syllables(g: SimplicialGraph, codes: Sequence[int]) -> list:
    """Merge runs of equal-vertex letters into ``(vertex, exponent)`` pairs."""
    tab = tables(g)
    out = []
    for c in codes:
        v, s = tab.vertex_of[c], tab.sign_of[c]
        if out and out[-1][0] == v:
            out[-1][1] += s
        else:
            out.append([v, s])
    return [(v, k) for v, k in out if k != 0]


def rewrite_general(h: NormalForm) -> TWord:
    """Telescoping rewrite of a kernel element into T-letters.

    With ``h = s_1^m_1 ... s_k^m_k`` and partial sums ``M_i``, emit the blocks
    ``s_i^M_i s_{i+1}^-M_i`` for ``i < k``, each spelled as in
    :func:`rewrite_pair`.  Length is at most ``diameter * |h|^2``.
    """
    _require_member(h)
    g = h.graph
    steps = bb_tables(g).steps_by_index
    out = []
    total = 0
    prev = -1  # vertex index of the current syllable
    for c in h.codes:
        v = c >> 1
        if v != prev:
            if total and prev >= 0:
                flip = 0 if total > 0 else 1
                m = abs(total)
                for t in steps[prev][v]:
                    out.extend([t ^ flip] * m)
            prev = v
        total += -1 if c & 1 else 1
    return TWord(g, out)


def rewrite_join(h: NormalForm, j: JoinDecomposition) -> TWord:
    """Linear-length rewrite when the graph is a join ``left * right``.

    With ``a``, ``b`` the least vertices of the two sides and ``m`` the height
    of the left part of ``h``, emit ``(a_i b^-1)^m_i`` per left syllable, then
    ``(b a^-1)^m``, then ``(a b_j^-1)^-n_j`` per right syllable.
    """
    _require_member(h)
    g = h.graph
    validate_join(g, j)
    tab = bb_tables(g)
    t = tables(g)
    a = min(j.left, key=g.index)
    b = min(j.right, key=g.index)
    left_codes = [c for c in h.codes if t.vertex_of[c] in j.left]
    right_codes = [c for c in h.codes if t.vertex_of[c] in j.right]
    out = []
    m = 0
    for ai, mi in syllables(g, left_codes):
        out.extend(_letter_power(tab, ai, b, mi))
        m += mi
    out.extend(_letter_power(tab, b, a, m))
    for bj, nj in syllables(g, right_codes):
        out.extend(_letter_power(tab, a, bj, -nj))
    return TWord(g, out)


def _letter_power(tab: _BBTables, s: str, t: str, k: int) -> list:
    if k == 0:
        return []
    c = tab.edge_index[(s, t)]
    return [c if k > 0 else c ^ 1] * abs(k)


def free_reduce(codes: Iterable[int]) -> list:
    out = []
    for c in codes:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return out


def _neighbors_t(g: SimplicialGraph):
    comm = tables(g).comm
    pairs = [(x, y, comm[x], comm[y]) for x, y in bb_tables(g).expand]

    def step(codes):
        for x, y, cx, cy in pairs:
            yield rmul_code(rmul_code(codes, x, cx), y, cy)

    return step


def t_length_bfs(h: NormalForm, budget: int = DEFAULT_NODE_BUDGET) -> tuple:
    """Exact ``|h|_T`` by bidirectional BFS in the Cayley graph of (H, T).

    Returns ``(value, status)``.  On budget exhaustion the value is the
    strongest lower bound implied by the fully explored radii.
    """
    _require_member(h)
    if not h.codes:
        return 0, EXACT
    step = _neighbors_t(h.graph)
    fwd = {(): 0}
    bwd = {h.codes: 0}
    ffront, bfront = [()], [h.codes]
    df = db = 0
    while True:
        if len(fwd) + len(bwd) > budget:
            return df + db + 1, LOWER_BOUND
        # expand the smaller side one full layer
        if len(ffront) <= len(bfront):
            seen, other, front = fwd, bwd, ffront
        else:
            seen, other, front = bwd, fwd, bfront
        nxt = []
        best = None
        d = seen[front[0]] + 1
        for node in front:
            for nb in step(node):
                if nb in seen:
                    continue
                seen[nb] = d
                nxt.append(nb)
                hit = other.get(nb)
                if hit is not None and (best is None or d + hit < best):
                    best = d + hit
        if best is not None:
            return best, EXACT
        if seen is fwd:
            ffront, df = nxt, d
        else:
            bfront, db = nxt, d


def t_length(h: NormalForm, budget: int = DEFAULT_NODE_BUDGET, method: str = "auto") -> tuple:
    """``(|h|_T, status)``.

    On trees the positive T-letters are a free basis of H, so the freely
    reduced form of any T-word for ``h`` is its unique geodesic; ``auto``
    uses that there and bidirectional BFS elsewhere.
    """
    _require_member(h)
    g = h.graph
    if method == "auto":
        method = "free" if bb_tables(g).is_tree else "bfs"
    if method == "free":
        if not bb_tables(g).is_tree:
            raise GraphError("free-basis T-length needs a tree")
        return len(free_reduce(rewrite_general(h).codes)), EXACT
    if method == "bfs":
        return t_length_bfs(h, budget)
    raise ValueError(f"unknown method {method!r}")


def t_lengths(g: SimplicialGraph, targets: Iterable[tuple], budget: int = DEFAULT_NODE_BUDGET) -> dict:
    """``|h|_T`` for many kernel elements given as normal-form codes.

    Trees use free reduction; other graphs run one BFS from the identity
    until every target is reached.  Unreached targets on budget exhaustion get
    ``(explored radius + 1, lower_bound)``.
    """
    targets = set(targets)
    if bb_tables(g).is_tree:
        out = {}
        for codes in targets:
            out[codes] = (len(free_reduce(rewrite_general(NormalForm(g, codes)).codes)), EXACT)
        return out
    step = _neighbors_t(g)
    out = {}
    if () in targets:
        out[()] = (0, EXACT)
    seen = {()}
    front = [()]
    d = 0
    while len(out) < len(targets):
        d += 1
        nxt = []
        for node in front:
            for nb in step(node):
                if nb not in seen:
                    seen.add(nb)
                    nxt.append(nb)
                    if nb in targets:
                        out[nb] = (d, EXACT)
        front = nxt
        if len(seen) > budget and len(out) < len(targets):
            for codes in targets - out.keys():
                out[codes] = (d + 1, LOWER_BOUND)
            break
    return out


def find_relation(g: SimplicialGraph, max_len: int) -> Optional[TWord]:
    """Search for a nonempty freely reduced T-word of length <= max_len equal to 1.

    Returns the first one found (None when there is none).  Evaluation is
    incremental along the depth-first search.
    """
    tab = bb_tables(g)
    ngens = len(tab.edges)
    comm = tables(g).comm
    expand = tab.expand
    stack = [()]
    w = []
    nxt = [0]
    n2 = 2 * ngens
    while nxt:
        c = nxt[-1]
        if c == n2 or len(w) == max_len:
            nxt.pop()
            if w:
                w.pop()
                stack.pop()
            continue
        nxt[-1] = c + 1
        if w and w[-1] == c ^ 1:
            continue
        x, y = expand[c]
        val = rmul_code(rmul_code(stack[-1], x, comm[x]), y, comm[y])
        if not val:
            return TWord(g, w + [c])
        w.append(c)
        stack.append(val)
        nxt.append(0)
    return None
