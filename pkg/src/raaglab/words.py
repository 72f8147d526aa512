"""Words, normal forms and Cayley balls of a right-angled Artin group.

Letters are encoded internally as ``2 * vertex_index + (0 if positive else 1)``
so that integer order on codes is exactly the canonical letter order (vertex
order first, then ``+1 < -1``) and ``code ^ 1`` is the inverse letter.

A :class:`NormalForm` stores the lexicographically least reduced word of its
element.  Right multiplication by one letter keeps that invariant in a single
backward scan (see :func:`rmul_code`), so normal forms never need a global
re-sort.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .graph import SimplicialGraph

DEFAULT_LETTER_BUDGET = 10**6


class WordError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A search stopped at its node budget.

    ``completed`` is the last radius/layer that was fully processed.
    """

    def __init__(self, message: str, completed: int = -1, partial=None):
        super().__init__(message)
        self.completed = completed
        self.partial = partial


@dataclass(frozen=True)
class Letter:
    vertex: str
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise WordError(f"letter sign must be +1 or -1, got {self.sign!r}")

    def inverse(self) -> "Letter":
        return Letter(self.vertex, -self.sign)

    def __str__(self):
        return self.vertex if self.sign == 1 else f"{self.vertex}^-1"


class _Tables:
    """Per-graph lookup tables over letter codes."""

    __slots__ = ("graph", "ncodes", "comm", "vertex_of", "sign_of")

    def __init__(self, g: SimplicialGraph):
        n = len(g)
        self.graph = g
        self.ncodes = 2 * n
        adj = g._adj
        self.comm = tuple(
            tuple((y >> 1) in adj[x >> 1] for y in range(2 * n)) for x in range(2 * n)
        )
        self.vertex_of = tuple(g.vertices[c >> 1] for c in range(2 * n))
        self.sign_of = tuple(-1 if c & 1 else 1 for c in range(2 * n))


def tables(g: SimplicialGraph) -> _Tables:
    tab = g.__dict__.get("_word_tables")
    if tab is None:
        tab = _Tables(g)
        object.__setattr__(g, "_word_tables", tab)
    return tab


def encode(g: SimplicialGraph, letter: Letter) -> int:
    return 2 * g.index(letter.vertex) + (0 if letter.sign == 1 else 1)


def rmul_code(codes: tuple, x: int, cm: Sequence[bool]) -> tuple:
    """Normal form of ``codes * x`` where ``codes`` is already normal.

    ``cm[y]`` says whether letter ``y`` commutes with ``x``.  Scanning back
    over the trailing letters that commute with ``x``: an ``x^-1`` there
    cancels (deleting a letter keeps lex-normality); otherwise ``x`` is
    inserted before the first of those letters that is larger than it.
    """
    inv = x ^ 1
    i = len(codes) - 1
    pos = len(codes)
    while i >= 0:
        y = codes[i]
        if y == inv:
            return codes[:i] + codes[i + 1:]
        if not cm[y]:
            break
        if y > x:
            pos = i
        i -= 1
    return codes[:pos] + (x,) + codes[pos:]


def extends_normally(codes: Sequence[int], x: int, cm: Sequence[bool]) -> bool:
    """True when ``codes + (x,)`` is itself a reduced lex-least word."""
    inv = x ^ 1
    i = len(codes) - 1
    while i >= 0:
        y = codes[i]
        if y == inv:
            return False
        if not cm[y]:
            return True
        if y > x:
            return False
        i -= 1
    return True


def normalize_codes(tab: _Tables, codes: Iterable[int], start: tuple = ()) -> tuple:
    comm = tab.comm
    out = start
    for x in codes:
        out = rmul_code(out, x, comm[x])
    return out


class NormalForm:
    """Canonical geodesic representative of an element of A_Γ.

    Build these with :func:`normalize`; the constructor trusts its input.
    """

    __slots__ = ("graph", "codes")

    def __init__(self, graph: SimplicialGraph, codes: tuple):
        self.graph = graph
        self.codes = codes

    @property
    def letters(self) -> tuple:
        tab = tables(self.graph)
        return tuple(Letter(tab.vertex_of[c], tab.sign_of[c]) for c in self.codes)

    @property
    def length(self) -> int:
        return len(self.codes)

    @property
    def height(self) -> int:
        return len(self.codes) - 2 * sum(c & 1 for c in self.codes)

    def __len__(self):
        return len(self.codes)

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.codes == other.codes and self.graph == other.graph

    def __hash__(self):
        return hash(self.codes)

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        return multiply(self, other)

    def __invert__(self) -> "NormalForm":
        return invert(self)

    def __pow__(self, k: int) -> "NormalForm":
        base = self if k >= 0 else invert(self)
        out = identity(self.graph)
        for _ in range(abs(k)):
            out = multiply(out, base)
        return out

    def __str__(self):
        return format_word(self.graph, self.codes)

    def __repr__(self):
        return f"NormalForm({str(self)!r})"


@dataclass(frozen=True)
class CyclicSplit:
    conjugator: NormalForm
    core: NormalForm


_TOKEN = re.compile(r"^([^\s^]+)(?:\^([+-]?\d+))?$")


def parse_word(g: SimplicialGraph, text: str, budget: int = DEFAULT_LETTER_BUDGET) -> list:
    """Parse ``"a b^-1 c^3"`` into a list of :class:`Letter`."""
    out = []
    total = 0
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise WordError(f"malformed token {tok!r}")
        name, exp = m.group(1), m.group(2)
        if name not in g._index:
            raise WordError(f"unknown vertex {name!r}")
        k = 1 if exp is None else int(exp)
        if k == 0:
            raise WordError(f"malformed exponent in {tok!r}: exponent must be nonzero")
        total += abs(k)
        if total > budget:
            raise WordError(f"word expands past the letter budget of {budget}")
        out.extend([Letter(name, 1 if k > 0 else -1)] * abs(k))
    return out


def format_word(g: SimplicialGraph, codes: Sequence[int]) -> str:
    """Serialize codes in the word grammar, compressing runs into exponents."""
    tab = tables(g)
    parts = []
    i = 0
    while i < len(codes):
        j = i
        while j < len(codes) and codes[j] == codes[i]:
            j += 1
        k = (j - i) * tab.sign_of[codes[i]]
        v = tab.vertex_of[codes[i]]
        parts.append(v if k == 1 else f"{v}^{k}")
        i = j
    return " ".join(parts)


def _to_codes(g: SimplicialGraph, w) -> list:
    if isinstance(w, str):
        w = parse_word(g, w)
    if isinstance(w, NormalForm):
        return list(w.codes)
    return [encode(g, l) for l in w]


def normalize(g: SimplicialGraph, w: Union[str, Sequence[Letter], NormalForm]) -> NormalForm:
    """Canonical reduced representative of the element spelled by ``w``."""
    tab = tables(g)
    return NormalForm(g, normalize_codes(tab, _to_codes(g, w)))


def identity(g: SimplicialGraph) -> NormalForm:
    return NormalForm(g, ())


def from_codes(g: SimplicialGraph, codes: Iterable[int]) -> NormalForm:
    return NormalForm(g, normalize_codes(tables(g), codes))


def _check_same(x: NormalForm, y: NormalForm) -> None:
    if x.graph is not y.graph and x.graph != y.graph:
        raise WordError("elements belong to different groups")


def multiply(x: NormalForm, y: NormalForm) -> NormalForm:
    _check_same(x, y)
    return NormalForm(x.graph, normalize_codes(tables(x.graph), y.codes, x.codes))


def inverse_codes(codes: Sequence[int]) -> list:
    return [c ^ 1 for c in reversed(codes)]


def invert(x: NormalForm) -> NormalForm:
    return NormalForm(x.graph, normalize_codes(tables(x.graph), inverse_codes(x.codes)))


def geodesic_length(x: NormalForm) -> int:
    return len(x.codes)


def phi(x) -> int:
    """Height homomorphism: sum of letter signs (accepts normal forms or letter lists)."""
    if isinstance(x, NormalForm):
        return x.height
    return sum(l.sign for l in x)


def support(x: NormalForm) -> set:
    tab = tables(x.graph)
    return {tab.vertex_of[c] for c in x.codes}


def front_letters(tab: _Tables, codes: Sequence[int]) -> set:
    """Letters that can be shuffled to the front of the word."""
    out = set()
    for i, c in enumerate(codes):
        cm = tab.comm[c]
        if all(cm[codes[j]] for j in range(i)):
            out.add(c)
    return out


def back_letters(tab: _Tables, codes: Sequence[int]) -> set:
    out = set()
    n = len(codes)
    for i, c in enumerate(codes):
        cm = tab.comm[c]
        if all(cm[codes[j]] for j in range(i + 1, n)):
            out.add(c)
    return out


def is_cyclically_reduced(x: NormalForm) -> bool:
    tab = tables(x.graph)
    back = back_letters(tab, x.codes)
    return not any(c ^ 1 in back for c in front_letters(tab, x.codes))


def cyclic_reduce(x: NormalForm) -> CyclicSplit:
    """Peel conjugating letters until the core is cyclically reduced.

    Each round takes the least letter ``l`` that shuffles to the front while
    ``l^-1`` shuffles to the back, so ``x = l x' l^-1``.
    """
    g = x.graph
    tab = tables(g)
    core = x.codes
    conj = []
    while True:
        back = back_letters(tab, core)
        peel = [c for c in front_letters(tab, core) if c ^ 1 in back]
        if not peel:
            break
        l = min(peel)
        conj.append(l)
        core = normalize_codes(tab, (l ^ 1,) + core + (l,))
    return CyclicSplit(NormalForm(g, normalize_codes(tab, conj)), NormalForm(g, core))


def iter_sphere_codes(tab: _Tables, k: int, height: Optional[int] = None) -> Iterator[tuple]:
    """Normal forms of length exactly ``k``, in increasing lex order.

    Depth-first over the tree of normal forms: every prefix of a normal form
    is normal, so each element is produced exactly once without a visited set.
    With ``height`` set, only elements of that height are produced and
    prefixes that cannot reach it are pruned.
    """
    if k == 0:
        if not height:
            yield ()
        return
    if height is not None and (abs(height) > k or (k - height) % 2):
        return
    n2 = tab.ncodes
    comm = tab.comm
    w = []
    hs = [0]  # height of each prefix of w
    nxt = [0]
    while nxt:
        x = nxt[-1]
        if x == n2:
            nxt.pop()
            if w:
                w.pop()
                hs.pop()
            continue
        nxt[-1] = x + 1
        hx = hs[-1] + (-1 if x & 1 else 1)
        if height is not None and abs(height - hx) > k - len(w) - 1:
            continue
        if extends_normally(w, x, comm[x]):
            if len(w) + 1 == k:
                yield tuple(w) + (x,)
            else:
                w.append(x)
                hs.append(hx)
                nxt.append(0)


def iter_ball(g: SimplicialGraph, r: int) -> Iterator[NormalForm]:
    """All elements with geodesic length <= r, by layer, lex order within a layer."""
    tab = tables(g)
    for k in range(r + 1):
        for codes in iter_sphere_codes(tab, k):
            yield NormalForm(g, codes)


def enumerate_ball(
    g: SimplicialGraph,
    r: int,
    visitor: Optional[Callable[[NormalForm], None]] = None,
    budget: Optional[int] = None,
) -> int:
    """Visit every element of the radius-``r`` Cayley ball once; return the count.

    Raises :class:`BudgetExceeded` with the last fully visited layer when more
    than ``budget`` elements would be visited.
    """
    if r < 0:
        raise WordError("radius must be nonnegative")
    tab = tables(g)
    count = 0
    for k in range(r + 1):
        for codes in iter_sphere_codes(tab, k):
            count += 1
            if budget is not None and count > budget:
                raise BudgetExceeded(f"ball enumeration exceeded {budget} elements", completed=k - 1)
            if visitor is not None:
                visitor(NormalForm(g, codes))
    return count
