"""Finite-radius measurements: distortion, relative and geodesic divergence.

All searches run on the Cayley graph of A_Γ with respect to the vertex
generators.  Every search takes a node budget and reports ``exact`` or
``lower_bound``; tables never truncate silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from .bb import (
    DEFAULT_NODE_BUDGET,
    EXACT,
    LOWER_BOUND,
    bb_tables,
    free_reduce,
    rewrite_general,
    t_lengths,
)
from .graph import SimplicialGraph, maximal_join_subgraph
from .words import (
    BudgetExceeded,
    NormalForm,
    WordError,
    inverse_codes,
    is_cyclically_reduced,
    iter_sphere_codes,
    normalize,
    normalize_codes,
    rmul_code,
    tables,
)

INF = math.inf


@dataclass
class DistortionRecord:
    r: int
    ball_size: int
    kernel_count: int
    dist_value: int
    witness: NormalForm
    status: str

    def row(self) -> dict:
        return {
            "r": self.r,
            "ball_size": self.ball_size,
            "kernel_count": self.kernel_count,
            "dist_value": self.dist_value,
            "witness": str(self.witness),
            "status": self.status,
        }


@dataclass
class DivergenceRecord:
    rho: Fraction
    n: int
    r: int
    value: Union[int, float]
    pair: tuple
    status: str

    def row(self) -> dict:
        return {
            "rho": str(self.rho),
            "n": self.n,
            "r": self.r,
            "value": _fmt_value(self.value),
            "pair": f"{self.pair[0]};{self.pair[1]}",
            "status": self.status,
        }


@dataclass
class GeodesicDivergenceRecord:
    g: NormalForm
    r: int
    value: Union[int, float]
    status: str = EXACT

    def row(self) -> dict:
        return {"g": str(self.g), "r": self.r, "value": _fmt_value(self.value), "status": self.status}


def _fmt_value(v) -> str:
    return "inf" if v == INF else str(v)


def distance_to_kernel(x: NormalForm) -> int:
    """Distance from ``x`` to H: adjacent vertices differ in height by one,
    and walking down a reduced word reaches height zero in ``|height|`` steps."""
    return abs(x.height)


def _astar(
    g: SimplicialGraph,
    source: tuple,
    target: tuple,
    allowed: Callable,
    budget: int,
    report_size: bool = False,
) -> tuple:
    """Shortest path from ``source`` to ``target`` through allowed vertices.

    ``allowed(codes, height)`` filters vertices.  The heuristic is the exact
    Cayley distance to the target, kept per node as the normal form of
    ``target^-1 v`` and advanced with the same right multiplication as ``v``.
    Returns ``(value, status)``, plus the number of stored nodes when
    ``report_size`` is set; ``INF`` when the allowed component is exhausted.
    """
    if source == target:
        return (0, EXACT, 1) if report_size else (0, EXACT)
    tab = tables(g)
    comm, sign_of, ncodes = tab.comm, tab.sign_of, tab.ncodes
    tinv = normalize_codes(tab, inverse_codes(target))
    u0 = normalize_codes(tab, source, tinv)
    h0 = len(source) - 2 * sum(c & 1 for c in source)
    best = {source: 0}
    f = len(u0)
    bucket = [(0, source, u0, h0)]
    later = []  # entries with f + 2; f only grows by 0 or 2 along an edge
    while bucket or later:
        if not bucket:
            bucket, later = later, []
            f += 2
        dist, v, u, h = bucket.pop()
        if dist > best[v]:
            continue
        if v == target:
            return (dist, EXACT, len(best)) if report_size else (dist, EXACT)
        nd = dist + 1
        for x in range(ncodes):
            cm = comm[x]
            nv = rmul_code(v, x, cm)
            nh = h + sign_of[x]
            if not allowed(nv, nh):
                continue
            old = best.get(nv)
            if old is not None and old <= nd:
                continue
            best[nv] = nd
            nu = rmul_code(u, x, cm)
            if nd + len(nu) == f:
                bucket.append((nd, nv, nu, nh))
            else:
                later.append((nd, nv, nu, nh))
        if len(best) > budget:
            return (f, LOWER_BOUND, len(best)) if report_size else (f, LOWER_BOUND)
    return (INF, EXACT, len(best)) if report_size else (INF, EXACT)


def complement_distance(
    x: NormalForm, y: NormalForm, k: int, budget: int = DEFAULT_NODE_BUDGET
) -> tuple:
    """Length of a shortest path from ``x`` to ``y`` through ``{|height| >= k}``.

    For ``k >= 1`` the region splits into the parts above and below H (no
    edge changes height by more than one), so opposite-sign endpoints are at
    infinite distance without any search.
    """
    if abs(x.height) < k or abs(y.height) < k:
        raise ValueError(f"endpoints must satisfy |phi| >= {k}")
    if x.codes == y.codes:
        return 0, EXACT
    if k >= 1 and (x.height > 0) != (y.height > 0):
        return INF, EXACT
    if k <= 0:
        allowed = lambda codes, h: True
    elif x.height > 0:
        allowed = lambda codes, h: h >= k
    else:
        allowed = lambda codes, h: h <= -k
    return _astar(x.graph, x.codes, y.codes, allowed, budget)


def sheet_path(x: NormalForm, w) -> list:
    """Vertices of the walk from ``x`` spelling the T-word ``w`` two letters at a time.

    Above H each T-letter goes up first, below H down first, so the walk
    never gets closer to H than its endpoints.
    """
    g = x.graph
    tab = tables(g)
    expand = bb_tables(g).expand
    out = [x.codes]
    v = x.codes
    for c in w.codes:
        a, b = expand[c]  # a positive, b negative
        first, second = (a, b) if x.height >= 0 else (b, a)
        v = rmul_code(v, first, tab.comm[first])
        out.append(v)
        v = rmul_code(v, second, tab.comm[second])
        out.append(v)
    return [NormalForm(g, c) for c in out]


def witness_pair(g: SimplicialGraph, r: int) -> tuple:
    """``(x, y, h, t)`` with ``x = h^-r t^r`` and ``y = h^r t^r``.

    ``h = g_J v^-|J|`` where ``g_J`` is the product of a maximal join's
    vertices in vertex order and ``v`` a vertex outside it; ``t`` is the
    least vertex.
    """
    join, v = maximal_join_subgraph(g)
    gj = " ".join(u for u in g.vertices if u in join)
    h = normalize(g, f"{gj} {v}^-{len(join)}")
    t = normalize(g, g.vertices[0])
    tr = t ** r
    return (h ** -r) * tr, (h ** r) * tr, h, t


def _ceil_rho(rho: Fraction, r: int) -> int:
    return math.ceil(Fraction(rho) * r)


def relative_divergence(
    g: SimplicialGraph,
    rho,
    n: int,
    r: int,
    budget: int = DEFAULT_NODE_BUDGET,
) -> DivergenceRecord:
    """Exact ``delta^n_rho(r)`` at integer radius ``r``.

    H acts transitively on the sheet ``{height = r}`` by left multiplication
    and preserves both the Cayley metric and the complement region, so the
    first point can be pinned at ``t^r``; the negative sheet is the mirror
    image under the automorphism inverting every generator.  The second point
    ranges over ``t^r g`` with ``g`` in H and ``|g| <= n r``.  Candidates are
    visited by decreasing upper bound (twice the length of a T-word for
    ``g``) and the scan stops once no remaining bound can beat the best value.
    """
    rho = Fraction(rho)
    if not (0 < rho <= 1):
        raise ValueError("rho must lie in (0, 1]")
    if n < 2 or r < 1:
        raise ValueError("need n >= 2 and r >= 1")
    k = _ceil_rho(rho, r)
    tab = tables(g)
    bb_tables(g)
    t = normalize(g, g.vertices[0])
    x1 = t ** r
    cands = []
    for length in range(0, n * r + 1, 2):
        for codes in iter_sphere_codes(tab, length, 0):
            cands.append(codes)
            if len(cands) > budget:
                raise BudgetExceeded(
                    f"more than {budget} candidate points",
                    partial=DivergenceRecord(rho, n, r, 0, (x1, x1), LOWER_BOUND),
                )
    scored = []
    for codes in cands:
        ub = 2 * len(free_reduce(rewrite_general(NormalForm(g, codes)).codes))
        scored.append((-ub, codes))
    scored.sort()
    best, best_pair = 0, (x1, x1)
    status = EXACT
    allowed = lambda codes, h: h >= k
    remaining = budget
    for neg_ub, codes in scored:
        if -neg_ub <= best:
            break
        if remaining <= 0:
            # unexamined candidates may still beat ``best``
            status = LOWER_BOUND
            break
        x2 = NormalForm(g, normalize_codes(tab, codes, x1.codes))
        value, st, used = _astar(g, x1.codes, x2.codes, allowed, remaining, report_size=True)
        remaining -= used
        if st == LOWER_BOUND:
            status = LOWER_BOUND
        if value > best:
            best, best_pair = value, (x1, x2)
    return DivergenceRecord(rho, n, r, best, best_pair, status)


def axis_point(period: NormalForm, j: int) -> NormalForm:
    """The vertex at parameter ``j`` on the bi-infinite path ``... p p p ...``."""
    g = period.graph
    word = period.codes if j >= 0 else tuple(inverse_codes(period.codes))
    m = abs(j)
    reps, rest = divmod(m, len(word))
    return NormalForm(g, normalize_codes(tables(g), word * reps + word[:rest]))


def geodesic_divergence(
    g: SimplicialGraph, period: NormalForm, r: int, budget: int = DEFAULT_NODE_BUDGET
) -> GeodesicDivergenceRecord:
    """Shortest path from ``alpha(-r)`` to ``alpha(r)`` avoiding the open ``r``-ball at 1."""
    if not period.codes:
        raise WordError("period must be nonempty")
    if not is_cyclically_reduced(period):
        raise WordError("period must be cyclically reduced")
    for j in range(-r, r + 1):
        if len(axis_point(period, j).codes) != abs(j):
            raise WordError(f"axis is not geodesic: |alpha({j})| != {abs(j)}")
    a, b = axis_point(period, -r), axis_point(period, r)
    if len(normalize_codes(tables(g), b.codes, tuple(inverse_codes(a.codes)))) != 2 * r:
        raise WordError("axis is not geodesic between alpha(-r) and alpha(r)")
    value, status = _astar(g, a.codes, b.codes, lambda codes, h: len(codes) >= r, budget)
    return GeodesicDivergenceRecord(period, r, value, status)


def distortion_table(g: SimplicialGraph, r_max: int, budget: int = DEFAULT_NODE_BUDGET) -> list:
    """One :class:`DistortionRecord` per radius ``0..r_max``.

    Raises :class:`BudgetExceeded` carrying the completed prefix of the table
    if the ball grows past ``budget`` elements.
    """
    tab = tables(g)
    bb_tables(g)
    members = []
    layers = []
    total = 0
    for k in range(r_max + 1):
        layer_members = []
        size = 0
        for codes in iter_sphere_codes(tab, k):
            size += 1
            if len(codes) - 2 * sum(c & 1 for c in codes) == 0:
                layer_members.append(codes)
        total += size
        if total > budget:
            partial = _assemble(g, layers, members, budget)
            raise BudgetExceeded(f"ball of radius {k} exceeds {budget} elements", completed=k - 1, partial=partial)
        layers.append((size, len(layer_members)))
        members.append(layer_members)
    return _assemble(g, layers, members, budget)


def _assemble(g, layers, members, budget) -> list:
    lengths = t_lengths(g, (c for layer in members for c in layer), budget)
    records = []
    ball = kern = 0
    best, witness, status = -1, (), EXACT
    for r, ((size, nmem), layer) in enumerate(zip(layers, members)):
        ball += size
        kern += nmem
        for codes in layer:
            value, st = lengths[codes]
            if st == LOWER_BOUND:
                status = LOWER_BOUND
            if value > best:
                best, witness = value, codes
        records.append(DistortionRecord(r, ball, kern, max(best, 0), NormalForm(g, witness), status))
    return records


def fit_growth(table: Sequence, value: str = "dist_value") -> tuple:
    """Least-squares slope of log(value) against log(r) over exact, positive entries.

    Accepts records or ``(r, value)`` pairs.  Advisory only.
    """
    pts = []
    for rec in table:
        if isinstance(rec, tuple):
            r, v, st = rec[0], rec[1], EXACT
        else:
            r, v, st = rec.r, getattr(rec, value), rec.status
        if st == EXACT and r > 0 and v > 0 and v != INF:
            pts.append((r, v))
    if len(pts) < 3:
        raise ValueError("need at least 3 exact positive entries")
    lx = np.log([p[0] for p in pts])
    ly = np.log([p[1] for p in pts])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    return float(slope), {"intercept": float(intercept), "residuals": resid.tolist(), "points": len(pts)}
