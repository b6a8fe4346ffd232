"""
Brute-force oracle for A_q(n, 2k; k) on desk-scale parameters.

All k-subspaces are enumerated by RREF pattern and turned into point
bitmasks; two subspaces are compatible iff their masks are disjoint. The
search is a branch and bound over uncovered points: pick the uncovered point
with the fewest live candidates, then either cover it with one of them or
declare it a hole. A branch dies once the points still coverable cannot lift
the partial spread above the incumbent.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .constructions import SubspaceCode
from .errors import ParameterError, TooLarge
from .finite_field import FieldCtx, field_of_order
from .subspace import Subspace, all_points, enumerate_points, gaussian_binomial, num_points

DEFAULT_ENUMERATION_CAP = 200_000


def enumerate_k_subspaces(q: int, n: int, k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Subspace]:
    """All of G_q(n, k) in deterministic order: pivot sets lexicographically,
    then free cells in lexicographic order."""
    if not (0 <= k <= n):
        raise ParameterError(f"need 0 <= k <= n, got k={k}, n={n}")
    total = gaussian_binomial(n, k, q)
    if total > cap:
        raise TooLarge(f"G_{q}({n},{k}) has {total} members, cap is {cap}")
    ctx = field_of_order(q)
    return list(_rref_patterns(ctx, n, k))


def _rref_patterns(ctx: FieldCtx, n: int, k: int):
    for pivots in itertools.combinations(range(n), k):
        pset = set(pivots)
        cells = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pset]
        for values in itertools.product(range(ctx.q), repeat=len(cells)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(cells, values):
                rows[i][j] = v
            yield Subspace(ctx, n, tuple(tuple(r) for r in rows))


@dataclass
class CompatibilityGraph:
    vertices: list[Subspace]
    masks: list[int]
    adjacency: list[int]
    n_points: int

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()


def compatibility_graph(q: int, n: int, k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> CompatibilityGraph:
    subs = enumerate_k_subspaces(q, n, k, cap)
    index = {pt: i for i, pt in enumerate(all_points(field_of_order(q), n))}
    masks = []
    for U in subs:
        m = 0
        for pt in enumerate_points(U):
            m |= 1 << index[pt]
        masks.append(m)
    adj = [0] * len(subs)
    for a in range(len(subs)):
        ma = masks[a]
        for b in range(a + 1, len(subs)):
            if not ma & masks[b]:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    # vertices sorted by descending degree, then enumeration order
    order = sorted(range(len(subs)), key=lambda v: (-adj[v].bit_count(), v))
    if order != list(range(len(subs))):
        pos = {v: i for i, v in enumerate(order)}
        subs = [subs[v] for v in order]
        masks = [masks[v] for v in order]
        adj = [_remap(adj[v], pos) for v in order]
    return CompatibilityGraph(subs, masks, adj, len(index))


def _remap(bits: int, pos: dict[int, int]) -> int:
    out = 0
    while bits:
        low = bits & -bits
        out |= 1 << pos[low.bit_length() - 1]
        bits ^= low
    return out


@dataclass
class SearchResult:
    best_size: int
    witness: SubspaceCode
    proved_optimal: bool
    nodes_explored: int
    elapsed: float


class _Budget(Exception):
    pass


def max_partial_spread(
    q: int,
    n: int,
    k: int,
    time_limit: float | None = None,
    node_limit: int | None = None,
    symmetry: bool = True,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> SearchResult:
    """Maximum partial k-spread of F_q^n by exhaustive branch and bound.

    With ``symmetry`` on, the first vertex is forced into the solution; GL(n, q)
    acts transitively on k-subspaces so some maximum spread contains it.
    """
    if not (1 <= k <= n):
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    start = time.perf_counter()
    g = compatibility_graph(q, n, k, cap)
    nv = len(g.vertices)
    per = num_points(k, q)
    all_pts = (1 << g.n_points) - 1
    point_cands = [0] * g.n_points
    for v, m in enumerate(g.masks):
        while m:
            low = m & -m
            point_cands[low.bit_length() - 1] |= 1 << v
            m ^= low

    best: list[int] = _greedy(g)
    nodes = 0
    deadline = None if time_limit is None else start + time_limit

    def coverable(cands: int) -> int:
        acc = 0
        while cands:
            low = cands & -cands
            acc |= g.masks[low.bit_length() - 1]
            cands ^= low
        return acc

    def recurse(chosen: list[int], open_pts: int, cands: int) -> None:
        # open_pts: points neither covered nor declared holes
        nonlocal best, nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Budget
        if deadline is not None and nodes % 256 == 0 and time.perf_counter() > deadline:
            raise _Budget
        if len(chosen) > len(best):
            best = list(chosen)
        if not cands:
            return
        reach = coverable(cands) & open_pts
        if len(chosen) + min(cands.bit_count(), reach.bit_count() // per) <= len(best):
            return
        # uncovered point with fewest live candidates
        pick, pick_c, pick_n = -1, 0, None
        m = reach
        while m:
            low = m & -m
            p = low.bit_length() - 1
            c = point_cands[p] & cands
            cnt = c.bit_count()
            if pick_n is None or cnt < pick_n:
                pick, pick_c, pick_n = p, c, cnt
                if cnt == 1:
                    break
            m ^= low
        c = pick_c
        while c:
            low = c & -c
            v = low.bit_length() - 1
            chosen.append(v)
            recurse(chosen, open_pts & ~g.masks[v], cands & g.adjacency[v])
            chosen.pop()
            c ^= low
        # leave the point as a hole
        recurse(chosen, open_pts & ~(1 << pick), cands & ~pick_c)

    proved = True
    try:
        if symmetry and nv:
            recurse([0], all_pts & ~g.masks[0], g.adjacency[0])
        else:
            recurse([], all_pts, (1 << nv) - 1)
    except _Budget:
        proved = False
    ctx = field_of_order(q)
    witness = SubspaceCode(ctx, n, k, tuple(g.vertices[v] for v in sorted(best)), 2 * k, "search")
    return SearchResult(len(best), witness, proved, nodes, time.perf_counter() - start)


def _greedy(g: CompatibilityGraph) -> list[int]:
    chosen = []
    cands = (1 << len(g.vertices)) - 1
    while cands:
        v = (cands & -cands).bit_length() - 1
        chosen.append(v)
        cands &= g.adjacency[v]
    return chosen
