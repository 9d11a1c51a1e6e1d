"""Exact kappa(G, n), rho(n) and kappa_id via maximum cliques of placement conflict graphs.

A placement puts each relevant symbol at a distinct position of [n] and
leaves every other cell as a placeholder.  Two placements are adjacent when
they are G-different, so a family of pairwise G-different permutations of
[n] is exactly a clique.  Symbols are handled up to relabelling: the graph's
relevant vertices are placed, whatever their numeric values.
"""

from __future__ import annotations

import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

import numpy as np

from . import bounds
from .core import COLLIDING, DIFFERENT, STAR, Family, InputError, NaturalGraph, complete, path, verify_family
from .kernels import STATUS_CAP, STATUS_COMPLETE, STATUS_LIMIT, clique_search, color_sort, pack_adjacency, pack_set

log = logging.getLogger(__name__)

MAX_PLACEMENTS = 20_000
RHO_MAX_N = 7
SCAN_MAX_V = 7


def consecutive_graph(syms) -> NaturalGraph:
    syms = sorted(syms)
    s = set(syms)
    return NaturalGraph(syms, [(a, a + 1) for a in syms if a + 1 in s])


@dataclass
class ConflictGraph:
    """Placements of ``symbols`` into n positions and their pairwise relation.

    ``placements[v, k]`` is the 0-based position of ``symbols[k]`` in placement v.
    """

    graph: NaturalGraph
    n: int
    mode: str
    symbols: tuple
    placements: np.ndarray
    adjacency: np.ndarray
    order: tuple | None = None

    @property
    def vertex_count(self) -> int:
        return len(self.placements)

    @property
    def transitive(self) -> bool:
        # every placement is the image of placement 0 under a permutation of positions
        return self.order is None

    @property
    def relation_graph(self) -> NaturalGraph:
        return consecutive_graph(self.symbols) if self.mode == COLLIDING else self.graph

    def word(self, v: int) -> tuple:
        w = [STAR] * self.n
        for s, p in zip(self.symbols, self.placements[v]):
            w[p] = s
        return tuple(w)

    def family(self, vertices) -> Family:
        return Family(tuple(self.word(v) for v in vertices), self.graph, self.mode, self.order)


def _placements(k: int, n: int, cols: list | None) -> np.ndarray:
    if cols is None:
        rows = list(permutations(range(n), k))
    else:
        rows = [p for p in permutations(range(n), k) if all(p[a] < p[b] for a, b in zip(cols, cols[1:]))]
    return np.array(rows, dtype=np.int64).reshape(len(rows), k)


def build_conflict_graph(
    g: NaturalGraph,
    n: int,
    mode: str = DIFFERENT,
    order=None,
    max_placements: int = MAX_PLACEMENTS,
) -> ConflictGraph:
    """Enumerate legal placements and join the related ones.

    In ``different`` mode the placed symbols are the non-isolated vertices of
    ``g`` plus any order-constrained ones; in ``colliding`` mode they are all
    declared vertices of ``g`` and two placements are joined when some
    position holds integers differing by one.
    """
    if mode not in (DIFFERENT, COLLIDING):
        raise InputError(f"unknown mode {mode!r}")
    order = tuple(int(s) for s in order) if order else None
    if mode == DIFFERENT:
        syms = set(g.non_isolated)
    else:
        syms = set(g.vertices)
    if order:
        if len(set(order)) != len(order):
            raise InputError("order constraint repeats a symbol")
        syms |= set(order)
    syms = tuple(sorted(syms))
    k = len(syms)
    if n < k:
        raise InputError(f"n={n} is smaller than the {k} symbols that must be placed")
    count = math.perm(n, k) if order is None else math.perm(n, k) // math.factorial(len(order))
    if count > max_placements:
        raise InputError(f"{count} placements exceed the limit of {max_placements}")
    col = {s: i for i, s in enumerate(syms)}
    P = _placements(k, n, [col[s] for s in order] if order else None)
    rel = consecutive_graph(syms) if mode == COLLIDING else g
    V = len(P)
    adj = np.zeros((V, V), dtype=bool)
    for a, b in rel.edges:
        if a in col and b in col:
            eq = P[:, col[a]][:, None] == P[:, col[b]][None, :]
            adj |= eq
            adj |= eq.T
    np.fill_diagonal(adj, False)
    return ConflictGraph(g, n, mode, syms, P, adj, order)


def degeneracy_order(adj: np.ndarray) -> np.ndarray:
    """Vertices by reverse min-degree removal order (ties to the lower index)."""
    n = adj.shape[0]
    deg = adj.sum(axis=1).astype(np.int64)
    alive = np.ones(n, dtype=bool)
    removed = []
    big = n + 1
    for _ in range(n):
        v = int(np.argmin(np.where(alive, deg, big)))
        removed.append(v)
        alive[v] = False
        deg -= adj[v]
    return np.array(removed[::-1], dtype=np.int64)


@dataclass
class CliqueResult:
    clique: list  # original vertex indices, ascending
    nodes: int
    status: int
    lower_used: int

    @property
    def size(self) -> int:
        return len(self.clique)


def _run(bits, cand, depth0, lower, cap, node_limit):
    out = np.zeros(bits.shape[0] + 1, np.int32)
    shared = np.zeros(1, np.int64)
    best, found, nodes, status = clique_search(bits, cand, depth0, lower, cap, shared, node_limit, out)
    return int(best), [int(v) for v in out[:max(found, 0)]], int(nodes), int(status), found


def _parallel(bits, cand, depth0, lower, cap, node_limit, threads):
    """Split the root into one subtree per branching vertex; share the incumbent size only."""
    n = bits.shape[0]
    nw = bits.shape[1]
    order = np.empty(n, np.int32)
    color = np.empty(n, np.int32)
    cnt = color_sort(bits, cand, 1, np.empty(nw, np.uint64), np.empty(nw, np.uint64), order, color)
    shared = np.zeros(1, np.int64)
    shared[0] = lower
    rest = cand.copy()
    tasks = []
    for i in range(cnt - 1, -1, -1):
        v = int(order[i])
        sub = rest & bits[v]
        rest[v >> 6] &= ~np.uint64(1 << (v & 63))
        tasks.append((v, int(color[i]), sub))

    def work(task):
        v, col, sub = task
        if depth0 + col <= shared[0] or (cap > 0 and shared[0] >= cap):
            return 0, 0, STATUS_COMPLETE
        out = np.zeros(n + 1, np.int32)
        best, found, nodes, status = clique_search(bits, sub, depth0 + 1, int(shared[0]), cap, shared, node_limit, out)
        return int(best), int(nodes), int(status)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(work, tasks))
    value = max([lower, int(shared[0])] + [b for b, _, _ in results])
    if cap > 0 and value >= cap:
        status = STATUS_CAP
    elif any(st == STATUS_LIMIT for _, _, st in results):
        status = STATUS_LIMIT
    else:
        status = STATUS_COMPLETE
    return value, sum(nodes for _, nodes, _ in results) + 1, status


def max_clique_adjacency(
    adj: np.ndarray,
    lower: int = 0,
    cap: int = 0,
    forced: int | None = None,
    threads: int = 1,
    node_limit: int = 0,
) -> CliqueResult:
    """Maximum clique of a boolean adjacency matrix.

    ``lower`` is the size of a known clique (only larger ones are reported),
    ``cap`` a certified upper bound at which the search may stop, and
    ``forced`` a vertex that some maximum clique is known to contain.  The
    returned clique is the first of maximum size in the sequential search
    order, so it does not depend on ``threads``.  An empty ``clique`` means
    nothing larger than ``lower`` exists.
    """
    V = adj.shape[0]
    if V == 0:
        return CliqueResult([], 0, 0, lower)
    if forced is not None:
        sub = np.nonzero(adj[forced])[0]
        base = [forced]
        depth0 = 1
    else:
        sub = np.arange(V)
        base = []
        depth0 = 0
    if len(sub) == 0:
        clique = base if depth0 > lower else []
        return CliqueResult(clique, 0, 0, lower)
    local = adj[np.ix_(sub, sub)]
    perm = degeneracy_order(local)
    ordered = local[np.ix_(perm, perm)]
    bits = pack_adjacency(ordered)
    cand = pack_set(range(len(perm)), len(perm))
    nodes = 0
    if threads > 1:
        value, nodes, status = _parallel(bits, cand, depth0, lower, cap, node_limit, threads)
        if value <= lower:
            return CliqueResult([], nodes, status, lower)
        # canonical witness: first clique of this size in sequential order
        _, verts, n2, _, _ = _run(bits, cand, depth0, value - 1, value, 0)
        nodes += n2
    else:
        best, verts, nodes, status, found = _run(bits, cand, depth0, lower, cap, node_limit)
        if found < 0:
            return CliqueResult([], nodes, status, lower)
    clique = sorted(base + [int(sub[perm[v]]) for v in verts])
    return CliqueResult(clique, nodes, status, lower)


@dataclass
class SolveResult:
    value: int
    witness: Family
    n: int
    graph: NaturalGraph
    mode: str
    stats: dict = field(default_factory=dict)

    @property
    def certified_optimal(self) -> bool:
        return bool(self.stats.get("certified_optimal"))

    def to_dict(self) -> dict:
        from .formats import SCHEMA_VERSION, format_word

        return {
            "schema_version": SCHEMA_VERSION,
            "value": self.value,
            "n": self.n,
            "mode": self.mode,
            "graph": self.graph.to_dict(),
            "order": list(self.witness.order) if self.witness.order else None,
            "witness": [format_word(w) for w in self.witness.words],
            **{k: v for k, v in self.stats.items()},
        }


def _caps(cg: ConflictGraph) -> dict:
    rel = cg.relation_graph
    caps = {"vertices": cg.vertex_count}
    if rel.edges and len(rel.vertices) <= bounds.MAX_CHROMATIC_VERTICES:
        caps["lemma1"] = bounds.search_cap(rel)
        exact = bounds.star_exact(rel)
        if exact is not None and cg.order is None:
            caps["star"] = exact
    if cg.mode == COLLIDING and set(cg.symbols) == set(range(1, cg.n + 1)):
        caps["binomial"] = bounds.binomial_upper(cg.n)
    if not rel.edges:
        caps["edgeless"] = 1
    return caps


def _threads(threads: int | None) -> int:
    env = os.environ.get("KAPPA_THREADS")
    if env:
        return max(1, int(env))
    return max(1, int(threads or 1))


def max_clique(
    cg: ConflictGraph,
    upper_cap: int | None = None,
    lower_witness: Family | None = None,
    threads: int | None = 1,
    node_limit: int = 0,
    symmetry: bool = True,
) -> SolveResult:
    """Exact maximum family for a conflict graph, stopping early at ``upper_cap``."""
    t0 = time.perf_counter()
    threads = _threads(threads)
    V = cg.vertex_count
    lower = len(lower_witness) if lower_witness is not None else 0
    cap = int(upper_cap) if upper_cap else 0
    forced = 0 if (symmetry and cg.transitive and V > 0) else None
    stats = {
        "vertices": V,
        "edges": int(cg.adjacency.sum()) // 2,
        "bound_used": cap or None,
        "threads": threads,
        "symmetry": "placement 0 fixed (positions act transitively)" if forced is not None else "none",
    }
    if V == 0:
        res = CliqueResult([], 0, 0, 0)
    elif cap and lower >= cap:
        res = CliqueResult([], 0, STATUS_CAP, lower)
    else:
        res = max_clique_adjacency(cg.adjacency, lower, cap, forced, threads, node_limit)
    if res.clique:
        witness = cg.family(res.clique)
    elif lower_witness is not None:
        witness = lower_witness
    else:
        witness = cg.family([])
    value = len(witness)
    stats["nodes"] = res.nodes
    stats["status"] = {0: "complete", STATUS_CAP: "cap reached", STATUS_LIMIT: "node limit"}[res.status]
    stats["certified_optimal"] = res.status != STATUS_LIMIT
    stats["cap_attained"] = bool(cap) and value >= cap
    stats["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    assert verify_family(witness).valid, "solver produced an invalid witness"
    return SolveResult(value, witness, cg.n, cg.graph, cg.mode, stats)


def sandwich(result: SolveResult) -> dict:
    """decomposition lower bound <= value <= colouring bound, for the placed relation graph.

    The decomposition bound concerns kappa(G) and is only checked once n
    admits the product construction realising it, and only for searches
    that ran to completion.
    """
    rel = consecutive_graph(result.graph.vertices) if result.mode == COLLIDING else result.graph
    if not rel.edges:
        return {"lower": 1, "lower_applies": True, "value": result.value, "upper": 1, "ok": result.value <= 1}
    low, cert = bounds.decomposition_lower(rel)
    applies = result.n >= cert.min_length and not result.witness.order and result.certified_optimal
    upper = bounds.lemma1_upper(rel)
    ok = result.value <= upper and (not applies or low <= result.value)
    return {"lower": low, "lower_applies": applies, "min_length": cert.min_length, "value": result.value, "upper": upper, "ok": ok}


def _finish(result: SolveResult, caps: dict) -> SolveResult:
    result.stats["caps"] = caps
    sw = sandwich(result)
    result.stats["sandwich"] = sw
    if not sw["ok"]:
        raise AssertionError(f"bound sandwich violated: {sw}")
    return result


def solve(
    g: NaturalGraph,
    n: int,
    mode: str = DIFFERENT,
    order=None,
    threads: int | None = 1,
    lower_witness: Family | None = None,
    node_limit: int = 0,
    max_placements: int = MAX_PLACEMENTS,
) -> SolveResult:
    cg = build_conflict_graph(g, n, mode, order, max_placements)
    caps = _caps(cg)
    cap = min(caps.values())
    res = max_clique(cg, cap, lower_witness, threads, node_limit)
    res.stats["bound_used"] = cap
    res.stats["bound_source"] = sorted(k for k, v in caps.items() if v == cap)
    return _finish(res, caps)


def kappa(g: NaturalGraph, n: int, threads: int | None = 1, **kw) -> SolveResult:
    """Exact kappa(g, n): the most pairwise g-different permutations of [n]."""
    return solve(g, n, DIFFERENT, None, threads, **kw)


def _pad(f: Family) -> Family:
    return Family(tuple(w + (STAR,) for w in f.words), f.graph, f.relation, f.order, f.meta)


def kappa_sweep(g: NaturalGraph, n_max: int, threads: int | None = 1, **kw) -> list:
    """kappa(g, n) for n = |S(g)| .. n_max; each value seeds the next as a lower bound."""
    k = len(g.non_isolated)
    if n_max < k:
        raise InputError(f"n_max={n_max} is smaller than |S(G)|={k}")
    out = []
    prev = None
    for n in range(max(k, 1), n_max + 1):
        res = kappa(g, n, threads, lower_witness=_pad(prev.witness) if prev else None, **kw)
        if prev is not None and res.value < prev.value:
            raise AssertionError("kappa(g, n) decreased in n")
        out.append(res)
        prev = res
    return out


def rho(n: int, threads: int | None = 1, max_n: int = RHO_MAX_N, **kw) -> SolveResult:
    """Exact rho(n): the most pairwise colliding permutations of [n]."""
    if n < 1:
        raise InputError("rho needs n >= 1")
    if n > max_n:
        est = math.factorial(n)
        raise InputError(f"rho({n}) needs a {est}-vertex conflict graph; limit is n <= {max_n}")
    return solve(path(n), n, COLLIDING, None, threads, **kw)


def kappa_id(n: int, n_positions: int, threads: int | None = 1, **kw) -> SolveResult:
    """Most pairwise K_n-different placements holding 1..n in natural order."""
    if n < 1:
        raise InputError("kappa_id needs n >= 1")
    if n_positions < n:
        raise InputError("n_positions must be at least n")
    return solve(complete(n), n_positions, DIFFERENT, tuple(range(1, n + 1)), threads, **kw)


# --- small-graph isomorphism classes -------------------------------------------------


def canonical_form(edges, v: int) -> tuple:
    """Lexicographically least relabelled edge list over all degree-respecting relabellings of [v]."""
    deg = [0] * (v + 1)
    nb = [set() for _ in range(v + 1)]
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        nb[a].add(b)
        nb[b].add(a)
    key = {x: (-deg[x], sorted(-deg[y] for y in nb[x])) for x in range(1, v + 1)}
    cells = []
    for x in sorted(range(1, v + 1), key=lambda x: key[x]):
        if cells and key[cells[-1][0]] == key[x]:
            cells[-1].append(x)
        else:
            cells.append([x])
    best = None
    for choice in product(*(permutations(c) for c in cells)):
        lab = {}
        nxt = 1
        for block in choice:
            for x in block:
                lab[x] = nxt
                nxt += 1
        form = tuple(sorted((min(lab[a], lab[b]), max(lab[a], lab[b])) for a, b in edges))
        if best is None or form < best:
            best = form
    return best


def graph_classes(v: int, l: int) -> list:
    """One canonical edge list per isomorphism class of simple graphs on [v] with l edges."""
    if v > SCAN_MAX_V:
        raise InputError(f"isomorphism enumeration supports v <= {SCAN_MAX_V}")
    if l > v * (v - 1) // 2 or l < 0:
        raise InputError(f"no simple graph on {v} vertices has {l} edges")
    pairs = list(combinations(range(1, v + 1), 2))
    level = {()}
    for _ in range(l):
        nxt = set()
        for es in level:
            have = set(es)
            for e in pairs:
                if e not in have:
                    nxt.add(canonical_form(es + (e,), v))
        level = nxt
    return sorted(level)


@dataclass
class ScanEntry:
    graph: NaturalGraph
    value: int
    result: SolveResult


@dataclass
class ScanReport:
    v: int
    l: int
    n: int
    entries: list

    @property
    def maximum(self) -> ScanEntry:
        return max(self.entries, key=lambda e: e.value)

    @property
    def minimum(self) -> ScanEntry:
        return min(self.entries, key=lambda e: e.value)

    def argmax(self) -> list:
        top = self.maximum.value
        return [e for e in self.entries if e.value == top]

    def argmin(self) -> list:
        low = self.minimum.value
        return [e for e in self.entries if e.value == low]

    def to_dict(self) -> dict:
        return {
            "v": self.v,
            "l": self.l,
            "n": self.n,
            "classes": [
                {"edges": [list(e) for e in x.graph.edges], "value": x.value,
                 "certified_optimal": x.result.certified_optimal}
                for x in self.entries
            ],
            "max": self.maximum.value,
            "argmax": [[list(e) for e in x.graph.edges] for x in self.argmax()],
            "min": self.minimum.value,
            "argmin": [[list(e) for e in x.graph.edges] for x in self.argmin()],
        }


def extremal_scan(v: int, l: int, n: int, threads: int | None = 1, **kw) -> ScanReport:
    """kappa(G, n) for every class of graphs on v vertices with l edges."""
    if v > SCAN_MAX_V:
        raise InputError(f"extremal_scan refuses v={v} > {SCAN_MAX_V}")
    entries = []
    for es in graph_classes(v, l):
        g = NaturalGraph(range(1, v + 1), es)
        if len(g.non_isolated) > n:
            raise InputError(f"n={n} cannot host graph {g}")
        res = kappa(g, n, threads, **kw)
        entries.append(ScanEntry(g, res.value, res))
        log.info("scan %s -> %d", g, res.value)
    return ScanReport(v, l, n, entries)
