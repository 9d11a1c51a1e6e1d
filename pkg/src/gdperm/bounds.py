"""Closed-form bounds used to cap searches and to cross-check solver output."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

import numpy as np

from .core import InputError, NaturalGraph

MAX_CHROMATIC_VERTICES = 16
MAX_MATCHING_VERTICES = 20


def chromatic_number(g: NaturalGraph) -> int:
    """Exact chromatic number by backtracking (at most 16 vertices)."""
    vs = list(g.vertices)
    if len(vs) > MAX_CHROMATIC_VERTICES:
        raise InputError(f"chromatic_number supports at most {MAX_CHROMATIC_VERTICES} vertices")
    if not vs:
        return 0
    if not g.edges:
        return 1
    idx = {v: i for i, v in enumerate(vs)}
    nbrs = [set() for _ in vs]
    for a, b in g.edges:
        nbrs[idx[a]].add(idx[b])
        nbrs[idx[b]].add(idx[a])
    seq = sorted(range(len(vs)), key=lambda i: (-len(nbrs[i]), i))

    def colourable(k: int) -> bool:
        col = [-1] * len(vs)

        def place(t: int, used: int) -> bool:
            if t == len(seq):
                return True
            v = seq[t]
            banned = {col[u] for u in nbrs[v] if col[u] >= 0}
            # a brand-new colour is interchangeable with any other unused one
            for c in range(min(used + 1, k)):
                if c not in banned:
                    col[v] = c
                    if place(t + 1, max(used, c + 1)):
                        return True
                    col[v] = -1
            return False

        return place(0, 0)

    k = 2
    while not colourable(k):
        k += 1
    return k


def lemma1_upper(g: NaturalGraph) -> int:
    """chi(G) ** |V(G)|, counting declared isolated vertices."""
    return chromatic_number(g) ** len(g.vertices)


def search_cap(g: NaturalGraph) -> int:
    """The same bound on the graph restricted to its non-isolated vertices.

    Isolated vertices never separate two permutations, so this is the cap
    handed to the solver; it is never larger than :func:`lemma1_upper`.
    """
    return lemma1_upper(g.induced_on_support())


def _masks(g: NaturalGraph):
    vs = list(g.vertices)
    idx = {v: i for i, v in enumerate(vs)}
    adj = [0] * len(vs)
    for a, b in g.edges:
        adj[idx[a]] |= 1 << idx[b]
        adj[idx[b]] |= 1 << idx[a]
    return vs, idx, tuple(adj)


@lru_cache(maxsize=None)
def _nu(adj: tuple, mask: int) -> int:
    if mask == 0:
        return 0
    v = (mask & -mask).bit_length() - 1
    rest = mask & ~(1 << v)
    best = _nu(adj, rest)
    cand = adj[v] & rest
    while cand:
        u = (cand & -cand).bit_length() - 1
        cand &= cand - 1
        best = max(best, 1 + _nu(adj, rest & ~(1 << u)))
    return best


def matching_number(g: NaturalGraph) -> int:
    """Size of a largest matching (exhaustive, at most 20 vertices)."""
    if len(g.vertices) > MAX_MATCHING_VERTICES:
        raise InputError(f"matching_number supports at most {MAX_MATCHING_VERTICES} vertices")
    vs, _, adj = _masks(g)
    return _nu(adj, (1 << len(vs)) - 1)


def max_matching(g: NaturalGraph) -> list:
    """Lexicographically first maximum matching (edges in sorted order)."""
    if len(g.vertices) > MAX_MATCHING_VERTICES:
        raise InputError(f"max_matching supports at most {MAX_MATCHING_VERTICES} vertices")
    vs, idx, adj = _masks(g)
    mask = (1 << len(vs)) - 1
    need = _nu(adj, mask)
    chosen = []
    for a, b in g.edges:
        if len(chosen) == need:
            break
        ia, ib = idx[a], idx[b]
        if not (mask >> ia) & 1 or not (mask >> ib) & 1:
            continue
        rest = mask & ~(1 << ia) & ~(1 << ib)
        if 1 + len(chosen) + _nu(adj, rest) == need:
            chosen.append((a, b))
            mask = rest
    return chosen


@dataclass
class StarDecomposition:
    matching: list
    stars: list  # (centre, leaves) pairs, vertex-disjoint subgraphs of G
    matching_value: int  # 3 ** nu
    star_value: int  # prod(2 * leaves + 1)
    value: int
    min_length: int  # word length of the product construction realising ``value``

    def to_dict(self) -> dict:
        return asdict(self)


def decomposition_lower(g: NaturalGraph) -> tuple[int, StarDecomposition]:
    """Lower bound on kappa(G) from vertex-disjoint stars grown around a maximum matching.

    Every non-isolated vertex outside the matching is attached to one matched
    endpoint it is adjacent to; maximality of the matching forces all vertices
    attached to one matching edge onto the same endpoint.
    """
    if not g.edges:
        return 1, StarDecomposition([], [], 1, 1, 1, 0)
    mm = max_matching(g)
    nu = len(mm)
    matched = {v for e in mm for v in e}
    attached = {e: [] for e in mm}
    for a in g.non_isolated:
        if a in matched:
            continue
        for e in mm:
            if g.has_edge(a, e[0]) or g.has_edge(a, e[1]):
                attached[e].append(a)
                break
        else:
            raise AssertionError("matching is not maximal")
    stars = []
    for u, w in mm:
        xs = attached[(u, w)]
        if all(g.has_edge(x, u) for x in xs):
            centre, other = u, w
        elif all(g.has_edge(x, w) for x in xs):
            centre, other = w, u
        else:
            raise AssertionError("matching is not maximum")
        stars.append((centre, sorted([other] + xs)))
    star_value = prod(2 * len(leaves) + 1 for _, leaves in stars)
    matching_value = 3 ** nu
    if star_value >= matching_value:
        value, length = star_value, sum(2 * len(leaves) + 1 for _, leaves in stars)
    else:
        value, length = matching_value, 3 * nu
    return value, StarDecomposition(mm, stars, matching_value, star_value, value, length)


def finite_lower(g: NaturalGraph, n: int) -> int | None:
    """The decomposition bound when its construction fits in n positions, else None."""
    value, cert = decomposition_lower(g)
    return value if n >= cert.min_length else None


def binomial_upper(n: int) -> int:
    if n < 1:
        raise InputError("binomial_upper needs n >= 1")
    return comb(n, n // 2)


def star_exact(g: NaturalGraph) -> int | None:
    """2r+1 when the non-isolated part of G is the star K_{1,r}, else None."""
    s = g.non_isolated
    r = len(g.edges)
    if r == 0 or len(s) != r + 1:
        return None
    for c in s:
        if all(c in e for e in g.edges):
            return 2 * r + 1
    return None


def complete_digraph_arcs(t: int) -> list:
    return [(a, b) for a in range(1, t + 1) for b in range(1, t + 1) if a != b]


@dataclass
class AlphaRatio:
    t: int
    vertices: int
    alpha: int
    ratio: Fraction
    bipartite_lower: int

    @property
    def ok(self) -> bool:
        return self.ratio <= 4 and self.alpha >= self.bipartite_lower


def line_graph_alpha_ratio(t: int) -> AlphaRatio:
    """Independence number of the line graph of the complete digraph on t vertices."""
    from .covering import Digraph, line_graph_matrix
    from .solver import max_clique_adjacency

    if not 2 <= t <= 6:
        raise InputError("line_graph_alpha_ratio supports 2 <= t <= 6")
    arcs = complete_digraph_arcs(t)
    d = Digraph(tuple(range(1, t + 1)), tuple((a, b, i + 1) for i, (a, b) in enumerate(arcs)))
    adj = line_graph_matrix(d)
    comp = ~adj
    np.fill_diagonal(comp, False)
    alpha = len(max_clique_adjacency(comp).clique)
    lower = (t // 2) * ((t + 1) // 2)
    return AlphaRatio(t, len(arcs), alpha, Fraction(len(arcs), alpha), lower)


@dataclass
class BoundReport:
    graph: NaturalGraph
    chromatic_number: int
    lemma1_upper: int
    search_cap: int
    matching_number: int
    decomposition_lower: int
    decomposition: StarDecomposition
    star_exact: int | None = None
    binomial_upper: int | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "chromatic_number": self.chromatic_number,
            "lemma1_upper": self.lemma1_upper,
            "search_cap": self.search_cap,
            "matching_number": self.matching_number,
            "decomposition_lower": self.decomposition_lower,
            "decomposition": self.decomposition.to_dict(),
            "star_exact": self.star_exact,
            "binomial_upper": self.binomial_upper,
        }


def bound_report(g: NaturalGraph, rho_n: int | None = None) -> BoundReport:
    low, cert = decomposition_lower(g)
    rep = BoundReport(
        graph=g,
        chromatic_number=chromatic_number(g),
        lemma1_upper=lemma1_upper(g),
        search_cap=search_cap(g),
        matching_number=matching_number(g),
        decomposition_lower=low,
        decomposition=cert,
        star_exact=star_exact(g),
        binomial_upper=binomial_upper(rho_n) if rho_n else None,
    )
    assert rep.decomposition_lower <= rep.lemma1_upper
    return rep
