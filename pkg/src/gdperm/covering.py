"""Families for l independent edges <-> coverings of K_M by line graphs of digraphs.

Word numbers (arc labels and the pairs of K_M) are 1-based; part indices in
the coverage map are 0-based positions in ``CoverCertificate.parts``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .core import DIFFERENT, STAR, Family, InputError, NaturalGraph, matching, verify_family
from .formats import SCHEMA_VERSION


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph on position identifiers; each arc carries a distinct label."""

    positions: tuple
    arcs: tuple  # (tail, head, label)

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(int(p) for p in self.positions))
        object.__setattr__(self, "arcs", tuple(tuple(int(x) for x in a) for a in self.arcs))
        problems = self.problems()
        if problems:
            raise InputError(problems[0])

    def problems(self) -> list[str]:
        out = []
        labels = [lab for _, _, lab in self.arcs]
        if len(set(labels)) != len(labels):
            dup = sorted({x for x in labels if labels.count(x) > 1})
            out.append(f"duplicate arc labels {dup}")
        pos = set(self.positions)
        for a, b, lab in self.arcs:
            if a == b:
                out.append(f"arc {lab} is a loop at {a}")
            if a not in pos or b not in pos:
                out.append(f"arc {lab} = ({a},{b}) leaves the position set")
        return out

    def to_dict(self) -> dict:
        return {"positions": list(self.positions), "arcs": [list(a) for a in self.arcs]}

    @classmethod
    def from_dict(cls, d: dict) -> "Digraph":
        return cls(tuple(d["positions"]), tuple(tuple(a) for a in d["arcs"]))


def line_graph_matrix(d: Digraph) -> np.ndarray:
    """Adjacency between arcs, in arc order: (a,b) ~ (c,e) iff b == c or a == e."""
    tails = np.array([a for a, _, _ in d.arcs], dtype=np.int64)
    heads = np.array([b for _, b, _ in d.arcs], dtype=np.int64)
    adj = (heads[:, None] == tails[None, :]) | (tails[:, None] == heads[None, :])
    np.fill_diagonal(adj, False)
    return adj


def line_graph(d: Digraph) -> NaturalGraph:
    """Undirected line graph on the arc labels."""
    labels = [lab for _, _, lab in d.arcs]
    adj = line_graph_matrix(d)
    iu, ju = np.nonzero(np.triu(adj, 1))
    return NaturalGraph(labels, [(labels[i], labels[j]) for i, j in zip(iu.tolist(), ju.tolist())])


@dataclass
class CoverPart:
    edges: tuple  # pairs (q, r) of word numbers, q < r
    digraph: Digraph

    def to_dict(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "digraph": self.digraph.to_dict()}


@dataclass
class CoverCertificate:
    M: int
    parts: list
    coverage: dict = field(default_factory=dict)  # (q, r) -> part index

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "M": self.M,
            "parts": [p.to_dict() for p in self.parts],
            "coverage": [[q, r, s] for (q, r), s in sorted(self.coverage.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "CoverCertificate":
        try:
            parts = [
                CoverPart(tuple(tuple(sorted(e)) for e in p["edges"]), Digraph.from_dict(p["digraph"]))
                for p in d["parts"]
            ]
            cov = {(min(q, r), max(q, r)): s for q, r, s in d.get("coverage", [])}
            return cls(int(d["M"]), parts, cov)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed certificate: {exc}") from None


@dataclass
class CoverReport:
    valid: bool
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def verify_cover(c: CoverCertificate) -> CoverReport:
    """Check that every part is the line graph of its digraph and that all pairs of [M] are covered."""
    fails = []
    edge_sets = []
    for s, part in enumerate(c.parts):
        dg = part.digraph
        for msg in dg.problems():
            fails.append(f"part {s}: {msg}")
        for _, _, lab in dg.arcs:
            if not 1 <= lab <= c.M:
                fails.append(f"part {s}: label {lab} outside [1,{c.M}]")
        declared = {tuple(sorted(e)) for e in part.edges}
        actual = set(line_graph(dg).edges)
        if declared != actual:
            diff = sorted(declared ^ actual)
            fails.append(f"part {s}: edges differ from the line graph of its digraph at {diff[:5]}")
        edge_sets.append(declared)
    for q, r in combinations(range(1, c.M + 1), 2):
        holders = [s for s, es in enumerate(edge_sets) if (q, r) in es]
        if not holders:
            fails.append(f"pair {{{q},{r}}} is not covered")
            continue
        s = c.coverage.get((q, r))
        if s is not None and s not in holders:
            fails.append(f"coverage map sends {{{q},{r}}} to part {s}, which does not contain it")
    return CoverReport(not fails, fails)


def perms_to_covering(f: Family) -> CoverCertificate:
    """One line-graph part per edge {a, b}: word r becomes the arc (pos of a, pos of b) labelled r."""
    if f.relation != DIFFERENT:
        raise InputError("perms_to_covering needs a graph-different family")
    rep = verify_family(f)
    if not rep.valid:
        i, j = rep.violations[0]
        raise InputError(f"family is not valid: words {i} and {j} share no edge")
    live = set(f.graph.non_isolated)
    used = sorted({p + 1 for w in f.words for p, c in enumerate(w) if c in live})
    parts = []
    coverage = {}
    for s, (a, b) in enumerate(f.graph.edges):
        arcs = []
        where_a, where_b = {}, {}
        for r, w in enumerate(f.words, 1):
            if a in w and b in w:
                i, j = w.index(a) + 1, w.index(b) + 1
                arcs.append((i, j, r))
                where_a.setdefault(i, []).append(r)
                where_b.setdefault(j, []).append(r)
        # edges computed from the words themselves, not from the digraph
        es = set()
        for p, qs in where_a.items():
            for q in qs:
                for r in where_b.get(p, ()):
                    es.add((min(q, r), max(q, r)))
        for e in sorted(es):
            coverage.setdefault(e, s)
        parts.append(CoverPart(tuple(sorted(es)), Digraph(tuple(used), tuple(arcs))))
    return CoverCertificate(len(f), parts, coverage)


def covering_to_perms(c: CoverCertificate) -> Family:
    """M words, pairwise lK2-different with l = number of parts.

    Part s (1-based) writes 2s-1 at the tail and 2s at the head of arc r into
    word r, inside its own block of consecutive positions.
    """
    rep = verify_cover(c)
    if not rep.valid:
        raise InputError(f"invalid certificate: {rep.failures[0]}")
    length = sum(len(p.digraph.positions) for p in c.parts)
    words = [[STAR] * length for _ in range(c.M)]
    offset = 0
    for s, part in enumerate(c.parts, 1):
        idx = {p: k for k, p in enumerate(sorted(part.digraph.positions))}
        for a, b, r in part.digraph.arcs:
            words[r - 1][offset + idx[a]] = 2 * s - 1
            words[r - 1][offset + idx[b]] = 2 * s
        offset += len(idx)
    ell = len(c.parts)
    graph = matching(ell) if ell else NaturalGraph()
    return Family(tuple(tuple(w) for w in words), graph, DIFFERENT, meta={"name": "from-cover", "parts": ell})
