"""Natural graphs, pattern words, families and the two difference relations.

A pattern word is a plain tuple of ints.  Positive entries are symbols and
``STAR`` (0) is the placeholder cell: it never equals a symbol and is never
an edge endpoint.  Infinite permutations are only ever handled through such
finite prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

STAR = 0
DIFFERENT = "different"
COLLIDING = "colliding"
RELATIONS = (DIFFERENT, COLLIDING)

Word = tuple  # tuple[int, ...], STAR marks a placeholder cell


class InputError(ValueError):
    """Raised for malformed input or violated preconditions."""


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class NaturalGraph:
    """Finite simple graph on positive-integer vertices."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Sequence[int]] = ()):
        es = set()
        vs = set(int(v) for v in vertices)
        for e in edges:
            a, b = (int(x) for x in e)
            if a == b:
                raise InputError(f"loop at vertex {a}")
            es.add(_edge(a, b))
            vs.update((a, b))
        if any(v < 1 for v in vs):
            raise InputError("vertices must be positive integers")
        object.__setattr__(self, "vertices", tuple(sorted(vs)))
        object.__setattr__(self, "edges", tuple(sorted(es)))

    @property
    def non_isolated(self) -> tuple[int, ...]:
        return tuple(sorted({v for e in self.edges for v in e}))

    def has_edge(self, a: int, b: int) -> bool:
        return _edge(a, b) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return sorted({b if a == v else a for a, b in self.edges if v in (a, b)})

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def induced_on_support(self) -> "NaturalGraph":
        return NaturalGraph(self.non_isolated, self.edges)

    def union(self, other: "NaturalGraph") -> "NaturalGraph":
        return NaturalGraph(self.vertices + other.vertices, self.edges + other.edges)

    def shifted(self, k: int) -> "NaturalGraph":
        return NaturalGraph((v + k for v in self.vertices), ((a + k, b + k) for a, b in self.edges))

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, d: dict) -> "NaturalGraph":
        return cls(d.get("vertices", ()), d.get("edges", ()))

    def __str__(self) -> str:
        es = ",".join(f"{a}-{b}" for a, b in self.edges)
        return f"G(V={list(self.vertices)}, E={{{es}}})"


def path(r: int, start: int = 1) -> NaturalGraph:
    """P_r on start..start+r-1."""
    if r < 1:
        raise InputError("path needs r >= 1")
    vs = range(start, start + r)
    return NaturalGraph(vs, ((i, i + 1) for i in vs[:-1]))


def star(r: int) -> NaturalGraph:
    """K_{1,r} with centre 1 and leaves 2..r+1."""
    if r < 1:
        raise InputError("star needs r >= 1")
    return NaturalGraph(range(1, r + 2), ((1, j) for j in range(2, r + 2)))


def matching(l: int) -> NaturalGraph:
    """l independent edges {1,2}, {3,4}, ..., {2l-1,2l}."""
    if l < 1:
        raise InputError("matching needs l >= 1")
    return NaturalGraph(range(1, 2 * l + 1), ((2 * i - 1, 2 * i) for i in range(1, l + 1)))


def complete(n: int) -> NaturalGraph:
    if n < 1:
        raise InputError("complete graph needs n >= 1")
    return NaturalGraph(range(1, n + 1), combinations(range(1, n + 1), 2))


def collision_graph_of_path(n: int) -> NaturalGraph:
    """The graph P_n on [n]; P_n-different permutations of [n] are exactly the colliding ones."""
    if n < 1:
        raise InputError("n must be >= 1")
    return path(n)


def check_word(cells: Iterable[int]) -> Word:
    w = tuple(int(c) for c in cells)
    syms = [c for c in w if c != STAR]
    if any(c < 0 for c in w):
        raise InputError(f"negative symbol in word {w}")
    if len(set(syms)) != len(syms):
        raise InputError(f"repeated symbol in word {w}")
    return w


def symbols(word: Word) -> frozenset:
    return frozenset(c for c in word if c != STAR)


def is_g_different(x: Word, y: Word, g: NaturalGraph) -> bool:
    if len(x) != len(y):
        raise InputError(f"length mismatch: {len(x)} vs {len(y)}")
    es = g._edge_set
    return any(a != STAR and b != STAR and _edge(a, b) in es for a, b in zip(x, y) if a != b)


def is_colliding(x: Word, y: Word) -> bool:
    if len(x) != len(y):
        raise InputError(f"length mismatch: {len(x)} vs {len(y)}")
    return any(a != STAR and b != STAR and abs(a - b) == 1 for a, b in zip(x, y))


@dataclass(frozen=True)
class Family:
    """Equal-length pattern words with the graph and relation they are meant to satisfy.

    ``order`` optionally lists symbols that every word must hold in increasing
    positional order.  ``meta`` carries free-form provenance (constructor name,
    parameters, anchor) and does not take part in equality.
    """

    words: tuple
    graph: NaturalGraph
    relation: str = DIFFERENT
    order: tuple | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        words = []
        length = None
        for i, w in enumerate(self.words):
            try:
                w = check_word(w)
            except InputError as exc:
                raise InputError(f"word {i}: {exc}") from None
            if length is None:
                length = len(w)
            elif len(w) != length:
                raise InputError(f"word {i}: length {len(w)} differs from {length}")
            words.append(w)
        object.__setattr__(self, "words", tuple(words))
        if self.relation not in RELATIONS:
            raise InputError(f"unknown relation {self.relation!r}")
        if self.order is not None:
            object.__setattr__(self, "order", tuple(int(s) for s in self.order))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    @property
    def length(self) -> int:
        return len(self.words[0]) if self.words else 0

    @property
    def support(self) -> frozenset:
        out = set()
        for w in self.words:
            out |= symbols(w)
        return frozenset(out)

    def as_array(self) -> np.ndarray:
        return np.array(self.words, dtype=np.int64).reshape(len(self.words), self.length)

    def with_meta(self, **kw) -> "Family":
        return Family(self.words, self.graph, self.relation, self.order, {**self.meta, **kw})


@dataclass
class VerificationReport:
    valid: bool
    violations: list = field(default_factory=list)  # (i, j) with i < j and no witness position
    order_violations: list = field(default_factory=list)  # word indices
    checked_pairs: int = 0

    def __bool__(self) -> bool:
        return self.valid

    def lines(self) -> list[str]:
        out = [f"{i} {j} no-witness" for i, j in self.violations]
        out += [f"{i} order-violation" for i in self.order_violations]
        return out


def related_matrix(arr: np.ndarray, graph: NaturalGraph, relation: str) -> np.ndarray:
    """Boolean m x m matrix: entry (i, j) is True iff words i and j are related."""
    m, length = arr.shape
    rel = np.zeros((m, m), dtype=bool)
    if m == 0:
        return rel
    if relation == DIFFERENT:
        top = max([int(arr.max(initial=0))] + list(graph.vertices)) + 1
        table = np.zeros((top, top), dtype=bool)
        for a, b in graph.edges:
            table[a, b] = table[b, a] = True
        for p in range(length):
            col = arr[:, p]
            rel |= table[col[:, None], col[None, :]]
    else:
        for p in range(length):
            col = arr[:, p]
            live = col != STAR
            rel |= (np.abs(col[:, None] - col[None, :]) == 1) & live[:, None] & live[None, :]
    return rel


def order_ok(word: Word, order: Sequence[int]) -> bool:
    pos = {c: i for i, c in enumerate(word) if c != STAR}
    if any(s not in pos for s in order):
        return False
    ps = [pos[s] for s in order]
    return all(a < b for a, b in zip(ps, ps[1:]))


def verify_family(f: Family) -> VerificationReport:
    """Check every pair of words of ``f`` against its relation (and order constraint)."""
    m = len(f)
    arr = f.as_array()
    rel = related_matrix(arr, f.graph, f.relation)
    iu, ju = np.triu_indices(m, k=1)
    bad = ~rel[iu, ju]
    violations = list(zip(iu[bad].tolist(), ju[bad].tolist()))
    order_bad = []
    if f.order:
        order_bad = [i for i, w in enumerate(f.words) if not order_ok(w, f.order)]
    return VerificationReport(
        valid=not violations and not order_bad,
        violations=violations,
        order_violations=order_bad,
        checked_pairs=len(iu),
    )
