"""Explicit families of pairwise graph-different (or colliding) words."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from math import prod

from .core import (
    COLLIDING,
    DIFFERENT,
    STAR,
    Family,
    InputError,
    NaturalGraph,
    complete,
    is_g_different,
    matching,
    path,
    star,
)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InputError(msg)


def _meta(name: str, **params) -> dict:
    return {"name": name, "params": params}


def shift_word(word, k: int) -> tuple:
    return tuple(STAR if c == STAR else c + k for c in word)


def shift_family(f: Family, k: int) -> Family:
    """Add ``k`` to every symbol and vertex."""
    order = tuple(s + k for s in f.order) if f.order else None
    return Family(
        tuple(shift_word(w, k) for w in f.words), f.graph.shifted(k), f.relation, order,
        {**f.meta, "shift": f.meta.get("shift", 0) + k},
    )


def star_out(word, keep) -> tuple:
    """Replace every symbol outside ``keep`` by a placeholder."""
    keep = set(keep)
    return tuple(c if c in keep else STAR for c in word)


def fill_stars(word) -> tuple:
    """Complete a pattern word to a permutation of [len(word)], filling stars in increasing order.

    Symbols above len(word) are not allowed.
    """
    n = len(word)
    used = {c for c in word if c != STAR}
    _need(all(c <= n for c in used), f"word {word} uses symbols beyond {n}")
    spare = iter(sorted(set(range(1, n + 1)) - used))
    return tuple(next(spare) if c == STAR else c for c in word)


def construct_star(r: int) -> Family:
    """2r+1 cyclic-interval words, pairwise K_{1,r}-different (centre 1)."""
    _need(isinstance(r, int) and r >= 1, "construct_star needs r >= 1")
    n = 2 * r + 1
    words = []
    for i in range(n):
        w = [STAR] * n
        for j in range(r + 1):
            w[(i + j) % n] = j + 1
        words.append(tuple(w))
    return Family(tuple(words), star(r), DIFFERENT, meta=_meta("star", r=r))


def _block(i: int) -> list:
    a, b = 2 * i - 1, 2 * i
    return [(a, b, STAR), (b, STAR, a), (STAR, a, b)]


def construct_matching(l: int) -> Family:
    """3^l words: the cartesian product of the three cyclic ministrings per edge."""
    _need(isinstance(l, int) and l >= 1, "construct_matching needs l >= 1")
    blocks = [_block(i) for i in range(1, l + 1)]
    words = tuple(sum(parts, ()) for parts in product(*blocks))
    return Family(words, matching(l), DIFFERENT, meta=_meta("matching", l=l))


def _is_even(p) -> bool:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2 == 0


def construct_complete(n: int) -> Family:
    """Even permutations of [n+1]; pairwise K_n-different on [n]."""
    _need(isinstance(n, int) and n >= 1, "construct_complete needs n >= 1")
    words = tuple(p for p in permutations(range(1, n + 2)) if _is_even(p))
    return Family(words, complete(n), DIFFERENT, meta=_meta("complete", n=n))


P4_TEN = (
    (1, 2, 4, 3, 5), (2, 4, 3, 5, 1), (4, 3, 5, 1, 2), (3, 5, 1, 2, 4), (5, 1, 2, 4, 3),
    (4, 3, 1, 2, 5), (3, 1, 2, 5, 4), (1, 2, 5, 4, 3), (2, 5, 4, 3, 1), (5, 4, 3, 1, 2),
)


def p4_plus_k1() -> NaturalGraph:
    return NaturalGraph(range(1, 6), path(4).edges)


def construct_p4_ten() -> Family:
    """The ten permutations of [5] cut from the two cyclic arrangements of (1 2), (4 3), 5."""
    return Family(P4_TEN, p4_plus_k1(), DIFFERENT, meta=_meta("p4ten"))


def product_construction(fs) -> Family:
    """Concatenate one word from each family, in every combination."""
    fs = list(fs)
    _need(len(fs) >= 1, "product_construction needs at least one family")
    for f in fs:
        _need(f.relation == DIFFERENT, "product_construction works on graph-different families")
    seen_v: set = set()
    seen_s: set = set()
    for k, f in enumerate(fs):
        sv = set(f.graph.non_isolated)
        ss = set(f.support)
        _need(not (sv & seen_v), f"family {k}: graph shares non-isolated vertices {sorted(sv & seen_v)}")
        _need(not (ss & seen_s), f"family {k}: overlapping supports {sorted(ss & seen_s)}")
        seen_v |= sv
        seen_s |= ss
    if len(fs) == 1:
        return fs[0]
    graph = fs[0].graph
    for f in fs[1:]:
        graph = graph.union(f.graph)
    words = tuple(sum(parts, ()) for parts in product(*(f.words for f in fs)))
    return Family(words, graph, DIFFERENT, meta=_meta("product", sizes=[len(f) for f in fs]))


def substitute(x, y) -> tuple:
    """Insert ``y`` into the placeholder cells of ``x`` and append the rest of ``y``.

    With r non-star cells in ``x`` (length m), the result has length len(y) + r:
    the k-th star of ``x`` receives y[k], and position i > m receives y[i - r].
    """
    x = tuple(x)
    y = tuple(y)
    holes = [i for i, c in enumerate(x) if c == STAR]
    r = len(x) - len(holes)
    _need(len(y) >= len(holes), f"y has {len(y)} cells but x has {len(holes)} stars")
    xs = {c for c in x if c != STAR}
    ys = {c for c in y if c != STAR}
    _need(not (xs & ys), f"x and y share symbols {sorted(xs & ys)}")
    z = list(x) + list(y[len(holes):])
    for k, i in enumerate(holes):
        z[i] = y[k]
    assert len(z) == len(y) + r
    return tuple(z)


def _rho_base(n: int) -> tuple:
    if n == 1:
        return ((1,),)
    if n == 2:
        return ((1, 2), (2, 1))
    if n == 3:
        return ((1, 2, 3), (2, 3, 1), (3, 1, 2))
    assert n == 4
    seed = Family(tuple(fill_stars(w) for w in construct_star(1).words), NaturalGraph((1, 2, 3), [(1, 2)]))
    return parity_double(seed, 4).words


@lru_cache(maxsize=None)
def _rho_words(n: int) -> tuple:
    if n <= 4:
        return _rho_base(n)
    xs = [star_out(w, (1, 2, 3, 4)) for w in P4_TEN]
    ys = [shift_word(w, 4) for w in _rho_words(n - 4)]
    return tuple(substitute(x, y) for x in xs for y in ys)


def rho_recursion_build(n: int) -> Family:
    """Pairwise colliding permutations of [n] from repeated substitution into the ten-word base.

    Sizes: 10 * b(n-4) with b(1..4) = 1, 2, 3, 6.
    """
    _need(isinstance(n, int) and n >= 5, "rho_recursion_build needs n >= 5")
    return Family(_rho_words(n), path(n), COLLIDING, meta=_meta("rho-recursion", n=n))


def parity_double(f: Family, n: int) -> Family:
    """Append n to each word, and also emit the variant with n-1 and n exchanged.

    ``f`` must consist of permutations of [n-1] that are pairwise P_{n-2}-different;
    plain collisions are not enough because a collision on {n-2, n-1} is lost
    when n-1 is swapped out.
    """
    _need(isinstance(n, int) and n >= 2, "parity_double needs n >= 2")
    target = tuple(range(1, n))
    for i, w in enumerate(f.words):
        _need(tuple(sorted(w)) == target, f"word {i} is not a permutation of [{n - 1}]")
    inner = path(n - 2) if n >= 3 else NaturalGraph((1,))
    for i in range(len(f)):
        for j in range(i + 1, len(f)):
            _need(
                is_g_different(f.words[i], f.words[j], inner),
                f"words {i} and {j} are not P_{n - 2}-different",
            )
    swap = {n - 1: n, n: n - 1}
    words = []
    for w in f.words:
        a = w + (n,)
        words.append(a)
        words.append(tuple(swap.get(c, c) for c in a))
    return Family(tuple(words), path(n), COLLIDING, meta=_meta("parity-double", n=n))


def catalan_number(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)


def _catalan_length(k: int) -> int:
    # default layout: anchor at 2^(k-1), total length 2^k - 1
    return (1 << k) - 1


def catalan_min_anchor(n: int) -> int:
    return _catalan_length(n - 1) + 1


@lru_cache(maxsize=None)
def _catalan_words(n: int, anchor: int) -> tuple:
    if n == 0:
        return ((),)
    tail = _catalan_length(n - 1)
    words = []
    for i in range(n):
        for p in _catalan_words(i, catalan_min_anchor(i) if i else 1):
            head = p + (STAR,) * (anchor - 1 - len(p))
            for s in _catalan_words(n - 1 - i, catalan_min_anchor(n - 1 - i) if n - 1 - i else 1):
                s = shift_word(s, i + 1)
                words.append(head + (i + 1,) + s + (STAR,) * (tail - len(s)))
    return tuple(words)


def catalan_construction(n: int, anchor: int | None = None) -> Family:
    """C_n words, pairwise K_n-different, each holding 1..n in natural order.

    Words are split by the symbol at ``anchor`` (1-based); the symbols below it
    come from the construction for fewer symbols, left-packed before the anchor,
    and the symbols above it from a shifted smaller construction after it.
    """
    _need(isinstance(n, int) and n >= 1, "catalan_construction needs n >= 1")
    lo = catalan_min_anchor(n)
    if anchor is None:
        anchor = lo
    _need(anchor >= lo, f"anchor {anchor} too small for n={n}; minimum is {lo}")
    words = _catalan_words(n, anchor)
    return Family(
        words, complete(n), DIFFERENT, tuple(range(1, n + 1)),
        meta={**_meta("catalan", n=n), "anchor": anchor, "min_anchor": lo},
    )


def edge_split_transform(f: Family, edge, c: int, d: int) -> Family:
    """Drop ``edge`` = {a, b} from the graph, add the fresh edge {c, d} and double word length.

    Each word w gets the suffix w[a -> c, b -> d] with every other cell a placeholder.
    """
    a, b = edge
    _need(f.graph.has_edge(a, b), f"{{{a},{b}}} is not an edge of the family graph")
    top = max(set(f.support) | set(f.graph.vertices))
    _need(c != d and min(c, d) > top, f"c and d must be distinct symbols larger than {top}")
    graph = NaturalGraph(
        f.graph.vertices + (c, d),
        [e for e in f.graph.edges if set(e) != {a, b}] + [(c, d)],
    )
    sub = {a: c, b: d}
    words = tuple(w + tuple(sub.get(x, STAR) for x in w) for w in f.words)
    return Family(words, graph, DIFFERENT, meta=_meta("edge-split", edge=[a, b], c=c, d=d))


def expected_size(name: str, *args) -> int:
    """Closed-form sizes of the constructions above."""
    from math import factorial

    if name == "star":
        return 2 * args[0] + 1
    if name == "matching":
        return 3 ** args[0]
    if name == "complete":
        return factorial(args[0] + 1) // 2
    if name == "p4ten":
        return 10
    if name == "catalan":
        return catalan_number(args[0])
    if name == "rho-recursion":
        n = args[0]
        base = {1: 1, 2: 2, 3: 3, 4: 6}
        k = 0
        while n > 4:
            n -= 4
            k += 1
        return 10 ** k * base[n]
    if name == "product":
        return prod(args[0])
    raise KeyError(name)
