"""Brute-force references that share no code with the package's search paths."""

from __future__ import annotations

from itertools import permutations


def edge_set(edges):
    return {frozenset(e) for e in edges}


def positional_different(x, y, edges) -> bool:
    es = edge_set(edges)
    for a, b in zip(x, y):
        if a and b and a != b and frozenset((a, b)) in es:
            return True
    return False


def positional_colliding(x, y) -> bool:
    return any(a and b and abs(a - b) == 1 for a, b in zip(x, y))


def all_cliques_max(n, adjacent) -> int:
    """Largest clique by extending cliques in increasing vertex order (no pruning)."""
    best = 0

    def grow(clique, start):
        nonlocal best
        best = max(best, len(clique))
        for v in range(start, n):
            if all(adjacent(u, v) for u in clique):
                clique.append(v)
                grow(clique, v + 1)
                clique.pop()

    grow([], 0)
    return best


def placement_words(syms, n, order=None):
    out = []
    for pos in permutations(range(n), len(syms)):
        w = [0] * n
        for s, p in zip(syms, pos):
            w[p] = s
        if order:
            where = {s: w.index(s) for s in order}
            if any(where[a] > where[b] for a, b in zip(order, order[1:])):
                continue
        out.append(tuple(w))
    return out


def brute_kappa(edges, syms, n, colliding=False, order=None) -> int:
    words = placement_words(sorted(syms), n, order)
    if colliding:
        rel = positional_colliding
        return all_cliques_max(len(words), lambda i, j: rel(words[i], words[j]))
    return all_cliques_max(len(words), lambda i, j: positional_different(words[i], words[j], edges))
