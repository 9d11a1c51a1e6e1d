"""Bit-parallel maximum-clique kernels.

Adjacency is an (n, W) uint64 matrix: bit b of word w in row v is set iff
vertex v is adjacent to vertex 64*w + b.  The search is the usual
colour-bounded branch and bound: candidates are greedily coloured, processed
from the highest colour down, and a branch is cut as soon as
``clique size + colour <= incumbent``.

All integer constants mixed with uint64 values are uint64 themselves;
numba would otherwise promote to float64.
"""

from __future__ import annotations

import numpy as np

from ._jit import jit

_ZERO = np.uint64(0)
_ONE = np.uint64(1)
_M32 = np.uint64(0xFFFFFFFF)
_M16 = np.uint64(0xFFFF)
_M8 = np.uint64(0xFF)
_M4 = np.uint64(0xF)
_M2 = np.uint64(0x3)
_S32 = np.uint64(32)
_S16 = np.uint64(16)
_S8 = np.uint64(8)
_S4 = np.uint64(4)
_S2 = np.uint64(2)

STATUS_COMPLETE = 0
STATUS_CAP = 1
STATUS_LIMIT = 2


@jit
def ctz64(x):
    """Index of the lowest set bit of a non-zero uint64."""
    n = 0
    if (x & _M32) == _ZERO:
        n += 32
        x = x >> _S32
    if (x & _M16) == _ZERO:
        n += 16
        x = x >> _S16
    if (x & _M8) == _ZERO:
        n += 8
        x = x >> _S8
    if (x & _M4) == _ZERO:
        n += 4
        x = x >> _S4
    if (x & _M2) == _ZERO:
        n += 2
        x = x >> _S2
    if (x & _ONE) == _ZERO:
        n += 1
    return n


@jit
def popcount_rows(bits):
    """Number of set bits in each row of a 2-d uint64 array."""
    out = np.zeros(bits.shape[0], np.int64)
    for r in range(bits.shape[0]):
        c = 0
        for w in range(bits.shape[1]):
            x = bits[r, w]
            while x != _ZERO:
                x = x & (x - _ONE)
                c += 1
        out[r] = c
    return out


@jit
def color_sort(adj, cand, kmin, scratch_u, scratch_q, order, color):
    """Greedy sequential colouring of ``cand``.

    Vertices are written to ``order`` by ascending colour; those with colour
    below ``kmin`` cannot improve the incumbent and are left out of the list
    (they stay in the candidate set).  Returns the number listed.
    """
    nw = cand.shape[0]
    for w in range(nw):
        scratch_u[w] = cand[w]
    k = 0
    m = 0
    while True:
        left = False
        for w in range(nw):
            if scratch_u[w] != _ZERO:
                left = True
                break
        if not left:
            break
        k += 1
        for w in range(nw):
            scratch_q[w] = scratch_u[w]
        for w in range(nw):
            while scratch_q[w] != _ZERO:
                x = scratch_q[w]
                low = x & (~x + _ONE)
                v = w * 64 + ctz64(low)
                scratch_u[w] = scratch_u[w] & ~low
                scratch_q[w] = scratch_q[w] & ~low
                for u in range(w, nw):
                    scratch_q[u] = scratch_q[u] & ~adj[v, u]
                if k >= kmin:
                    order[m] = v
                    color[m] = k
                    m += 1
    return m


@jit
def clique_search(adj, cand, depth0, lower, cap, shared, node_limit, best_out):
    """Search for a clique larger than ``lower`` inside ``cand``.

    ``depth0`` is the size of a clique already fixed outside ``cand`` (all
    sizes compared against ``lower``, ``cap`` and ``shared`` include it).
    ``shared[0]`` is an incumbent size visible to concurrent searches; it is
    only used for pruning.  ``cap`` > 0 stops the search once reached and
    ``node_limit`` > 0 bounds the number of expanded nodes.

    Returns (best, found, nodes, status) where ``best_out[:found]`` holds the
    vertices (excluding the fixed prefix) of the best clique this call found;
    ``found`` is -1 if nothing larger than ``lower`` was found.
    """
    n = adj.shape[0]
    nw = adj.shape[1]
    su = np.empty(nw, np.uint64)
    sq = np.empty(nw, np.uint64)
    root_order = np.empty(n, np.int32)
    root_color = np.empty(n, np.int32)
    best = lower
    if shared[0] > best:
        best = shared[0]
    cnt0 = color_sort(adj, cand, 1, su, sq, root_order, root_color)
    found = -1
    if cnt0 == 0:
        if depth0 > best:
            return depth0, 0, 0, STATUS_COMPLETE
        return best, -1, 0, STATUS_COMPLETE
    maxd = root_color[cnt0 - 1] + 2
    P = np.zeros((maxd, nw), np.uint64)
    order = np.empty((maxd, n), np.int32)
    color = np.empty((maxd, n), np.int32)
    pos = np.empty(maxd, np.int64)
    cur = np.empty(maxd, np.int32)
    for w in range(nw):
        P[0, w] = cand[w]
    for i in range(cnt0):
        order[0, i] = root_order[i]
        color[0, i] = root_color[i]
    pos[0] = cnt0 - 1
    nodes = 0
    status = STATUS_COMPLETE
    d = 0
    while d >= 0:
        i = pos[d]
        if i < 0:
            d -= 1
            continue
        s = shared[0]
        if s > best:
            best = s
            if cap > 0 and best >= cap:
                status = STATUS_CAP
                break
        if depth0 + d + color[d, i] <= best:
            d -= 1
            continue
        v = order[d, i]
        pos[d] = i - 1
        nodes += 1
        cur[d] = v
        nonempty = False
        for w in range(nw):
            x = P[d, w] & adj[v, w]
            P[d + 1, w] = x
            if x != _ZERO:
                nonempty = True
        wv = v >> 6
        P[d, wv] = P[d, wv] & ~(_ONE << np.uint64(v & 63))
        if not nonempty:
            size = depth0 + d + 1
            if size > best:
                best = size
                found = d + 1
                for t in range(d + 1):
                    best_out[t] = cur[t]
                if shared[0] < best:
                    shared[0] = best
                if cap > 0 and best >= cap:
                    status = STATUS_CAP
                    break
        else:
            c = color_sort(adj, P[d + 1], best - depth0 - d, su, sq, order[d + 1], color[d + 1])
            d += 1
            pos[d] = c - 1
        if node_limit > 0 and nodes >= node_limit:
            status = STATUS_LIMIT
            break
    return best, found, nodes, status


def pack_adjacency(adj: np.ndarray) -> np.ndarray:
    """Boolean (n, n) matrix -> (n, W) uint64 bit rows."""
    n = adj.shape[0]
    nw = max(1, (n + 63) // 64)
    padded = np.zeros((n, nw * 64), dtype=bool)
    padded[:, :n] = adj
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False).reshape(n, nw)


def pack_set(members, n: int) -> np.ndarray:
    nw = max(1, (n + 63) // 64)
    mask = np.zeros(nw * 64, dtype=bool)
    mask[np.asarray(list(members), dtype=np.int64)] = True
    return np.packbits(mask, bitorder="little").view("<u8").astype(np.uint64).copy()


def unpack_set(bits: np.ndarray, n: int) -> np.ndarray:
    flags = np.unpackbits(bits.view(np.uint8), bitorder="little")[:n]
    return np.nonzero(flags)[0]
