import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gdperm.kernels import clique_search, color_sort, ctz64, pack_adjacency, pack_set, popcount_rows, unpack_set

from oracles import all_cliques_max


@pytest.mark.parametrize("b", [0, 1, 5, 31, 32, 33, 63])
def test_ctz(b):
    assert ctz64(np.uint64(1) << np.uint64(b)) == b
    assert ctz64((np.uint64(1) << np.uint64(b)) | (np.uint64(1) << np.uint64(63))) == b


def test_pack_round_trip():
    rng = np.random.default_rng(1)
    for n in (1, 63, 64, 65, 130):
        a = rng.random((n, n)) < 0.3
        bits = pack_adjacency(a)
        assert bits.shape == (n, (n + 63) // 64)
        for v in range(n):
            assert list(unpack_set(bits[v], n)) == list(np.nonzero(a[v])[0])
        assert list(popcount_rows(bits)) == list(a.sum(axis=1))
    s = pack_set([0, 64, 70], 80)
    assert list(unpack_set(s, 80)) == [0, 64, 70]


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    a = np.triu(rng.random((n, n)) < p, 1)
    return a | a.T


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 70), st.floats(0.05, 0.95), st.integers(0, 10_000))
def test_color_sort_is_proper_and_complete(n, p, seed):
    a = random_graph(n, p, seed)
    bits = pack_adjacency(a)
    cand = pack_set(range(n), n)
    order = np.empty(n, np.int32)
    color = np.empty(n, np.int32)
    nw = bits.shape[1]
    m = color_sort(bits, cand, 1, np.empty(nw, np.uint64), np.empty(nw, np.uint64), order, color)
    assert m == n and sorted(order[:m]) == list(range(n))
    assert list(color[:m]) == sorted(color[:m])
    for i in range(m):
        for j in range(i + 1, m):
            if color[i] == color[j]:
                assert not a[order[i], order[j]]


@pytest.mark.parametrize("seed", range(30))
def test_clique_search_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 26))
    a = random_graph(n, float(rng.uniform(0.2, 0.9)), seed)
    bits = pack_adjacency(a)
    out = np.zeros(n + 1, np.int32)
    best, found, nodes, status = clique_search(bits, pack_set(range(n), n), 0, 0, 0, np.zeros(1, np.int64), 0, out)
    assert best == all_cliques_max(n, lambda i, j: a[i, j])
    clique = out[:found]
    assert all(a[u, v] for u in clique for v in clique if u != v)


def test_clique_search_cap_and_node_limit():
    a = random_graph(40, 0.7, 3)
    bits = pack_adjacency(a)
    cand = pack_set(range(40), 40)
    out = np.zeros(41, np.int32)
    full, *_ = clique_search(bits, cand, 0, 0, 0, np.zeros(1, np.int64), 0, out)
    best, found, nodes, status = clique_search(bits, cand, 0, 0, 3, np.zeros(1, np.int64), 0, out)
    assert best >= 3 and status == 1 and nodes == best
    best, found, nodes, status = clique_search(bits, cand, 0, 0, 0, np.zeros(1, np.int64), 2, out)
    assert status == 2 and nodes == 2
    best, found, nodes, status = clique_search(bits, cand, 0, full, 0, np.zeros(1, np.int64), 0, out)
    assert best == full and found == -1


def test_pure_python_path_agrees():
    script = textwrap.dedent(
        """
        import numpy as np
        from gdperm._jit import HAVE_NUMBA
        from gdperm.solver import kappa, rho
        from gdperm.constructions import p4_plus_k1
        assert not HAVE_NUMBA
        r = kappa(p4_plus_k1(), 5)
        print(HAVE_NUMBA, r.value, rho(5).value, r.witness.words[0])
        """
    )
    env = dict(os.environ, GDPERM_NO_NUMBA="1")
    pure = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    from gdperm.constructions import p4_plus_k1
    from gdperm.solver import kappa

    r = kappa(p4_plus_k1(), 5)
    assert pure.stdout.split()[:3] == ["False", "10", "10"]
    assert pure.stdout.strip().endswith(str(r.witness.words[0]))
