"""Kernel backends: the compiled path must agree with the pure twin.

The pure backend is the reference (arbitrary precision); the compiled one
is an int64 fast path.  Every comparison here is exact.
"""

import random

import pytest

from obstructa import kernels
from obstructa.kernels import INT64_SAFE_BOUND, pure_backend

try:
    from obstructa.kernels import _speedups
except ImportError:
    _speedups = None

needs_compiled = pytest.mark.skipif(_speedups is None,
                                    reason="compiled kernel not built")


def random_table(rng, dim, density=0.4, lo=-3, hi=3):
    triples = []
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                if rng.random() < density:
                    c = rng.randint(lo, hi)
                    if c:
                        triples.append((i, j, k, c))
    return triples


def random_terms(rng, m, dim, count=4, lo=-5, hi=5):
    masks = rng.sample(range(1, 2 ** m), min(count, 2 ** m - 1))
    out = []
    for mask in sorted(masks):
        v = tuple(rng.randint(lo, hi) for _ in range(dim))
        if any(v):
            out.append((mask, v))
    return out


def test_pure_shuffle_sign_by_inversion_count():
    """Reference sign: count inversions in the merged bit list directly."""
    def naive(I, J):
        bits_i = [b for b in range(64) if I >> b & 1]
        bits_j = [b for b in range(64) if J >> b & 1]
        merged = bits_i + bits_j
        inv = sum(1 for x in range(len(merged))
                  for y in range(x + 1, len(merged))
                  if merged[x] > merged[y])
        return -1 if inv % 2 else 1

    rng = random.Random(3)
    for _ in range(300):
        I = rng.getrandbits(10)
        J = rng.getrandbits(10) & ~I
        assert pure_backend.shuffle_sign(I, J) == naive(I, J)


@needs_compiled
def test_backends_agree_on_random_workloads():
    rng = random.Random(20240915)
    for trial in range(40):
        dim = rng.randint(1, 6)
        m = rng.randint(2, 8)
        triples = random_table(rng, dim)
        hp = pure_backend.prepare_table(triples, dim)
        hc = _speedups.prepare_table(triples, dim)
        a = random_terms(rng, m, dim)
        b = random_terms(rng, m, dim)
        assert pure_backend.wedge_int(a, b, hp) == \
            _speedups.wedge_int(a, b, hc), trial


@needs_compiled
def test_backends_agree_on_empty_and_colliding():
    hp = pure_backend.prepare_table([(0, 0, 0, 1)], 1)
    hc = _speedups.prepare_table([(0, 0, 0, 1)], 1)
    assert pure_backend.wedge_int([], [], hp) == \
        _speedups.wedge_int([], [], hc) == []
    # same mask on both sides: wedge annihilates
    t = [(1, (1,))]
    assert pure_backend.wedge_int(t, t, hp) == \
        _speedups.wedge_int(t, t, hc) == []


def test_pure_handles_big_integers():
    big = 10 ** 30
    h = pure_backend.prepare_table([(0, 0, 0, 1)], 1)
    out = pure_backend.wedge_int([(1, (big,))], [(2, (big,))], h)
    assert out == [(3, (big * big,))]


def test_safe_bound_is_below_int64():
    assert INT64_SAFE_BOUND == 2 ** 62
    assert INT64_SAFE_BOUND * 2 <= 2 ** 63


def test_module_level_selection_matches_backend():
    assert kernels.backend_name() in ("pure", "cython")
    assert kernels.prepare_table is not None
    if kernels.BACKEND == "cython":
        assert _speedups is not None


def test_cancellation_drops_terms():
    # (x + y) ^ (x + y) with anticommuting product cancels exactly
    triples = [(0, 1, 0, 1), (1, 0, 0, -1)]
    h = pure_backend.prepare_table(triples, 2)
    a = [(1, (1, 1))]
    b = [(2, (1, 1))]
    out = pure_backend.wedge_int(a, b, h)
    assert out == []


def test_output_sorted_by_mask():
    rng = random.Random(5)
    triples = random_table(rng, 3, density=0.8)
    h = pure_backend.prepare_table(triples, 3)
    a = random_terms(rng, 6, 3, count=6)
    b = random_terms(rng, 6, 3, count=6)
    out = pure_backend.wedge_int(a, b, h)
    masks = [m for m, _ in out]
    assert masks == sorted(masks)
