"""Pure-Python integer wedge kernel.

Reference implementation of the kernel contract; arbitrary-precision by
construction.  Forms are lists of (mask, coeff-list) with strictly
increasing masks encoded as bitmasks over the frame generators.
"""

from __future__ import annotations


def prepare_table(triples, dim: int):
    """triples: iterable of (i, j, k, c) integer structure constants."""
    tbl: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i, j, k, c in triples:
        if c:
            tbl.setdefault((i, j), []).append((k, c))
    return ("pure", tbl, dim)


def shuffle_sign(I: int, J: int) -> int:
    """Sign of merging disjoint increasing multi-indices I then J."""
    inv = 0
    j = J
    while j:
        low = j & (-j)
        bit = low.bit_length() - 1
        inv += (I >> (bit + 1)).bit_count()
        j ^= low
    return -1 if inv & 1 else 1


def wedge_int(a_terms, b_terms, handle):
    tag, tbl, dim = handle
    acc: dict[int, list[int]] = {}
    for ma, va in a_terms:
        for mb, vb in b_terms:
            if ma & mb:
                continue
            s = shuffle_sign(ma, mb)
            key = ma | mb
            out = acc.get(key)
            if out is None:
                out = [0] * dim
                acc[key] = out
            for i, x in enumerate(va):
                if not x:
                    continue
                sx = s * x
                for j, y in enumerate(vb):
                    if not y:
                        continue
                    ent = tbl.get((i, j))
                    if not ent:
                        continue
                    cxy = sx * y
                    for k, c in ent:
                        out[k] += cxy * c
    return sorted((m, tuple(v)) for m, v in acc.items() if any(v))
