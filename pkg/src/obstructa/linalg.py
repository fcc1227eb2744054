"""Exact linear algebra over the rationals.

Vectors are tuples of Scalar, matrices are lists of row tuples.  Everything
here is deterministic: pivoting is first-nonzero, so the reduced echelon
basis of a span is a canonical object and two spans are equal iff their
echelon bases are equal as lists.

No numpy here on purpose: these paths carry exact certificates.  The only
numeric-kernel code in the package lives in obstructa.kernels and handles
integer structure constants after denominators have been cleared.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from obstructa.errors import DimensionMismatch
from obstructa.rationals import Scalar, ZERO, ONE

Vector = tuple[Scalar, ...]


def vec(entries: Iterable) -> Vector:
    return tuple(Scalar(e) for e in entries)


def zero_vector(dim: int) -> Vector:
    return (ZERO,) * dim


def unit_vector(dim: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(dim))


def add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} != {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Scalar, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def is_zero(v: Vector) -> bool:
    return all(a == 0 for a in v)


def rref(rows: Sequence[Vector]) -> list[Vector]:
    """Reduced row echelon form, zero rows dropped.

    The result is the canonical basis of the row span: leading entries are
    1, pivot columns are cleared above and below, rows sorted by pivot.
    """
    work = [list(r) for r in rows if not is_zero(r)]
    if not work:
        return []
    ncols = len(work[0])
    for r in work:
        if len(r) != ncols:
            raise DimensionMismatch("ragged rows in rref")
    out: list[list[Scalar]] = []
    pivots: list[int] = []
    for row in work:
        # reduce against what we already have
        for prow, pcol in zip(out, pivots):
            if row[pcol] != 0:
                c = row[pcol]
                for j in range(pcol, ncols):
                    row[j] -= c * prow[j]
        lead = next((j for j in range(ncols) if row[j] != 0), None)
        if lead is None:
            continue
        inv = ONE / row[lead]
        for j in range(lead, ncols):
            row[j] *= inv
        # clear this column upward
        for prow in out:
            if prow[lead] != 0:
                c = prow[lead]
                for j in range(lead, ncols):
                    prow[j] -= c * row[j]
        out.append(row)
        pivots.append(lead)
    order = sorted(range(len(out)), key=lambda i: pivots[i])
    return [tuple(out[i]) for i in order]


def rank(rows: Sequence[Vector]) -> int:
    return len(rref(rows))


def reduce_against(basis: Sequence[Vector], v: Vector) -> Vector:
    """Residue of v modulo the span of an echelon basis.

    basis must already be in rref form; zero residue means membership.
    """
    row = list(v)
    for brow in basis:
        lead = next((j for j in range(len(brow)) if brow[j] != 0), None)
        if lead is not None and row[lead] != 0:
            c = row[lead]
            for j in range(lead, len(row)):
                row[j] -= c * brow[j]
    return tuple(row)


def in_span(basis: Sequence[Vector], v: Vector) -> bool:
    return is_zero(reduce_against(rref(basis) if _not_echelon(basis) else list(basis), v))


def _not_echelon(rows: Sequence[Vector]) -> bool:
    # cheap check: accept rows as echelon only when each leading entry is 1
    # and strictly to the right of the previous one.  Used to skip rework.
    last = -1
    for r in rows:
        lead = next((j for j in range(len(r)) if r[j] != 0), None)
        if lead is None or lead <= last or r[lead] != 1:
            return True
        last = lead
    return False


def coords_in_basis(basis: Sequence[Vector], v: Vector) -> list[Scalar] | None:
    """Coefficients of v in the given (independent) basis, or None.

    Solves the small system exactly; basis need not be echelon.
    """
    if not basis:
        return [] if is_zero(v) else None
    n = len(v)
    m = len(basis)
    # augmented system: columns are basis vectors
    rows = [[basis[i][j] for i in range(m)] + [v[j]] for j in range(n)]
    reduced = rref([tuple(r) for r in rows])
    coeffs: list[Scalar] = [ZERO] * m
    for r in reduced:
        lead = next((j for j in range(m + 1) if r[j] != 0), None)
        if lead is None:
            continue
        if lead == m:
            return None  # inconsistent: v has a component outside the span
        coeffs[lead] = r[m]
        # independence of basis not assumed checked; any free mixing shows up
        # as a nonzero off-pivot coefficient times an undetermined variable,
        # which we reject by requiring the row to be otherwise clean
        for j in range(lead + 1, m):
            if r[j] != 0:
                return None
    return coeffs


def extend_basis(basis: Sequence[Vector], candidates: Sequence[Vector]) -> list[Vector]:
    """Echelon basis of span(basis) extended by whichever candidates add rank."""
    return rref(list(basis) + list(candidates))


def intersect_spans(a: Sequence[Vector], b: Sequence[Vector]) -> list[Vector]:
    """Basis of span(a) ∩ span(b) by the Zassenhaus block trick."""
    if not a or not b:
        return []
    n = len(a[0])
    big: list[Vector] = []
    for v in a:
        big.append(tuple(v) + tuple(v))
    for v in b:
        big.append(tuple(v) + zero_vector(n))
    reduced = rref(big)
    out = []
    for r in reduced:
        left, right = r[:n], r[n:]
        if is_zero(left) and not is_zero(right):
            out.append(right)
    return rref(out)


def kernel_basis(rows: Sequence[Vector], ncols: int) -> list[Vector]:
    """Basis of {x : M x = 0} where rows are the rows of M."""
    reduced = rref(rows)
    pivots = []
    for r in reduced:
        lead = next((j for j in range(ncols) if r[j] != 0), None)
        if lead is not None:
            pivots.append(lead)
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for r, p in zip(reduced, pivots):
            x[p] = -r[f]
        out.append(tuple(x))
    return out


def matmul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch(f"matmul shapes {len(a)}x{len(a[0])} and {len(b)}x{len(b[0])}")
    bt = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]
