"""Catalog of concrete algebras.

Matrix families are defined by explicit basis matrices inside gl(N).  Each
family is delivered in two flavors:

  product="bracket"  the Lie algebra: structure constants are commutators,
                     with a MatrixRep (rule "commutator") attached;
  product="matrix"   matrix multiplication.  Families that are not closed
                     under it (so, u, su, sp, ...) are returned as their
                     associative envelope inside gl(N), with the family
                     span designated as decomposition[0] and the flag
                     "family_subspace_is_A0" set.

Defaults: Lie families default to "bracket"; gl / strictly_upper /
upper_triangular default to "matrix"; "algebra" is accepted as an alias
for "matrix".
"""

from __future__ import annotations

from typing import Sequence

from obstructa.errors import CatalogError, InputError
from obstructa.algebra import (
    Algebra,
    Grading,
    Matrix,
    MatrixRep,
    cayley_dickson,
    mat_commutator,
    identity_matrix,
)
from obstructa.linalg import (
    Vector,
    matmul,
    rref,
    reduce_against,
    unit_vector,
    zero_vector,
    is_zero,
)
from obstructa.rationals import Scalar, ZERO, ONE

_LIE_DEFAULT = "bracket"
_MATRIX_DEFAULT = "matrix"


def _E(N: int, a: int, b: int) -> Matrix:
    return tuple(tuple(ONE if (r == a and c == b) else ZERO for c in range(N))
                 for r in range(N))


def _mat_add(*ms: Matrix) -> Matrix:
    N = len(ms[0])
    return tuple(tuple(sum((m[r][c] for m in ms), ZERO) for c in range(N))
                 for r in range(N))


def _mat_neg(m: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in m)


def _flat(m: Matrix) -> Vector:
    return tuple(x for row in m for x in row)


class _SpanSolver:
    """Express vectors in a fixed independent spanning set, exactly.

    Rows are reduced once with coefficient bookkeeping; each solve costs
    one sweep.  Returns None when the vector is outside the span.
    """

    def __init__(self, flats: Sequence[Vector]):
        self.dim = len(flats)
        self.width = len(flats[0]) if flats else 0
        rows = []
        for i, f in enumerate(flats):
            rows.append(tuple(f) + unit_vector(self.dim, i))
        self.echelon = rref(rows)
        if len(self.echelon) != self.dim:
            raise CatalogError("family basis matrices are linearly dependent")

    def solve(self, f: Vector) -> list[Scalar] | None:
        residue = list(f)
        coords = [ZERO] * self.dim
        for row in self.echelon:
            lead = next(j for j in range(self.width + self.dim) if row[j] != 0)
            if lead >= self.width:
                continue
            if residue[lead] != 0:
                a = residue[lead]
                for j in range(self.width):
                    residue[j] -= a * row[j]
                for j in range(self.dim):
                    coords[j] += a * row[self.width + j]
        if any(x != 0 for x in residue):
            return None
        return coords


# -- family basis builders ---------------------------------------------------

def _fam_gl(n: int):
    mats = []
    labels = []
    for a in range(n):
        for b in range(n):
            mats.append(_E(n, a, b))
            labels.append(f"E{a+1}{b+1}")
    return n, mats, labels, _MATRIX_DEFAULT, None


def _fam_so(n: int):
    mats = []
    labels = []
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    if n == 3:
        # ordered so the bracket is the cyclic [L1,L2]=L3, [L2,L3]=L1, [L3,L1]=L2
        pairs = [(1, 2), (0, 2), (0, 1)]
    for a, b in pairs:
        mats.append(_mat_add(_E(n, a, b), _mat_neg(_E(n, b, a))))
        labels.append(f"L{len(labels)+1}" if n == 3 else f"F{a+1}{b+1}")
    return n, mats, labels, _LIE_DEFAULT, None


def _fam_so_pq(p: int, q: int):
    n = p + q
    eta = [ONE] * p + [-ONE] * q
    mats = []
    labels = []
    for a in range(n):
        for b in range(a + 1, n):
            # A_ba = -eta_a eta_b A_ab
            m = _mat_add(_E(n, a, b), _mat_neg(_scale_mat(eta[a] * eta[b], _E(n, b, a))))
            mats.append(m)
            labels.append(f"G{a+1}{b+1}")
    return n, mats, labels, _LIE_DEFAULT, None


def _scale_mat(c: Scalar, m: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in m)


def _realify(X: Matrix, Y: Matrix) -> Matrix:
    """Complex matrix X + iY as the real block matrix [[X, -Y], [Y, X]]."""
    n = len(X)
    out = []
    for r in range(n):
        out.append(tuple(X[r]) + tuple(-y for y in Y[r]))
    for r in range(n):
        out.append(tuple(Y[r]) + tuple(X[r]))
    return tuple(out)


def _fam_u(n: int):
    # anti-hermitian X + iY: X skew, Y symmetric; realified
    Zn = tuple(zero_vector(n) for _ in range(n))
    mats = []
    labels = []
    for a in range(n):
        for b in range(a + 1, n):
            mats.append(_realify(_mat_add(_E(n, a, b), _mat_neg(_E(n, b, a))), Zn))
            labels.append(f"X{a+1}{b+1}")
            mats.append(_realify(Zn, _mat_add(_E(n, a, b), _E(n, b, a))))
            labels.append(f"Y{a+1}{b+1}")
    for a in range(n):
        mats.append(_realify(Zn, _E(n, a, a)))
        labels.append(f"D{a+1}")
    return 2 * n, mats, labels, _LIE_DEFAULT, None


def _fam_su(n: int):
    Zn = tuple(zero_vector(n) for _ in range(n))
    mats = []
    labels = []
    for a in range(n):
        for b in range(a + 1, n):
            mats.append(_realify(_mat_add(_E(n, a, b), _mat_neg(_E(n, b, a))), Zn))
            labels.append(f"X{a+1}{b+1}")
            mats.append(_realify(Zn, _mat_add(_E(n, a, b), _E(n, b, a))))
            labels.append(f"Y{a+1}{b+1}")
    for a in range(n - 1):
        mats.append(_realify(Zn, _mat_add(_E(n, a, a), _mat_neg(_E(n, a + 1, a + 1)))))
        labels.append(f"H{a+1}")
    return 2 * n, mats, labels, _LIE_DEFAULT, None


def _fam_sp(n: int):
    # sp(2n, R): [[P, Q], [R, -P^T]] with Q, R symmetric
    N = 2 * n
    mats = []
    labels = []
    for a in range(n):
        for b in range(n):
            mats.append(_mat_add(_E(N, a, b), _mat_neg(_E(N, n + b, n + a))))
            labels.append(f"A{a+1}{b+1}")
    for a in range(n):
        for b in range(a, n):
            if a == b:
                mats.append(_E(N, a, n + a))
            else:
                mats.append(_mat_add(_E(N, a, n + b), _E(N, b, n + a)))
            labels.append(f"B{a+1}{b+1}")
    for a in range(n):
        for b in range(a, n):
            if a == b:
                mats.append(_E(N, n + a, a))
            else:
                mats.append(_mat_add(_E(N, n + a, b), _E(N, n + b, a)))
            labels.append(f"C{a+1}{b+1}")
    return N, mats, labels, _LIE_DEFAULT, None


def _fam_heisenberg(n: int):
    N = n + 2
    mats = []
    labels = []
    for i in range(n):
        mats.append(_E(N, 0, 1 + i))
        labels.append(f"x{i+1}")
    for i in range(n):
        mats.append(_E(N, 1 + i, N - 1))
        labels.append(f"y{i+1}")
    mats.append(_E(N, 0, N - 1))
    labels.append("z")
    grading = Grading("Z", tuple([1] * n + [1] * n + [2]))
    return N, mats, labels, _LIE_DEFAULT, grading


def _fam_strictly_upper(n: int):
    mats = []
    labels = []
    degrees = []
    for a in range(n):
        for b in range(a + 1, n):
            mats.append(_E(n, a, b))
            labels.append(f"E{a+1}{b+1}")
            degrees.append(b - a)
    return n, mats, labels, _MATRIX_DEFAULT, Grading("Z", tuple(degrees))


def _fam_upper_triangular(n: int):
    mats = []
    labels = []
    degrees = []
    for a in range(n):
        for b in range(a, n):
            mats.append(_E(n, a, b))
            labels.append(f"E{a+1}{b+1}")
            degrees.append(b - a)
    return n, mats, labels, _MATRIX_DEFAULT, Grading("Z", tuple(degrees))


_FAMILIES = {
    "gl": (_fam_gl, 1),
    "so": (_fam_so, 1),
    "so_pq": (_fam_so_pq, 2),
    "u": (_fam_u, 1),
    "su": (_fam_su, 1),
    "sp": (_fam_sp, 1),
    "heisenberg": (_fam_heisenberg, 1),
    "strictly_upper": (_fam_strictly_upper, 1),
    "upper_triangular": (_fam_upper_triangular, 1),
}

_ALIASES = {
    "u(n)-as-real": "u",
    "su(n)-as-real": "su",
    "sp(n;r)": "sp",
    "so(p,q)": "so_pq",
    "cd": "cd_tower",
    "cd_tower": "cd_tower",
}


def _bracket_algebra(name: str, N: int, mats: list[Matrix], labels: list[str],
                     grading: Grading | None) -> Algebra:
    solver = _SpanSolver([_flat(m) for m in mats])
    table: dict[tuple[int, int], Vector] = {}
    for i in range(len(mats)):
        for j in range(len(mats)):
            c = solver.solve(_flat(mat_commutator(mats[i], mats[j])))
            if c is None:
                raise CatalogError(f"{name}: family not closed under commutator")
            table[(i, j)] = tuple(c)
    return Algebra(name, len(mats), labels, table,
                   grading=grading,
                   representation=MatrixRep(N, tuple(mats), "commutator"),
                   provenance="catalog:bracket")


def _matrix_algebra(name: str, N: int, mats: list[Matrix], labels: list[str],
                    grading: Grading | None) -> Algebra:
    """Matrix-product flavor.  If the family span is not product-closed,
    grow it to its associative envelope and mark the family as A0."""
    family_size = len(mats)
    basis = list(mats)
    lbls = list(labels)
    while True:
        echelon = rref([_flat(m) for m in basis])
        new: list[Matrix] = []
        for a in basis:
            for b in basis:
                pt = tuple(tuple(r) for r in matmul(a, b))
                f = _flat(pt)
                if not is_zero(reduce_against(echelon, f)):
                    new.append(pt)
                    echelon = rref(list(echelon) + [f])
        if not new:
            break
        for m in new:
            basis.append(m)
            lbls.append(f"m{len(basis)}")
    solver = _SpanSolver([_flat(m) for m in basis])
    table: dict[tuple[int, int], Vector] = {}
    for i in range(len(basis)):
        for j in range(len(basis)):
            p = matmul(basis[i], basis[j])
            c = solver.solve(_flat(tuple(tuple(r) for r in p)))
            assert c is not None  # closure loop just finished
            table[(i, j)] = tuple(c)
    dim = len(basis)
    enlarged = dim > family_size
    alg = Algebra(name, dim, lbls, table,
                  grading=None if enlarged else grading,
                  representation=MatrixRep(N, tuple(basis), "matrix"),
                  flags=frozenset({"family_subspace_is_A0"}) if enlarged else frozenset(),
                  provenance="catalog:matrix")
    if enlarged:
        fam = alg.subspace([unit_vector(dim, i) for i in range(family_size)])
        comp = alg.subspace([unit_vector(dim, i) for i in range(family_size, dim)])
        alg.decomposition = (fam, comp)
    return alg


def direct_sum(*algs: Algebra, name: str | None = None) -> Algebra:
    if not algs:
        raise CatalogError("direct_sum needs at least one summand")
    dims = [a.dim for a in algs]
    total = sum(dims)
    offsets = []
    acc = 0
    for d in dims:
        offsets.append(acc)
        acc += d
    table: dict[tuple[int, int], Vector] = {}
    labels: list[str] = []
    for t, a in enumerate(algs):
        off = offsets[t]
        labels.extend(f"s{t+1}:{lbl}" for lbl in a.basis_labels)
        for (i, j), v in a.table.items():
            emb = zero_vector(off) + tuple(v) + zero_vector(total - off - a.dim)
            table[(off + i, off + j)] = emb
    involution = None
    if all(a.involution is not None for a in algs):
        rows = []
        for t, a in enumerate(algs):
            off = offsets[t]
            for r in range(a.dim):
                rows.append(zero_vector(off) + tuple(a.involution[r]) +
                            zero_vector(total - off - a.dim))
        involution = tuple(rows)
    grading = None
    kinds = {repr(a.grading.kind) for a in algs if a.grading is not None}
    if len(kinds) == 1 and all(a.grading is not None for a in algs):
        degrees = tuple(d for a in algs for d in a.grading.degrees)
        grading = Grading(algs[0].grading.kind, degrees)
    rep = None
    rules = {a.representation.rule for a in algs if a.representation is not None}
    if len(rules) == 1 and all(a.representation is not None for a in algs):
        rep_dims = [a.representation.rep_dim for a in algs]
        R = sum(rep_dims)
        mats = []
        racc = 0
        for t, a in enumerate(algs):
            r = a.representation
            for m in r.matrices:
                rows = []
                for rr in range(R):
                    if racc <= rr < racc + r.rep_dim:
                        rows.append(zero_vector(racc) + tuple(m[rr - racc]) +
                                    zero_vector(R - racc - r.rep_dim))
                    else:
                        rows.append(zero_vector(R))
                mats.append(tuple(rows))
            racc += r.rep_dim
        rep = MatrixRep(R, tuple(mats), rules.pop())
    return Algebra(name or "(" + " + ".join(a.name for a in algs) + ")",
                   total, labels, table, involution=involution,
                   grading=grading, representation=rep,
                   provenance="catalog:direct_sum")


def complexify(a: Algebra, name: str | None = None) -> Algebra:
    """A tensor C as a real algebra, Z mod 2 graded by real/imaginary part."""
    d = a.dim
    n = 2 * d
    table: dict[tuple[int, int], Vector] = {}
    for (i, j), v in a.table.items():
        re = tuple(v) + zero_vector(d)
        im = zero_vector(d) + tuple(v)
        table[(i, j)] = re
        table[(i, d + j)] = im
        table[(d + i, j)] = im
        table[(d + i, d + j)] = tuple(-x for x in v) + zero_vector(d)
    labels = tuple(f"re:{l}" for l in a.basis_labels) + \
             tuple(f"im:{l}" for l in a.basis_labels)
    inv_rows = [unit_vector(n, r) for r in range(d)] + \
               [tuple(-ONE if c == d + r else ZERO for c in range(n)) for r in range(d)]
    return Algebra(name or f"complexify({a.name})", n, labels, table,
                   involution=tuple(inv_rows),
                   grading=Grading(("Z_mod", 2), tuple([0] * d + [1] * d)),
                   provenance="catalog:complexify")


def real_algebra() -> Algebra:
    return Algebra("R", 1, ("1",), {(0, 0): (ONE,)},
                   involution=((ONE,),), provenance="catalog:R")


def cd_tower(base, l: int) -> Algebra:
    if isinstance(base, str):
        if base.upper() != "R":
            raise CatalogError(f"unknown CD tower base {base!r}")
        alg = real_algebra()
    elif isinstance(base, Algebra):
        alg = base
    else:
        raise CatalogError("CD tower base must be 'R' or an Algebra")
    if l < 0:
        raise CatalogError("CD tower level must be nonnegative")
    for _ in range(l):
        alg = cayley_dickson(alg)
    return alg


def cd_imaginary_bracket(l: int) -> Algebra:
    """Imaginary part of CD^l(R) under the commutator.

    Closed because unit products have no real part off the diagonal; the
    construction asserts this rather than trusting it.
    """
    full = cd_tower("R", l)
    d = full.dim
    m = d - 1
    table: dict[tuple[int, int], Vector] = {}
    for i in range(1, d):
        ei = unit_vector(d, i)
        for j in range(1, d):
            ej = unit_vector(d, j)
            ij = full.multiply_vectors(ei, ej)
            ji = full.multiply_vectors(ej, ei)
            br = tuple(x - y for x, y in zip(ij, ji))
            if br[0] != 0:
                raise CatalogError("imaginary part not bracket-closed")
            if not is_zero(br[1:]):
                table[(i - 1, j - 1)] = br[1:]
    labels = full.basis_labels[1:]
    return Algebra(f"im(CD^{l}(R))", m, labels, table,
                   provenance="catalog:cd_imaginary_bracket")


def catalog(name, *params, product: str | None = None) -> Algebra:
    """Build a catalog algebra by name.

    Names: gl(n), so(n), so(p,q), u(n)-as-real, su(n)-as-real, sp(n;R),
    heisenberg(n), strictly_upper(n), upper_triangular(n),
    direct_sum(A, B, ...), complexify(A), CD_tower(base, l).
    """
    key = str(name).strip().lower()
    key = _ALIASES.get(key, key)
    if key == "direct_sum":
        return direct_sum(*params)
    if key == "complexify":
        if len(params) != 1 or not isinstance(params[0], Algebra):
            raise CatalogError("complexify takes one Algebra")
        return complexify(params[0])
    if key == "cd_tower":
        if len(params) != 2:
            raise CatalogError("CD_tower takes (base, level)")
        return cd_tower(params[0], int(params[1]))
    if key not in _FAMILIES:
        known = ", ".join(sorted(_FAMILIES) + ["direct_sum", "complexify",
                                               "cd_tower"])
        raise CatalogError(f"unknown catalog name {name!r}; know {known}")
    builder, argc = _FAMILIES[key]
    if len(params) != argc:
        raise CatalogError(f"{key} takes {argc} parameter(s), got {len(params)}")
    ints = []
    for p in params:
        p = int(p)
        if p < 1:
            raise CatalogError(f"{key} parameters must be positive")
        ints.append(p)
    N, mats, labels, default, grading = builder(*ints)
    mode = product or default
    if mode in ("matrix", "algebra"):
        pretty = _pretty_name(key, ints)
        return _matrix_algebra(pretty, N, mats, labels, grading)
    if mode == "bracket":
        pretty = _pretty_name(key, ints)
        return _bracket_algebra(pretty, N, mats, labels, grading)
    raise CatalogError(f"unknown product flavor {product!r}")


def _pretty_name(key: str, ints: list[int]) -> str:
    if key == "so_pq":
        return f"so({ints[0]},{ints[1]})"
    return f"{key}({','.join(str(i) for i in ints)})"
