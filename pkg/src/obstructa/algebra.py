"""Finite-dimensional algebras over exact rationals.

An algebra is a sparse table of structure constants: (i, j) -> the
coordinate vector of e_i * e_j.  Omitted pairs multiply to zero.  On top of
that sit elements, subspaces, gradings, matrix representations, morphisms,
identity checks, the two classical series, and the standard constructions
(Cayley-Dickson doubling, semidirect products, pulled-back products).

Everything is a plain immutable-by-convention value; nothing mutates after
construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from obstructa.errors import (
    DimensionMismatch,
    InputError,
    MissingInvolution,
    AmbiguousPowerError,
    RepresentationError,
    SectionError,
    GradingError,
)
from obstructa.linalg import (
    Vector,
    add,
    sub,
    scale,
    is_zero,
    rref,
    rank,
    reduce_against,
    zero_vector,
    unit_vector,
    matmul,
    intersect_spans,
    vec,
)
from obstructa.rationals import Scalar, ZERO, ONE

Matrix = tuple[Vector, ...]  # rows


def mat_apply(m: Matrix, v: Vector) -> Vector:
    return tuple(sum((row[i] * v[i] for i in range(len(v)) if v[i] != 0), ZERO)
                 for row in m)


def mat_from_rows(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def mat_commutator(a: Matrix, b: Matrix) -> Matrix:
    ab = matmul(a, b)
    ba = matmul(b, a)
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(ab, ba))


def identity_matrix(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def zero_matrix(n: int, m: int | None = None) -> Matrix:
    return tuple(zero_vector(m if m is not None else n) for _ in range(n))


@dataclass(eq=False)
class Grading:
    """Degree labels for the basis, over Z, Z^d, or Z mod q.

    kind: "Z", ("Z^d", d), or ("Z_mod", q).  degrees[i] is the label of
    basis vector i: an int for Z / Z_mod, a tuple of ints for Z^d.
    """
    kind: object
    degrees: tuple

    def add_labels(self, a, b):
        if self.kind == "Z":
            return a + b
        tag, n = self.kind
        if tag == "Z^d":
            return tuple(x + y for x, y in zip(a, b))
        if tag == "Z_mod":
            return (a + b) % n
        raise InputError(f"unknown grading kind {self.kind!r}")

    def shift(self, l: int) -> "Grading":
        if self.kind == "Z":
            return Grading("Z", tuple(d - l for d in self.degrees))
        tag, n = self.kind
        if tag == "Z_mod":
            return Grading(self.kind, tuple((d - l) % n for d in self.degrees))
        raise InputError("grade shift only for Z and Z_mod gradings")

    def support(self) -> list:
        return sorted(set(self.degrees))


@dataclass(eq=False)
class MatrixRep:
    """One rep_dim x rep_dim matrix per basis vector.

    rule says what "multiplicative" means on the matrix side:
    "matrix" for M(x*y) = M(x)M(y), "commutator" for
    M(x*y) = M(x)M(y) - M(y)M(x).  Bracket algebras carry the latter.
    """
    rep_dim: int
    matrices: tuple[Matrix, ...]
    rule: str = "matrix"

    def represent(self, coords: Vector) -> Matrix:
        n = self.rep_dim
        out = [[ZERO] * n for _ in range(n)]
        for i, c in enumerate(coords):
            if c == 0:
                continue
            m = self.matrices[i]
            for r in range(n):
                row = m[r]
                orow = out[r]
                for s in range(n):
                    if row[s] != 0:
                        orow[s] += c * row[s]
        return tuple(tuple(r) for r in out)

    def trace_vector(self) -> Vector:
        return tuple(sum((m[i][i] for i in range(self.rep_dim)), ZERO)
                     for m in self.matrices)


class Algebra:
    """Structure-constant algebra over Scalar.

    table maps (i, j) to the dense coordinate vector of e_i * e_j; pairs
    absent from the table multiply to zero.
    """

    def __init__(self, name: str, dim: int, basis_labels: Sequence[str],
                 table: dict[tuple[int, int], Vector],
                 involution: Matrix | None = None,
                 grading: Grading | None = None,
                 representation: MatrixRep | None = None,
                 decomposition: tuple["Subspace", "Subspace"] | None = None,
                 flags: frozenset[str] = frozenset(),
                 provenance: str = "constructed"):
        if dim < 0:
            raise InputError("negative dimension")
        if len(basis_labels) != dim:
            raise InputError(f"{len(basis_labels)} labels for dim {dim}")
        clean: dict[tuple[int, int], Vector] = {}
        for (i, j), v in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise InputError(f"structure constant index ({i},{j}) out of range")
            if len(v) != dim:
                raise DimensionMismatch(f"structure vector for ({i},{j}) has length {len(v)}")
            v = tuple(Scalar(c) for c in v)
            if not is_zero(v):
                clean[(i, j)] = v
        self.name = name
        self.dim = dim
        self.basis_labels = tuple(basis_labels)
        self.table = clean
        self.involution = involution
        self.grading = grading
        self.representation = representation
        self.decomposition = decomposition
        self.flags = frozenset(flags)
        self.provenance = provenance
        self.involution_character: str | None = None
        if involution is not None:
            if len(involution) != dim or any(len(r) != dim for r in involution):
                raise DimensionMismatch("involution matrix shape mismatch")
            for i in range(dim):
                twice = mat_apply(involution, mat_apply(involution, unit_vector(dim, i)))
                if twice != unit_vector(dim, i):
                    raise InputError("involution applied twice is not the identity")
            self.involution_character = _involution_character(self)
        if grading is not None:
            _check_grading(self, grading)
        if decomposition is not None:
            a0, a1 = decomposition
            joint = rref(list(a0.basis) + list(a1.basis))
            if len(joint) != dim or intersect_spans(a0.basis, a1.basis):
                raise InputError("decomposition does not split the algebra")

    # -- products ---------------------------------------------------------

    def product_vector(self, i: int, j: int) -> Vector:
        return self.table.get((i, j), zero_vector(self.dim))

    def bracket_vector(self, i: int, j: int) -> Vector:
        return sub(self.product_vector(i, j), self.product_vector(j, i))

    def multiply_vectors(self, u: Vector, v: Vector) -> Vector:
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                entry = self.table.get((i, j))
                if entry is None:
                    continue
                c = a * b
                for k, s in enumerate(entry):
                    if s != 0:
                        out[k] += c * s
        return tuple(out)

    # -- element / subspace factories -------------------------------------

    def zero(self) -> "Element":
        return Element(self, zero_vector(self.dim))

    def basis_element(self, i: int) -> "Element":
        if not 0 <= i < self.dim:
            raise InputError(f"basis index {i} out of range for dim {self.dim}")
        return Element(self, unit_vector(self.dim, i))

    def element(self, coords: Iterable) -> "Element":
        return Element(self, vec(coords))

    def subspace(self, vectors: Iterable[Vector]) -> "Subspace":
        return Subspace(self, rref([tuple(v) for v in vectors]))

    def whole(self) -> "Subspace":
        return Subspace(self, [unit_vector(self.dim, i) for i in range(self.dim)])

    def conjugate_vector(self, v: Vector) -> Vector:
        if self.involution is None:
            raise MissingInvolution(f"algebra {self.name!r} has no involution")
        return mat_apply(self.involution, v)

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, dim={self.dim})"


@dataclass(eq=False)
class Element:
    algebra: Algebra
    coords: Vector

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise DimensionMismatch(
                f"element has {len(self.coords)} coords in dim {self.algebra.dim}")

    def _peer(self, other: "Element"):
        if other.algebra is not self.algebra:
            raise DimensionMismatch("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._peer(other)
        return Element(self.algebra, add(self.coords, other.coords))

    def __sub__(self, other: "Element") -> "Element":
        self._peer(other)
        return Element(self.algebra, sub(self.coords, other.coords))

    def __neg__(self) -> "Element":
        return Element(self.algebra, scale(Scalar(-1), self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            self._peer(other)
            return Element(self.algebra,
                           self.algebra.multiply_vectors(self.coords, other.coords))
        return Element(self.algebra, scale(Scalar(other), self.coords))

    def __rmul__(self, other):
        return Element(self.algebra, scale(Scalar(other), self.coords))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Element) and other.algebra is self.algebra
                and other.coords == self.coords)

    def is_zero(self) -> bool:
        return is_zero(self.coords)

    def conjugate(self) -> "Element":
        return Element(self.algebra, self.algebra.conjugate_vector(self.coords))

    def __repr__(self) -> str:
        labels = self.algebra.basis_labels
        parts = [f"{c}*{labels[i]}" for i, c in enumerate(self.coords) if c != 0]
        return " + ".join(parts) if parts else "0"


class Subspace:
    """Span with a cached reduced echelon basis; membership is exact."""

    def __init__(self, algebra: Algebra, echelon_basis: Sequence[Vector]):
        self.algebra = algebra
        self.basis = tuple(echelon_basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        coords = v.coords if isinstance(v, Element) else tuple(v)
        return is_zero(reduce_against(self.basis, coords))

    def is_zero(self) -> bool:
        return not self.basis

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and other.algebra is self.algebra
                and other.basis == self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.algebra, rref(list(self.basis) + list(other.basis)))

    def intersect(self, other: "Subspace") -> "Subspace":
        return Subspace(self.algebra, intersect_spans(self.basis, other.basis))

    def product_span(self, other: "Subspace") -> list[Vector]:
        alg = self.algebra
        out = []
        for u in self.basis:
            for v in other.basis:
                w = alg.multiply_vectors(u, v)
                if not is_zero(w):
                    out.append(w)
        return out

    def elements(self) -> list[Element]:
        return [Element(self.algebra, v) for v in self.basis]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} of {self.algebra.name})"


@dataclass(eq=False)
class Morphism:
    """Linear map between algebras; matrix is target_dim x source_dim."""
    source: Algebra
    target: Algebra
    matrix: Matrix

    def __post_init__(self):
        if len(self.matrix) != self.target.dim:
            raise DimensionMismatch("morphism matrix row count != target dim")
        for r in self.matrix:
            if len(r) != self.source.dim:
                raise DimensionMismatch("morphism matrix column count != source dim")

    def apply(self, x) -> Element:
        coords = x.coords if isinstance(x, Element) else tuple(x)
        return Element(self.target, mat_apply(self.matrix, coords))

    def compose(self, inner: "Morphism") -> "Morphism":
        if inner.target is not self.source:
            raise DimensionMismatch("composition mismatch")
        rows = matmul([list(r) for r in self.matrix], [list(r) for r in inner.matrix])
        return Morphism(inner.source, self.target, tuple(tuple(r) for r in rows))


@dataclass(eq=False)
class SeriesReport:
    kind: str
    chain: list[Subspace]
    stabilized: bool
    degree: int | None
    zero_algebra: bool = False


@dataclass(eq=False)
class IdentityReport:
    identity: str
    holds: bool
    witness: tuple | None
    universe: str


# -- parenthesization trees -----------------------------------------------
# A tree is either an int leaf (slot index) or a pair (left, right).

PAREN_SCHEMES = ("left", "right", "balanced", "all")
MAX_ALL_ARITY = 8


def tree_left(s: int):
    t = 0
    for i in range(1, s):
        t = (t, i)
    return t


def tree_right(s: int):
    t = s - 1
    for i in range(s - 2, -1, -1):
        t = (i, t)
    return t


def tree_balanced(s: int, offset: int = 0):
    if s == 1:
        return offset
    lo = s - s // 2
    return (tree_balanced(lo, offset), tree_balanced(s // 2, offset + lo))


@lru_cache(maxsize=None)
def _all_shapes(s: int) -> tuple:
    # full binary trees over leaves 0..s-1 in order; Catalan(s-1) of them
    if s == 1:
        return (0,)
    out = []
    for k in range(1, s):
        for lt in _all_shapes(k):
            for rt in _all_shapes(s - k):
                out.append((lt, _shift_tree(rt, k)))
    return tuple(out)


def _shift_tree(t, by: int):
    if isinstance(t, int):
        return t + by
    return (_shift_tree(t[0], by), _shift_tree(t[1], by))


def trees_for_scheme(scheme: str, s: int) -> list:
    if s < 1:
        raise InputError("power arity must be >= 1")
    if scheme == "left":
        return [tree_left(s)]
    if scheme == "right":
        return [tree_right(s)]
    if scheme == "balanced":
        return [tree_balanced(s)]
    if scheme == "all":
        if s > MAX_ALL_ARITY:
            raise InputError(f"paren=all capped at arity {MAX_ALL_ARITY}, got {s}")
        return list(_all_shapes(s))
    raise InputError(f"unknown parenthesization scheme {scheme!r}")


def tree_to_string(t, leaf: str = "v") -> str:
    if isinstance(t, int):
        return leaf
    return f"({tree_to_string(t[0], leaf)}*{tree_to_string(t[1], leaf)})"


def tree_leaves(t) -> list[int]:
    if isinstance(t, int):
        return [t]
    return tree_leaves(t[0]) + tree_leaves(t[1])


def eval_tree(t, args: Sequence[Element]) -> Element:
    if isinstance(t, int):
        return args[t]
    return eval_tree(t[0], args) * eval_tree(t[1], args)


def eval_tree_vectors(alg: Algebra, t, args: Sequence[Vector]) -> Vector:
    if isinstance(t, int):
        return args[t]
    return alg.multiply_vectors(eval_tree_vectors(alg, t[0], args),
                                eval_tree_vectors(alg, t[1], args))


# -- multilinear identity registry ----------------------------------------
# Each identity is a list of (coefficient, slot tree); it asserts that the
# signed sum vanishes for all substitutions.  All are multilinear, so
# checking basis tuples decides them over a field of characteristic 0.

IDENTITY_TERMS: dict[str, list[tuple[Scalar, object]]] = {
    "commutative": [(ONE, (0, 1)), (-ONE, (1, 0))],
    "anticommutative": [(ONE, (0, 1)), (ONE, (1, 0))],
    "associative": [(ONE, ((0, 1), 2)), (-ONE, (0, (1, 2)))],
    "jacobi": [(ONE, ((0, 1), 2)), (ONE, ((1, 2), 0)), (ONE, ((2, 0), 1))],
    "jacobi_right": [(ONE, (0, (1, 2))), (ONE, (1, (2, 0))), (ONE, (2, (0, 1)))],
    # multilinearizations of the two alternative laws (char 0)
    "left_alternative": [(ONE, ((0, 1), 2)), (-ONE, (0, (1, 2))),
                         (ONE, ((1, 0), 2)), (-ONE, (1, (0, 2)))],
    "right_alternative": [(ONE, ((0, 1), 2)), (-ONE, (0, (1, 2))),
                          (ONE, ((0, 2), 1)), (-ONE, (0, (2, 1)))],
}


def identity_arity(terms) -> int:
    slots = set()
    for _, t in terms:
        slots.update(tree_leaves(t))
    return max(slots) + 1 if slots else 0


def engel_terms(s: int) -> list[tuple[Scalar, object]]:
    """Symmetrized Engel identity: sum over orderings of the s left factors
    of x_{sigma(1)}(x_{sigma(2)}(...(x_{sigma(s)} y))) = 0, arity s+1."""
    out = []
    for perm in itertools.permutations(range(s)):
        t = s  # the y slot
        for i in reversed(perm):
            t = (i, t)
        out.append((ONE, t))
    return out


def evaluate_identity_on_tuple(alg: Algebra, terms, basis_tuple) -> Vector:
    args = [unit_vector(alg.dim, i) for i in basis_tuple]
    total = [ZERO] * alg.dim
    for coeff, t in terms:
        v = eval_tree_vectors(alg, t, args)
        for k in range(alg.dim):
            if v[k] != 0:
                total[k] += coeff * v[k]
    return tuple(total)


def multilinear_identity_holds(alg: Algebra, terms) -> tuple[bool, tuple | None]:
    arity = identity_arity(terms)
    for basis_tuple in itertools.product(range(alg.dim), repeat=arity):
        if not is_zero(evaluate_identity_on_tuple(alg, terms, basis_tuple)):
            return False, basis_tuple
    return True, None


def check_identity(alg: Algebra, identity: str, N: int = 4, s: int = 2) -> IdentityReport:
    """Decide a polynomial identity on the algebra.

    Multilinear identities are decided exhaustively on basis tuples.
    power_associative_up_to is not multilinear; its finite test universe
    (basis elements and pairwise sums) is spelled out in the report.
    """
    if identity in IDENTITY_TERMS:
        holds, witness = multilinear_identity_holds(alg, IDENTITY_TERMS[identity])
        return IdentityReport(identity, holds, witness,
                              f"all basis tuples, dim {alg.dim}")
    if identity == "alternative":
        for part in ("left_alternative", "right_alternative"):
            holds, witness = multilinear_identity_holds(alg, IDENTITY_TERMS[part])
            if not holds:
                return IdentityReport(identity, False, witness,
                                      f"all basis tuples, dim {alg.dim} ({part} fails)")
        return IdentityReport(identity, True, None, f"all basis tuples, dim {alg.dim}")
    if identity == "engel":
        holds, witness = multilinear_identity_holds(alg, engel_terms(s))
        return IdentityReport(f"engel({s})", holds, witness,
                              f"symmetrized, all basis tuples, dim {alg.dim}")
    if identity == "power_associative_up_to":
        return _power_associative(alg, N)
    raise InputError(f"unknown identity {identity!r}")


def _power_associative(alg: Algebra, N: int) -> IdentityReport:
    universe = (f"basis elements and pairwise sums of basis elements, "
                f"powers up to {N}")
    tests: list[tuple[tuple[int, ...], Vector]] = []
    for i in range(alg.dim):
        tests.append(((i,), unit_vector(alg.dim, i)))
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            tests.append(((i, j), add(unit_vector(alg.dim, i), unit_vector(alg.dim, j))))
    for label, v in tests:
        for p in range(3, N + 1):
            values = {eval_tree_vectors(alg, t, [v] * p) for t in _all_shapes(p)}
            if len(values) > 1:
                return IdentityReport(f"power_associative_up_to({N})", False,
                                      label + (p,), universe)
    return IdentityReport(f"power_associative_up_to({N})", True, None, universe)


def multiply(alg: Algebra, x: Element, y: Element) -> Element:
    if x.algebra is not alg or y.algebra is not alg:
        raise DimensionMismatch("elements do not belong to the given algebra")
    return x * y


def element_power(alg: Algebra, v: Element, s: int, paren: str = "left") -> Element:
    """v^s under the requested parenthesization.

    paren="all" demands that every full bracketing agree; if two differ, the
    call raises AmbiguousPowerError naming the two schemes.
    """
    trees = trees_for_scheme(paren, s)
    first = eval_tree(trees[0], [v] * s)
    for t in trees[1:]:
        other = eval_tree(t, [v] * s)
        if other != first:
            raise AmbiguousPowerError(
                f"v^{s} depends on parenthesization",
                (tree_to_string(trees[0]), tree_to_string(t)))
    return first


# -- involution character ---------------------------------------------------

def _involution_character(alg: Algebra) -> str:
    auto = True
    anti = True
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = alg.conjugate_vector(alg.product_vector(i, j))
            ci = alg.conjugate_vector(unit_vector(alg.dim, i))
            cj = alg.conjugate_vector(unit_vector(alg.dim, j))
            if lhs != alg.multiply_vectors(ci, cj):
                auto = False
            if lhs != alg.multiply_vectors(cj, ci):
                anti = False
            if not auto and not anti:
                return "neither"
    if auto and anti:
        return "both"
    return "automorphism" if auto else "anti-automorphism"


def _check_grading(alg: Algebra, grading: Grading) -> None:
    if len(grading.degrees) != alg.dim:
        raise GradingError("grading must assign a degree to every basis vector")
    for (i, j), v in alg.table.items():
        want = grading.add_labels(grading.degrees[i], grading.degrees[j])
        for k, c in enumerate(v):
            if c != 0 and grading.degrees[k] != want:
                raise GradingError(
                    f"not graded by the declared degrees: e{i}*e{j} hits "
                    f"degree {grading.degrees[k]} component, expected {want}")


def graded_component(alg: Algebra, label) -> Subspace:
    if alg.grading is None:
        raise GradingError(f"algebra {alg.name!r} carries no grading")
    rows = [unit_vector(alg.dim, i) for i, d in enumerate(alg.grading.degrees)
            if d == label]
    return alg.subspace(rows)


# -- Cayley-Dickson ---------------------------------------------------------

def cayley_dickson(alg: Algebra) -> Algebra:
    """Doubling: pairs (x, y) with (x,y)*(z,w) = (x*z - conj(w)*y, w*x + y*conj(z))
    and involution (x,y) -> (conj(x), -y)."""
    if alg.involution is None:
        raise MissingInvolution(
            f"cayley_dickson needs an involution on {alg.name!r}")
    d = alg.dim
    n = 2 * d
    conj = [alg.conjugate_vector(unit_vector(d, i)) for i in range(d)]

    def emb_re(v: Vector) -> Vector:
        return tuple(v) + zero_vector(d)

    def emb_im(v: Vector) -> Vector:
        return zero_vector(d) + tuple(v)

    table: dict[tuple[int, int], Vector] = {}
    for i in range(d):
        ei = unit_vector(d, i)
        for j in range(d):
            ej = unit_vector(d, j)
            # (re_i, re_j) -> re(e_i e_j)
            table[(i, j)] = emb_re(alg.multiply_vectors(ei, ej))
            # (re_i, im_j) -> im(e_j e_i)
            table[(i, d + j)] = emb_im(alg.multiply_vectors(ej, ei))
            # (im_i, re_j) -> im(e_i conj(e_j))
            table[(d + i, j)] = emb_im(alg.multiply_vectors(ei, conj[j]))
            # (im_i, im_j) -> re(-conj(e_j) e_i)
            table[(d + i, d + j)] = emb_re(scale(-ONE, alg.multiply_vectors(conj[j], ei)))
    inv_rows = []
    for r in range(d):
        inv_rows.append(tuple(alg.involution[r]) + zero_vector(d))
    for r in range(d):
        inv_rows.append(zero_vector(d) + tuple(-ONE if c == r else ZERO for c in range(d)))
    labels = tuple(f"re:{lbl}" for lbl in alg.basis_labels) + \
             tuple(f"im:{lbl}" for lbl in alg.basis_labels)
    return Algebra(f"CD({alg.name})", n, labels, table,
                   involution=tuple(inv_rows), provenance="cayley_dickson")


def real_part_inclusion(alg: Algebra, doubled: Algebra) -> Morphism:
    rows = [unit_vector(alg.dim, r) if r < alg.dim else zero_vector(alg.dim)
            for r in range(doubled.dim)]
    return Morphism(alg, doubled, tuple(rows))


# -- series and ideals -------------------------------------------------------

def ideal_generated(alg: Algebra, seed: Subspace) -> Subspace:
    """Smallest subspace containing seed and closed under multiplication by
    the whole algebra on both sides.  Iterated closure; terminates because
    dimension can only grow."""
    current = list(seed.basis)
    while True:
        basis = rref(current)
        grew = False
        for i in range(alg.dim):
            e = unit_vector(alg.dim, i)
            for v in list(basis):
                for w in (alg.multiply_vectors(e, v), alg.multiply_vectors(v, e)):
                    if not is_zero(reduce_against(basis, w)):
                        basis = rref(list(basis) + [w])
                        grew = True
        if not grew:
            return Subspace(alg, basis)
        current = list(basis)


def series(alg: Algebra, kind: str) -> SeriesReport:
    """Derived or lower central series with ideal closure at each step.

    chain[0] is the whole algebra.  Degree s means chain[s] != 0 and
    chain[s+1] = 0.  The zero algebra gets degree 0 by convention, flagged.
    """
    if kind not in ("derived", "lower_central"):
        raise InputError(f"unknown series kind {kind!r}")
    whole = alg.whole()
    if alg.dim == 0:
        return SeriesReport(kind, [whole], True, 0, zero_algebra=True)
    chain = [whole]
    while True:
        if kind == "derived":
            last = chain[-1]
            nxt = ideal_generated(alg, alg.subspace(last.product_span(last)))
        else:
            # A^{t+1} = ideal generated by sum over i+j = t+1 of A^i * A^j,
            # with A^1 = chain[0]
            t = len(chain) + 1
            rows: list[Vector] = []
            for i in range(1, t):
                j = t - i
                if j < 1:
                    continue
                rows.extend(chain[i - 1].product_span(chain[j - 1]))
            nxt = ideal_generated(alg, alg.subspace(rows))
        chain.append(nxt)
        if nxt.is_zero():
            return SeriesReport(kind, chain, True, len(chain) - 2)
        if nxt == chain[-2]:
            return SeriesReport(kind, chain, True, None)
        if len(chain) > alg.dim + 2:  # cannot happen: strictly decreasing
            return SeriesReport(kind, chain, False, None)


# -- constructions ------------------------------------------------------------

def semidirect(k: int, h: Algebra, action: Sequence[Matrix],
               name: str | None = None) -> Algebra:
    """Lie algebra Q^k x| h with bracket [(v,x),(w,y)] = (x.w - y.v, [x,y]).

    h must verify anticommutativity and Jacobi; action must be a Lie algebra
    representation of h on Q^k.  Translations come first in the basis and
    are flagged as the designated abelian ideal.
    """
    if k < 0:
        raise InputError("translation rank must be nonnegative")
    for ident in ("anticommutative", "jacobi"):
        rep = check_identity(h, ident)
        if not rep.holds:
            raise InputError(f"semidirect factor is not a Lie algebra: "
                             f"{ident} fails at basis tuple {rep.witness}")
    if len(action) != h.dim:
        raise InputError("need one action matrix per h basis vector")
    acts = [mat_from_rows(m) for m in action]
    for m in acts:
        if len(m) != k or any(len(r) != k for r in m):
            raise DimensionMismatch("action matrices must be k x k")
    for i in range(h.dim):
        for j in range(h.dim):
            # bracket compatibility: [M_i, M_j] = M([e_i, e_j])
            lhs = mat_commutator(acts[i], acts[j])
            bracket = h.product_vector(i, j)
            rhs = [[ZERO] * k for _ in range(k)]
            for idx, c in enumerate(bracket):
                if c == 0:
                    continue
                for r in range(k):
                    for s in range(k):
                        rhs[r][s] += c * acts[idx][r][s]
            if [list(r) for r in lhs] != rhs:
                raise RepresentationError(
                    f"action is not a representation: witness basis pair ({i},{j})")
    n = k + h.dim
    table: dict[tuple[int, int], Vector] = {}
    for i in range(h.dim):
        for b in range(k):
            col = tuple(acts[i][r][b] for r in range(k))
            image = tuple(col) + zero_vector(h.dim)
            if not is_zero(image):
                table[(k + i, b)] = image
                table[(b, k + i)] = scale(-ONE, image)
        for j in range(h.dim):
            hb = h.product_vector(i, j)
            if not is_zero(hb):
                table[(k + i, k + j)] = zero_vector(k) + tuple(hb)
    labels = tuple(f"t{a+1}" for a in range(k)) + tuple(h.basis_labels)
    out_name = name or f"R^{k}x|{h.name}"
    alg = Algebra(out_name, n, labels, table,
                  flags=frozenset({"is_semidirect_of_translations"}),
                  provenance="semidirect")
    a0 = alg.subspace([unit_vector(n, a) for a in range(k)])
    a1 = alg.subspace([unit_vector(n, k + i) for i in range(h.dim)])
    alg.decomposition = (a0, a1)
    return alg


def pullback_product(f: Morphism, s: Morphism, name: str | None = None) -> Algebra:
    """Product on the source of f transported through a section s.

    Requires f o s = id on Y; then x *' y = s(f(x) * f(y)).  The result
    remembers it was pulled back.
    """
    X, Y = f.source, f.target
    if s.source is not Y or s.target is not X:
        raise SectionError("section must map the target of f back to its source")
    comp = f.compose(s)
    if comp.matrix != identity_matrix(Y.dim):
        raise SectionError("f o s is not the identity on the target")
    table: dict[tuple[int, int], Vector] = {}
    for i in range(X.dim):
        fi = mat_apply(f.matrix, unit_vector(X.dim, i))
        for j in range(X.dim):
            fj = mat_apply(f.matrix, unit_vector(X.dim, j))
            prod = Y.multiply_vectors(fi, fj)
            back = mat_apply(s.matrix, prod)
            if not is_zero(back):
                table[(i, j)] = back
    return Algebra(name or f"pullback({Y.name})", X.dim, X.basis_labels, table,
                   provenance="pulled-back")


@dataclass(eq=False)
class MorphismReport:
    multiplicative: bool
    injective: bool
    witness: tuple | None


def morphism_check(m: Morphism) -> MorphismReport:
    mult = True
    witness = None
    for i in range(m.source.dim):
        for j in range(m.source.dim):
            lhs = mat_apply(m.matrix, m.source.product_vector(i, j))
            mi = mat_apply(m.matrix, unit_vector(m.source.dim, i))
            mj = mat_apply(m.matrix, unit_vector(m.source.dim, j))
            if lhs != m.target.multiply_vectors(mi, mj):
                mult = False
                if witness is None:
                    witness = (i, j)
    inj = rank(list(m.matrix)) == m.source.dim  # row rank = column rank
    return MorphismReport(mult, inj, witness)


def verify_representation(alg: Algebra, rep: MatrixRep) -> tuple[bool, tuple | None]:
    """Check multiplicativity of the rep for the declared rule on all basis
    pairs: M(e_i * e_j) equals M_i M_j (rule=matrix) or [M_i, M_j]."""
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = rep.represent(alg.product_vector(i, j))
            if rep.rule == "matrix":
                rhs = tuple(tuple(r) for r in matmul(rep.matrices[i], rep.matrices[j]))
            else:
                rhs = mat_commutator(rep.matrices[i], rep.matrices[j])
            if lhs != rhs:
                return False, (i, j)
    return True, None
