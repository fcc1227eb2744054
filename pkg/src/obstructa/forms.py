"""Algebra-valued exterior forms over a formal frame.

A form is a map from strictly increasing multi-indices (bitmasks over m
anticommuting generators) to algebra elements.  The wedge product follows
the monomial rule

    (e_I (x) x) ^ (e_J (x) y) = sgn(I,J) e_{I u J} (x) (x p y)

for any bilinear product p; no factorial normalization.  Generic-vanishing
questions ("does this wedge word vanish for ALL forms of these degrees")
are decided exactly by polarization: symmetrize (even degree) or alternate
(odd degree) the underlying multilinear word over basis tuples.  Every
polarization verdict can be cross-checked by a randomized integer oracle
running on the kernels backend.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from obstructa import kernels
from obstructa.algebra import (
    Algebra,
    Element,
    Morphism,
    Subspace,
    IDENTITY_TERMS,
    identity_arity,
    series,
    tree_leaves,
    tree_to_string,
    trees_for_scheme,
)
from obstructa.catalog import catalog
from obstructa.errors import (
    AmbiguousPowerError,
    ConsistencyError,
    ContextError,
    DimensionMismatch,
    GradingError,
    InputError,
    RepresentationError,
)
from obstructa.kernels.pure import shuffle_sign
from obstructa.linalg import (
    Vector,
    add,
    is_zero,
    rank,
    reduce_against,
    rref,
    scale,
    unit_vector,
    vec,
    zero_vector,
)
from obstructa.rationals import Scalar, ZERO


@dataclass(frozen=True)
class ExteriorContext:
    """Formal frame of m anticommuting generators dx^1..dx^m."""
    m: int

    def __post_init__(self):
        if not 1 <= self.m <= 62:
            raise InputError(f"context size must be in 1..62, got {self.m}")

    def full_mask(self) -> int:
        return (1 << self.m) - 1


def mask_degree(mask: int) -> int:
    return mask.bit_count()


def mask_bits(mask: int) -> list[int]:
    return [b for b in range(mask.bit_length()) if (mask >> b) & 1]


def mask_label(mask: int) -> str:
    return "dx^" + ",".join(str(b + 1) for b in mask_bits(mask)) if mask else "1"


class AForm:
    """terms: mask -> coordinate vector in the owning algebra."""

    def __init__(self, context: ExteriorContext, algebra: Algebra,
                 terms: dict[int, Iterable]):
        clean: dict[int, Vector] = {}
        for mask, v in terms.items():
            if not 0 <= mask <= context.full_mask():
                raise InputError(f"multi-index {mask:#x} outside context of size {context.m}")
            w = vec(v)
            if len(w) != algebra.dim:
                raise DimensionMismatch("form term has wrong coordinate length")
            if not is_zero(w):
                clean[mask] = w
        self.context = context
        self.algebra = algebra
        self.terms = clean

    @classmethod
    def zero(cls, context: ExteriorContext, algebra: Algebra) -> "AForm":
        return cls(context, algebra, {})

    @classmethod
    def monomial(cls, context: ExteriorContext, algebra: Algebra,
                 mask: int, coords: Iterable) -> "AForm":
        return cls(context, algebra, {mask: coords})

    @property
    def degree(self):
        degs = {mask_degree(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) == 1:
            return degs.pop()
        return "mixed"

    def is_zero(self) -> bool:
        return not self.terms

    def _peer(self, other: "AForm"):
        if other.context is not self.context and other.context != self.context:
            raise ContextError("forms built over different contexts")
        if other.algebra is not self.algebra:
            raise ContextError("forms valued in different algebras")

    def __add__(self, other: "AForm") -> "AForm":
        self._peer(other)
        out = dict(self.terms)
        for m, v in other.terms.items():
            out[m] = add(out[m], v) if m in out else v
        return AForm(self.context, self.algebra, out)

    def __sub__(self, other: "AForm") -> "AForm":
        return self + (-1) * other

    def __rmul__(self, c) -> "AForm":
        c = Scalar(c)
        return AForm(self.context, self.algebra,
                     {m: scale(c, v) for m, v in self.terms.items()})

    def __neg__(self) -> "AForm":
        return (-1) * self

    def __eq__(self, other) -> bool:
        return (isinstance(other, AForm) and other.algebra is self.algebra
                and other.context == self.context and other.terms == self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            elem = Element(self.algebra, self.terms[m])
            bits.append(f"{mask_label(m)}(x)({elem!r})")
        return " + ".join(bits)


class ProductSelector:
    """Resolves to a bilinear product table on a given algebra.

    Kinds: the algebra's own product, its commutator bracket, a product
    pulled back through (f, s), or an explicit bilinear table.
    """

    def __init__(self, kind: str, payload=None, label: str | None = None):
        self.kind = kind
        self.payload = payload
        self.label = label or kind
        self._cache: dict[int, dict] = {}

    @staticmethod
    def algebra() -> "ProductSelector":
        return ProductSelector("algebra")

    @staticmethod
    def bracket() -> "ProductSelector":
        return ProductSelector("bracket")

    @staticmethod
    def pulled_back(f: Morphism, s: Morphism) -> "ProductSelector":
        return ProductSelector("pullback", (f, s),
                               label=f"pullback({f.target.name})")

    @staticmethod
    def custom(table: dict[tuple[int, int], Vector], label: str = "custom") -> "ProductSelector":
        return ProductSelector("custom", table, label=label)

    def table_on(self, alg: Algebra) -> dict[tuple[int, int], Vector]:
        hit = self._cache.get(id(alg))
        if hit is not None:
            return hit
        if self.kind == "algebra":
            tbl = alg.table
        elif self.kind == "bracket":
            tbl = {}
            for i in range(alg.dim):
                for j in range(alg.dim):
                    v = alg.bracket_vector(i, j)
                    if not is_zero(v):
                        tbl[(i, j)] = v
        elif self.kind == "pullback":
            f, s = self.payload
            if f.source is not alg:
                raise InputError("pullback selector built for a different algebra")
            from obstructa.algebra import pullback_product
            tbl = pullback_product(f, s).table
        elif self.kind == "custom":
            tbl = {}
            for (i, j), v in self.payload.items():
                w = vec(v)
                if len(w) != alg.dim:
                    raise DimensionMismatch("custom table entry has wrong length")
                if not is_zero(w):
                    tbl[(i, j)] = w
        else:
            raise InputError(f"unknown product selector kind {self.kind!r}")
        self._cache[id(alg)] = tbl
        return tbl

    def __repr__(self) -> str:
        return f"ProductSelector({self.label})"


def table_multiply(table: dict, dim: int, u: Vector, v: Vector) -> Vector:
    out = [ZERO] * dim
    for i, x in enumerate(u):
        if x == 0:
            continue
        for j, y in enumerate(v):
            if y == 0:
                continue
            ent = table.get((i, j))
            if ent is None:
                continue
            c = x * y
            for k, z in enumerate(ent):
                if z != 0:
                    out[k] += c * z
    return tuple(out)


def eval_tree_table(table: dict, dim: int, tree, args: Sequence[Vector]) -> Vector:
    if isinstance(tree, int):
        return args[tree]
    return table_multiply(table, dim,
                          eval_tree_table(table, dim, tree[0], args),
                          eval_tree_table(table, dim, tree[1], args))


@dataclass(eq=False)
class GenericCheckReport:
    property_id: str
    holds: bool
    witness: object | None
    method: str
    generator_count: int
    details: dict = field(default_factory=dict)


# -- wedge and powers ---------------------------------------------------------

def wedge(a: AForm, b: AForm, p: ProductSelector) -> AForm:
    a._peer(b)
    table = p.table_on(a.algebra)
    dim = a.algebra.dim
    acc: dict[int, list[Scalar]] = {}
    for ma, va in a.terms.items():
        for mb, vb in b.terms.items():
            if ma & mb:
                continue
            sgn = shuffle_sign(ma, mb)
            key = ma | mb
            out = acc.get(key)
            if out is None:
                out = [ZERO] * dim
                acc[key] = out
            for i, x in enumerate(va):
                if x == 0:
                    continue
                sx = x if sgn > 0 else -x
                for j, y in enumerate(vb):
                    if y == 0:
                        continue
                    ent = table.get((i, j))
                    if ent is None:
                        continue
                    c = sx * y
                    for k, z in enumerate(ent):
                        if z != 0:
                            out[k] += c * z
    return AForm(a.context, a.algebra, {m: tuple(v) for m, v in acc.items()})


def _fold_tree(tree, leaves: Sequence[AForm], p: ProductSelector) -> AForm:
    if isinstance(tree, int):
        return leaves[tree]
    return wedge(_fold_tree(tree[0], leaves, p), _fold_tree(tree[1], leaves, p), p)


def power(a: AForm, s: int, p: ProductSelector, paren: str = "left") -> AForm:
    """s-fold wedge power under the requested parenthesization scheme."""
    if s < 1:
        raise InputError("power needs s >= 1")
    if a.degree == "mixed":
        raise InputError("power requires a homogeneous form")
    trees = trees_for_scheme(paren, s)
    first = _fold_tree(trees[0], [a] * s, p)
    for t in trees[1:]:
        other = _fold_tree(t, [a] * s, p)
        if other != first:
            raise AmbiguousPowerError(
                f"wedge power {s} differs between parenthesizations",
                (tree_to_string(trees[0]), tree_to_string(t)))
    return first


# -- matrix relation ----------------------------------------------------------

_GL_CACHE: dict[int, Algebra] = {}
_REP_VERIFIED: dict[int, bool] = {}


def _gl(n: int) -> Algebra:
    if n not in _GL_CACHE:
        _GL_CACHE[n] = catalog("gl", n)
    return _GL_CACHE[n]


def _push_to_gl(a: AForm) -> AForm:
    rep = a.algebra.representation
    gln = _gl(rep.rep_dim)
    terms = {}
    for mask, v in a.terms.items():
        m = rep.represent(v)
        terms[mask] = tuple(x for row in m for x in row)
    return AForm(a.context, gln, terms)


def matrix_bracket_relation_check(alg: Algebra, a: AForm, b: AForm) -> bool:
    """Exact check of a[^]b = a^b - (-1)^{kl} b^a in the matrix picture."""
    rep = alg.representation
    if rep is None:
        raise RepresentationError(f"algebra {alg.name!r} has no MatrixRep")
    if id(alg) not in _REP_VERIFIED:
        from obstructa.algebra import verify_representation
        ok, wit = verify_representation(alg, rep)
        if not ok:
            raise RepresentationError(f"MatrixRep fails at basis pair {wit}")
        _REP_VERIFIED[id(alg)] = True
    if a.is_zero() or b.is_zero():
        return True
    ka, kb = a.degree, b.degree
    if ka == "mixed" or kb == "mixed":
        raise InputError("relation check needs homogeneous forms")
    ap, bp = _push_to_gl(a), _push_to_gl(b)
    mat = ProductSelector.algebra()
    br = ProductSelector.bracket()
    lhs = wedge(ap, bp, br)
    sign = Scalar(-1) ** (ka * kb)
    rhs = wedge(ap, bp, mat) - sign * wedge(bp, ap, mat)
    return lhs == rhs


# -- polarization engine ------------------------------------------------------

@dataclass(frozen=True)
class Slot:
    """One argument slot of a wedge word: which shared form variable feeds
    it (group), the exterior degree, and the value-space basis."""
    group: str
    degree: int
    basis: tuple[Vector, ...]


def _slot_groups(slots: Sequence[Slot]):
    groups: dict[str, dict] = {}
    order: list[str] = []
    for idx, s in enumerate(slots):
        g = groups.get(s.group)
        if g is None:
            groups[s.group] = {"degree": s.degree, "basis": s.basis, "slots": [idx]}
            order.append(s.group)
        else:
            if g["degree"] != s.degree or g["basis"] != s.basis:
                raise InputError(f"slot group {s.group!r} mixes degrees or value spaces")
            g["slots"].append(idx)
    return [(name, groups[name]) for name in order]


def polarized_vanishes(dim: int, table: dict, tree, slots: Sequence[Slot]):
    """Decide whether the wedge word vanishes for all choices of the group
    form variables.

    Criterion: for each tuple of value-space basis vectors (multisets for
    even degree, strictly increasing for odd), the within-group signed
    permutation sum of the plain algebra word must vanish.  Returns
    (vanishes, witness, vacuous) where witness maps group name to the
    failing basis-index tuple.
    """
    groups = _slot_groups(slots)
    choosers = []
    for name, g in groups:
        c = len(g["slots"])
        nb = len(g["basis"])
        if g["degree"] % 2 == 1:
            if c > nb:
                return True, None, True  # alternating in more slots than dimensions
            choosers.append(list(itertools.combinations(range(nb), c)))
        else:
            if nb == 0 and c > 0:
                return True, None, True
            choosers.append(list(itertools.combinations_with_replacement(range(nb), c)))
    perm_sets = []
    for name, g in groups:
        c = len(g["slots"])
        k = g["degree"]
        perms = []
        for perm in itertools.permutations(range(c)):
            if k % 2 == 1:
                sgn = _perm_sign(perm)
            else:
                sgn = 1
            perms.append((sgn, perm))
        perm_sets.append(perms)
    nslots = len(slots)
    for combo in itertools.product(*choosers):
        total = [ZERO] * dim
        for signed_perms in itertools.product(*perm_sets):
            sgn = 1
            args: list[Vector | None] = [None] * nslots
            for (name, g), picks, (psgn, perm) in zip(groups, combo, signed_perms):
                sgn *= psgn
                for pos, slot_idx in enumerate(g["slots"]):
                    args[slot_idx] = g["basis"][picks[perm[pos]]]
            word = eval_tree_table(table, dim, tree, args)
            for kk in range(dim):
                if word[kk] != 0:
                    total[kk] += word[kk] if sgn > 0 else -word[kk]
        if any(x != 0 for x in total):
            witness = {name: picks for (name, _), picks in zip(groups, combo)}
            return False, witness, False
    return True, None, False


def _perm_sign(perm: Sequence[int]) -> int:
    inv = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                inv += 1
    return -1 if inv & 1 else 1


def canonical_blocks(slots: Sequence[Slot]) -> list[int]:
    """Consecutive generator blocks, one per slot, in slot order."""
    blocks = []
    off = 0
    for s in slots:
        blocks.append(((1 << s.degree) - 1) << off)
        off += s.degree
    return blocks


def reproduce_polarization_witness(dim: int, table: dict, tree,
                                   slots: Sequence[Slot], witness: dict):
    """Rebuild explicit monomial forms from a polarization witness and
    re-evaluate the word by honest wedge calls; returns the nonzero result.

    This is the report invariant: every emitted witness reproduces the
    failure by direct evaluation.
    """
    total_deg = sum(s.degree for s in slots)
    ctx = ExteriorContext(max(total_deg, 1))
    blocks = canonical_blocks(slots)
    groups = _slot_groups(slots)
    alg_stub = _CoordAlgebra(dim, table)
    forms: list[AForm | None] = [None] * len(slots)
    group_forms = {}
    for name, g in groups:
        picks = witness[name]
        terms = {}
        for pos, slot_idx in enumerate(g["slots"]):
            mask = blocks[slot_idx]
            v = g["basis"][picks[pos]]
            terms[mask] = add(terms[mask], v) if mask in terms else v
        group_forms[name] = AForm(ctx, alg_stub, terms)
    for idx, s in enumerate(slots):
        forms[idx] = group_forms[s.group]
    sel = ProductSelector.custom(table, label="witness")
    result = _fold_tree(tree, forms, sel)
    top = 0
    for b in blocks:
        top |= b
    if top not in result.terms:
        raise ConsistencyError("polarization witness failed to reproduce by direct evaluation")
    return result


class _CoordAlgebra(Algebra):
    """Anonymous coordinate algebra wrapping an explicit bilinear table,
    used when a check runs against a selector table rather than an algebra's
    own product."""

    def __init__(self, dim: int, table: dict):
        labels = tuple(f"b{i+1}" for i in range(dim))
        super().__init__("coord", dim, labels, dict(table), provenance="internal")


# -- graded identity lift -----------------------------------------------------

def _koszul_sign(leaf_order: Sequence[int], degrees: Sequence[int]) -> int:
    sgn = 1
    for a in range(len(leaf_order)):
        for b in range(a + 1, len(leaf_order)):
            if leaf_order[a] > leaf_order[b]:
                if (degrees[leaf_order[a]] * degrees[leaf_order[b]]) % 2 == 1:
                    sgn = -sgn
    return sgn


def graded_identity_check(alg: Algebra, identity: str, degrees: Sequence[int],
                          p: ProductSelector,
                          context: ExteriorContext | None = None) -> GenericCheckReport:
    """Decide the graded (Koszul-signed) lift of a multilinear identity for
    all forms of the given degrees.

    One disjoint block assignment suffices: the shuffle-sign ratio between
    the identity's terms is the same for every disjoint assignment, which is
    exactly what the Koszul signs encode.  The test suite checks this
    reduction against full assignment enumeration on small instances.
    """
    if identity not in IDENTITY_TERMS:
        raise InputError(f"unknown multilinear identity {identity!r}")
    terms = IDENTITY_TERMS[identity]
    r = identity_arity(terms)
    if len(degrees) != r:
        raise InputError(f"identity {identity} has {r} slots, got {len(degrees)} degrees")
    total = sum(degrees)
    need = max(total, 1)
    if context is None:
        context = ExteriorContext(need)
    elif context.m < total:
        raise InputError(f"context too small: need at least m={total}")
    blocks = []
    off = 0
    for k in degrees:
        blocks.append(((1 << k) - 1) << off)
        off += k
    lifted = []
    for coeff, tree in terms:
        order = tree_leaves(tree)
        lifted.append((coeff * _koszul_sign(order, degrees), tree))
    dim = alg.dim
    for tup in itertools.product(range(dim), repeat=r):
        leaves = [AForm.monomial(context, alg, blocks[t], unit_vector(dim, tup[t]))
                  for t in range(r)]
        acc = AForm.zero(context, alg)
        for coeff, tree in lifted:
            acc = acc + coeff * _fold_tree(tree, leaves, p)
        if not acc.is_zero():
            return GenericCheckReport(
                property_id=f"graded:{identity}:{tuple(degrees)}",
                holds=False,
                witness={"basis_tuple": tup, "blocks": blocks,
                         "value": repr(acc)},
                method="polarization",
                generator_count=context.m,
                details={"product": p.label})
    return GenericCheckReport(
        property_id=f"graded:{identity}:{tuple(degrees)}",
        holds=True, witness=None, method="polarization",
        generator_count=context.m, details={"product": p.label})


# -- (k,s)-nil ----------------------------------------------------------------

def _as_subspace(V) -> Subspace:
    if isinstance(V, Algebra):
        return V.whole()
    if isinstance(V, Subspace):
        return V
    raise InputError("V must be a Subspace or an Algebra")


DEFAULT_SEED = 20240915


def _int_rows(rows: Sequence[Vector]) -> list[tuple[int, ...]]:
    """Scale each rational row to integers; spans (and vanishing) unchanged."""
    out = []
    for r in rows:
        lcm = 1
        for x in r:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        out.append(tuple(int(x * lcm) for x in r))
    return out


def _int_table(table: dict, dim: int):
    """Clear denominators globally; returns (triples, scale)."""
    lcm = 1
    for v in table.values():
        for x in v:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    triples = []
    for (i, j), v in table.items():
        for k, x in enumerate(v):
            if x != 0:
                triples.append((i, j, k, int(x * lcm)))
    return triples, lcm


def _oracle_bound(n_terms: int, max_coeff: int, tree, dim: int, triples) -> int:
    """A-priori bound on any intermediate integer coefficient along the tree."""
    crow = 0
    by_pair: dict[tuple[int, int], int] = {}
    for i, j, k, c in triples:
        by_pair[(i, j)] = by_pair.get((i, j), 0) + abs(c)
        crow = max(crow, by_pair[(i, j)])

    def walk(t):
        # returns (term_count_bound, coeff_bound)
        if isinstance(t, int):
            return n_terms, max_coeff
        na, ba = walk(t[0])
        nb, bb = walk(t[1])
        return na * nb, na * nb * ba * bb * dim * dim * crow

    return walk(tree)[1]


def random_int_form(rng: random.Random, masks: Sequence[int],
                    basis_rows: Sequence[tuple[int, ...]], dim: int):
    """Random integer form: coefficients uniform in -2..2 per (mask, basis
    row), drawn in sorted mask order then basis order."""
    terms = []
    for mask in masks:
        v = [0] * dim
        for row in basis_rows:
            c = rng.randint(-2, 2)
            if c:
                for k, x in enumerate(row):
                    if x:
                        v[k] += c * x
        if any(v):
            terms.append((mask, tuple(v)))
    return terms


def _run_nil_oracle(table: dict, dim: int, basis: Sequence[Vector], k: int,
                    m: int, tree, count: int, seed: int):
    """Randomized cross-check: does the tree-fold wedge of `count` random
    V-valued k-forms vanish every time?  Returns (all_zero, first_nonzero)."""
    triples, _ = _int_table(table, dim)
    int_basis = _int_rows(basis)
    masks = [_mask_from_bits(bits) for bits in itertools.combinations(range(m), k)]
    max_coeff = 2 * max((max(abs(x) for x in r) for r in int_basis), default=1) * max(len(int_basis), 1)
    bound = _oracle_bound(len(masks), max_coeff, tree, dim, triples)
    if bound < kernels.INT64_SAFE_BOUND:
        backend = kernels
        handle = kernels.prepare_table(triples, dim)
    else:
        backend = kernels.pure_backend
        handle = kernels.pure_backend.prepare_table(triples, dim)
    rng = random.Random(seed)
    first_nonzero = None
    all_zero = True
    for sample in range(count):
        terms = random_int_form(rng, masks, int_basis, dim)
        result = _fold_tree_int(tree, terms, handle, backend)
        if result:
            all_zero = False
            if first_nonzero is None:
                first_nonzero = {"sample": sample, "terms": terms,
                                 "result_masks": [m0 for m0, _ in result]}
    return all_zero, first_nonzero


def _fold_tree_int(tree, terms, handle, backend):
    if isinstance(tree, int):
        return terms
    return backend.wedge_int(_fold_tree_int(tree[0], terms, handle, backend),
                             _fold_tree_int(tree[1], terms, handle, backend),
                             handle)


def _mask_from_bits(bits) -> int:
    m = 0
    for b in bits:
        m |= 1 << b
    return m


def _parse_oracle(oracle) -> int | None:
    if oracle is None:
        return None
    if isinstance(oracle, int):
        return oracle
    if isinstance(oracle, str) and oracle.startswith("random:"):
        return int(oracle.split(":", 1)[1])
    raise InputError(f"oracle must be an int count or 'random:COUNT', got {oracle!r}")


def is_ks_nil(V, k: int, s: int, p: ProductSelector, paren: str = "left",
              oracle=None, seed: int = DEFAULT_SEED,
              context: ExteriorContext | None = None) -> GenericCheckReport:
    """Upper-bound check: the (s+1)-st wedge power of every V-valued k-form
    vanishes; sharpness (some form survives s powers) reported separately.

    Needs m = k(s+1) generators (auto-sized); a smaller context would make
    the top power vanish for dimension reasons and is rejected.  When an
    oracle count is given, the randomized verdict must agree with the
    polarization verdict; disagreement raises ConsistencyError, loudly.
    """
    sub = _as_subspace(V)
    alg = sub.algebra
    if k < 1 or s < 1:
        raise InputError("need k >= 1 and s >= 1")
    need = k * (s + 1)
    if context is None:
        context = ExteriorContext(need)
    elif context.m < need:
        raise InputError(f"context too small for nil check: need m >= {need}")
    table = p.table_on(alg)
    trees = trees_for_scheme(paren, s + 1)
    scheme_names = ([tree_to_string(t) for t in trees] if paren == "all"
                    else [paren] * len(trees))
    samples = _parse_oracle(oracle)
    upper: dict[str, bool] = {}
    witness = None
    vacuous_any = False
    s_slots = [Slot("alpha", k, tuple(sub.basis)) for _ in range(s)]
    s_tree = trees_for_scheme("left" if paren == "all" else paren, s)[0]
    s_ok, _, _ = polarized_vanishes(alg.dim, table, s_tree, s_slots)
    sharp = not s_ok
    for t, nm in zip(trees, scheme_names):
        slots = [Slot("alpha", k, tuple(sub.basis)) for _ in range(s + 1)]
        ok, wit, vac = polarized_vanishes(alg.dim, table, t, slots)
        vacuous_any = vacuous_any or vac
        upper[nm] = ok
        if not ok and witness is None:
            witness = {"scheme": nm, "groups": wit,
                       "reproduced": repr(reproduce_polarization_witness(
                           alg.dim, table, t, slots, wit))}
        if samples:
            all_zero, first = _run_nil_oracle(table, alg.dim, sub.basis, k,
                                              context.m, t, samples, seed)
            if all_zero != ok:
                raise ConsistencyError(
                    f"polarization says vanishes={ok} but {samples}-sample oracle "
                    f"says vanishes={all_zero} for ({k},{s})-nil, scheme {nm}, "
                    f"seed {seed}")
    holds = all(upper.values())
    details = {
        "upper_bound_by_scheme": upper,
        "sharp": sharp,
        "vacuous": vacuous_any,
        "m": context.m,
        "product": p.label,
        "V_dim": sub.dim,
    }
    if samples:
        details["oracle"] = {"samples": samples, "seed": seed,
                             "agrees": True}
    return GenericCheckReport(
        property_id=f"({k},{s})-nil",
        holds=holds,
        witness=witness,
        method="polarization+oracle" if samples else "polarization",
        generator_count=context.m,
        details=details)


# -- (k,s)-solv certificates ---------------------------------------------------

def is_ks_solv_certificate(V, k: int, s: int, decomposition: Sequence[Subspace],
                           p: ProductSelector, paren: str = "left",
                           oracle=None, seed: int = DEFAULT_SEED) -> GenericCheckReport:
    """Verify a (k,s)-solv certificate: the summands split V as a vector
    space and each one is a (k,s)-nil subspace of the ambient algebra."""
    sub = _as_subspace(V)
    alg = sub.algebra
    if not decomposition:
        raise InputError("empty decomposition")
    for d in decomposition:
        if d.algebra is not alg:
            raise InputError("decomposition summand lives in a different algebra")
    rows = [v for d in decomposition for v in d.basis]
    total = sum(d.dim for d in decomposition)
    joint = rref(rows)
    if len(joint) != total:
        return GenericCheckReport(
            property_id=f"({k},{s})-solv",
            holds=False,
            witness={"reason": "summands not independent"},
            method="certificate", generator_count=0,
            details={"summand_dims": [d.dim for d in decomposition]})
    span_of_V = rref(list(sub.basis))
    if joint != span_of_V:
        missing = None
        for v in sub.basis:
            if not is_zero(reduce_against(joint, v)):
                missing = v
                break
        return GenericCheckReport(
            property_id=f"({k},{s})-solv",
            holds=False,
            witness={"reason": "does not span", "missing_vector": missing},
            method="certificate", generator_count=0,
            details={"summand_dims": [d.dim for d in decomposition]})
    summand_reports = []
    holds = True
    witness = None
    for idx, d in enumerate(decomposition):
        rep = is_ks_nil(d, k, s, p, paren=paren, oracle=oracle, seed=seed)
        summand_reports.append(rep)
        if not rep.holds:
            holds = False
            if witness is None:
                witness = {"summand": idx, "nil_witness": rep.witness}
    return GenericCheckReport(
        property_id=f"({k},{s})-solv",
        holds=holds,
        witness=witness,
        method="certificate+polarization",
        generator_count=k * (s + 1),
        details={"summand_dims": [d.dim for d in decomposition],
                 "summand_holds": [r.holds for r in summand_reports],
                 "product": p.label, "paren": paren})


def auto_solv_decomposition(alg: Algebra) -> list[Subspace] | None:
    """Echelon-pivot complements C_i with A^(i) = A^(i+1) (+) C_i, in chain
    order; absent when the derived series does not reach zero."""
    rep = series(alg, "derived")
    if rep.degree is None:
        return None
    out: list[Subspace] = []
    chain = rep.chain
    for i in range(len(chain) - 1):
        inner = chain[i + 1]
        outer = chain[i]
        basis = list(inner.basis)
        comp: list[Vector] = []
        for v in outer.basis:
            grown = rref(basis + [v])
            if len(grown) > len(rref(basis)):
                comp.append(v)
                basis.append(v)
        if comp:
            out.append(alg.subspace(comp))
    if not out:  # zero algebra
        out.append(alg.whole())
    return out


# -- injective forms and the square suite --------------------------------------

def injective_form_check(a: AForm) -> bool:
    """Degree-1 form as a linear map from the generator space into A:
    injective iff the coefficient matrix has full rank m."""
    if a.degree not in (1, None):
        raise InputError("injectivity is defined for degree-1 forms")
    m = a.context.m
    rows = []
    for b in range(m):
        rows.append(a.terms.get(1 << b, zero_vector(a.algebra.dim)))
    return rank(rows) == m


def _injective_k_form(terms, m: int, k: int, dim: int) -> bool:
    masks = [_mask_from_bits(bits) for bits in itertools.combinations(range(m), k)]
    have = dict(terms)
    rows = [tuple(Fraction(x) for x in have.get(msk, (0,) * dim)) for msk in masks]
    return rank(rows) == len(masks)


def solvable_injective_square(alg: Algebra, m: int, k: int = 1,
                              count: int = 200, seed: int = DEFAULT_SEED,
                              p: ProductSelector | None = None,
                              paren: str = "left") -> GenericCheckReport:
    """Random pointwise-injective odd-degree forms over a solvable algebra:
    does a ^ a vanish for every one of them?

    The sampler is honest: coefficients uniform in -2..2, rejection-filtered
    for injectivity only.  holds reports what the samples actually did.
    """
    if k % 2 != 1:
        raise InputError("the square suite is about odd-degree forms")
    if p is None:
        p = ProductSelector.algebra()
    rep = series(alg, "derived")
    if rep.degree is None:
        raise InputError(f"{alg.name!r} is not solvable; the suite does not apply")
    n_masks = math.comb(m, k)
    if n_masks > alg.dim:
        raise InputError(
            f"no injective forms exist: C({m},{k}) = {n_masks} > dim {alg.dim}")
    ctx = ExteriorContext(max(2 * k, m))
    table = p.table_on(alg)
    triples, _ = _int_table(table, alg.dim)
    handle = kernels.pure_backend.prepare_table(triples, alg.dim)
    masks = [_mask_from_bits(bits) for bits in itertools.combinations(range(m), k)]
    unit_rows = [tuple(1 if i == j else 0 for i in range(alg.dim))
                 for j in range(alg.dim)]
    rng = random.Random(seed)
    tested = 0
    attempts = 0
    witness = None
    holds = True
    while tested < count and attempts < count * 200:
        attempts += 1
        terms = random_int_form(rng, masks, unit_rows, alg.dim)
        if not _injective_k_form(terms, m, k, alg.dim):
            continue
        tested += 1
        square = kernels.pure_backend.wedge_int(terms, terms, handle)
        if square:
            holds = False
            if witness is None:
                form = AForm(ctx, alg, {msk: v for msk, v in terms})
                sq = wedge(form, form, p)
                if sq.is_zero():
                    raise ConsistencyError(
                        "kernel square nonzero but exact square zero")
                witness = {"sample_index": tested - 1, "form_terms": terms,
                           "square": repr(sq), "seed": seed}
    return GenericCheckReport(
        property_id=f"solvable_injective_square(k={k}, m={m})",
        holds=holds,
        witness=witness,
        method="randomized-oracle",
        generator_count=m,
        details={"requested": count, "tested": tested, "seed": seed,
                 "algebra": alg.name, "solv_degree": rep.degree,
                 "product": p.label, "paren": paren})


# -- weak nilpotency over gradings ----------------------------------------------

def weak_nilpotent_check(V: Subspace, k: int, s: int, p: ProductSelector,
                         paren: str = "left", grading=None) -> GenericCheckReport:
    """Graded generic vanishing: every word p_{s+1}(a^{m_1}, ..., a^{m_{s+1}})
    in the graded components of a V-valued k-form vanishes, for every label
    word and every requested parenthesization.

    grading defaults to the ambient algebra's own; passing one explicitly
    supports relabeled (shifted) gradings.
    """
    alg = V.algebra
    if grading is None:
        grading = alg.grading
    if grading is None:
        raise GradingError(f"algebra {alg.name!r} carries no grading")
    table = p.table_on(alg)
    support = []
    comps: dict[object, Subspace] = {}
    for label in grading.support():
        rows = [unit_vector(alg.dim, i) for i, d in enumerate(grading.degrees)
                if d == label]
        comp = V.intersect(alg.subspace(rows))
        if not comp.is_zero():
            support.append(label)
            comps[label] = comp
    trees = trees_for_scheme(paren, s + 1)
    scheme_names = ([tree_to_string(t) for t in trees] if paren == "all"
                    else [paren] * len(trees))
    checked = 0
    for word in itertools.product(support, repeat=s + 1):
        for t, nm in zip(trees, scheme_names):
            slots = [Slot(f"g{label}", k, tuple(comps[label].basis))
                     for label in word]
            ok, wit, _ = polarized_vanishes(alg.dim, table, t, slots)
            checked += 1
            if not ok:
                return GenericCheckReport(
                    property_id=f"weak({k},{s})-nilpotent",
                    holds=False,
                    witness={"grade_word": word, "scheme": nm, "groups": wit,
                             "reproduced": repr(reproduce_polarization_witness(
                                 alg.dim, table, t, slots, wit))},
                    method="polarization",
                    generator_count=k * (s + 1),
                    details={"support": support, "checked_words": checked})
    return GenericCheckReport(
        property_id=f"weak({k},{s})-nilpotent",
        holds=True, witness=None, method="polarization",
        generator_count=k * (s + 1),
        details={"support": support, "checked_words": checked,
                 "product": p.label, "paren": paren})
