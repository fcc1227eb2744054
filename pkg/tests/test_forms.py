"""Wedge calculus and polarization certificates.

naive_wedge below is the reference: direct table contraction with the
shuffle sign computed by counting inversions.  graded_eval lifts the four
classical identities by hand (explicit permutations, explicit Koszul
signs) and evaluates them on concrete random forms.  The engine's wedge,
graded checks and nil certificates are all held to these two.
"""

import itertools
import random
from fractions import Fraction

import pytest

from obstructa.algebra import Algebra
from obstructa.catalog import catalog, cd_imaginary_bracket
from obstructa.errors import (AmbiguousPowerError, ConsistencyError,
                              ContextError, InputError)
from obstructa.forms import (AForm, DEFAULT_SEED, ExteriorContext,
                             ProductSelector, graded_identity_check,
                             injective_form_check, is_ks_nil,
                             is_ks_solv_certificate, auto_solv_decomposition,
                             matrix_bracket_relation_check, power,
                             solvable_injective_square, weak_nilpotent_check,
                             wedge)

from conftest import random_form

F = Fraction


# -- reference wedge -------------------------------------------------------------

def naive_wedge(a: AForm, b: AForm, p: ProductSelector) -> AForm:
    table = p.table_on(a.algebra)
    dim = a.algebra.dim
    acc = {}
    for ma, va in a.terms.items():
        for mb, vb in b.terms.items():
            if ma & mb:
                continue
            bits = [x for x in range(64) if ma >> x & 1] + \
                   [x for x in range(64) if mb >> x & 1]
            inv = sum(1 for x in range(len(bits))
                      for y in range(x + 1, len(bits)) if bits[x] > bits[y])
            sgn = F(-1) if inv % 2 else F(1)
            prod = [F(0)] * dim
            for i, ci in enumerate(va):
                if ci == 0:
                    continue
                for j, cj in enumerate(vb):
                    if cj == 0:
                        continue
                    row = table.get((i, j))
                    if row is None:
                        continue
                    for t, c in enumerate(row):
                        prod[t] += ci * cj * c
            key = ma | mb
            cur = acc.setdefault(key, [F(0)] * dim)
            for t in range(dim):
                cur[t] += sgn * prod[t]
    return AForm(a.context, a.algebra, {m: tuple(v) for m, v in acc.items()})


@pytest.mark.parametrize("name,args,product", [
    ("so", (3,), None), ("gl", (2,), None), ("gl", (2,), "bracket"),
    ("heisenberg", (1,), None),
])
def test_wedge_matches_naive_oracle(name, args, product):
    alg = catalog(name, *args, product=product) if product else \
        catalog(name, *args)
    p = ProductSelector.algebra()
    ctx = ExteriorContext(6)
    rng = random.Random(100)
    for _ in range(50):
        ka, kb = rng.randint(1, 3), rng.randint(1, 3)
        a = random_form(rng, ctx, alg, ka)
        b = random_form(rng, ctx, alg, kb)
        assert wedge(a, b, p) == naive_wedge(a, b, p)


def test_wedge_on_octonions_matches_naive():
    alg = cd_imaginary_bracket(3)
    p = ProductSelector.algebra()
    ctx = ExteriorContext(6)
    rng = random.Random(101)
    for _ in range(20):
        a = random_form(rng, ctx, alg, 2)
        b = random_form(rng, ctx, alg, rng.randint(1, 3))
        assert wedge(a, b, p) == naive_wedge(a, b, p)


def test_wedge_bilinear(so3):
    p = ProductSelector.algebra()
    ctx = ExteriorContext(5)
    rng = random.Random(102)
    a = random_form(rng, ctx, so3, 1)
    b = random_form(rng, ctx, so3, 2)
    c = random_form(rng, ctx, so3, 2)
    assert wedge(a, b + c, p) == wedge(a, b, p) + wedge(a, c, p)
    assert wedge(3 * a, b, p) == 3 * wedge(a, b, p)


def test_wedge_rejects_mismatched_contexts(so3):
    p = ProductSelector.algebra()
    a = AForm(ExteriorContext(3), so3, {1: (F(1), F(0), F(0))})
    b = AForm(ExteriorContext(4), so3, {1: (F(1), F(0), F(0))})
    with pytest.raises(ContextError):
        wedge(a, b, p)


def test_form_degree_bookkeeping(so3):
    ctx = ExteriorContext(4)
    zero = AForm.zero(ctx, so3)
    assert zero.degree is None and zero.is_zero()
    one = AForm(ctx, so3, {1: (F(1), F(0), F(0))})
    mixed = one + AForm(ctx, so3, {3: (F(1), F(0), F(0))})
    assert one.degree == 1
    assert mixed.degree == "mixed"
    with pytest.raises(InputError):
        power(mixed, 2, ProductSelector.algebra())


# -- graded identity lifts --------------------------------------------------------

LEFT3 = ((0, 1), 2)
RIGHT3 = (0, (1, 2))

# algebra-level identities as (coeff, tree, slot permutation) sums
IDENTITY_DEFS = {
    "commutative": [(1, (0, 1), (0, 1)), (-1, (0, 1), (1, 0))],
    "anticommutative": [(1, (0, 1), (0, 1)), (1, (0, 1), (1, 0))],
    "associative": [(1, LEFT3, (0, 1, 2)), (-1, RIGHT3, (0, 1, 2))],
    "jacobi": [(1, LEFT3, (0, 1, 2)), (1, LEFT3, (1, 2, 0)),
               (1, LEFT3, (2, 0, 1))],
}


def koszul_sign(perm, degrees):
    """(-1)^(sum of d_i d_j over inverted pairs), computed pairwise."""
    s = 1
    for x in range(len(perm)):
        for y in range(x + 1, len(perm)):
            if perm[x] > perm[y]:
                if (degrees[perm[x]] * degrees[perm[y]]) % 2:
                    s = -s
    return s


def fold_wedge(tree, leaves, p):
    if isinstance(tree, int):
        return leaves[tree]
    return wedge(fold_wedge(tree[0], leaves, p),
                 fold_wedge(tree[1], leaves, p), p)


def graded_eval(identity, forms, p):
    degrees = [f.degree for f in forms]
    acc = AForm.zero(forms[0].context, forms[0].algebra)
    for coeff, tree, perm in IDENTITY_DEFS[identity]:
        sgn = coeff * koszul_sign(perm, degrees)
        acc = acc + sgn * fold_wedge(tree, [forms[i] for i in perm], p)
    return acc


DEGREE_TUPLES_2 = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)]
DEGREE_TUPLES_3 = [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1)]


@pytest.mark.parametrize("name,product", [
    ("so3", None), ("gl2", None), ("gl2", "bracket"), ("heis", None),
])
@pytest.mark.parametrize("identity", list(IDENTITY_DEFS))
def test_graded_check_against_concrete_evaluation(name, product, identity,
                                                  so3, gl2, heis):
    alg = catalog("gl", 2, product="bracket") if product else \
        {"so3": so3, "gl2": gl2, "heis": heis}[name]
    p = ProductSelector.algebra()
    tuples = DEGREE_TUPLES_2 if len(IDENTITY_DEFS[identity][0][2]) == 2 \
        else DEGREE_TUPLES_3
    rng = random.Random(hash((name, identity)) & 0xFFFF)
    for degrees in tuples:
        rep = graded_identity_check(alg, identity, degrees, p)
        ctx = ExteriorContext(sum(degrees))
        saw_nonzero = False
        for _ in range(40):
            forms = [random_form(rng, ctx, alg, dg) for dg in degrees]
            val = graded_eval(identity, forms, p)
            if rep.holds:
                assert val.is_zero(), (identity, degrees)
            elif not val.is_zero():
                saw_nonzero = True
                break
        if not rep.holds:
            assert saw_nonzero, (identity, degrees,
                                 "refuted but no random witness")


def test_graded_truth_equals_algebra_truth(so3, gl2):
    """The lift is faithful: graded verdict == plain verdict, all degrees."""
    from obstructa.algebra import check_identity
    p = ProductSelector.algebra()
    for alg in (so3, gl2):
        for identity in IDENTITY_DEFS:
            flat = check_identity(alg, identity).holds
            tuples = DEGREE_TUPLES_2 \
                if len(IDENTITY_DEFS[identity][0][2]) == 2 else DEGREE_TUPLES_3
            for degrees in tuples:
                assert graded_identity_check(alg, identity, degrees,
                                             p).holds == flat


def test_graded_lie_sign_rule(so3):
    # a [^] b = (-1)^(kl+1) b [^] a for Lie brackets
    p = ProductSelector.algebra()
    rng = random.Random(9)
    for k, l in [(1, 1), (1, 2), (2, 2), (2, 3)]:
        ctx = ExteriorContext(k + l)
        for _ in range(20):
            a = random_form(rng, ctx, so3, k)
            b = random_form(rng, ctx, so3, l)
            sign = 1 if (k * l + 1) % 2 == 0 else -1
            assert wedge(a, b, p) == sign * wedge(b, a, p)


# -- matrix relation ---------------------------------------------------------------

@pytest.mark.parametrize("name,n", [("gl", 2), ("gl", 3), ("so", 3)])
def test_matrix_bracket_relation(name, n):
    alg = catalog(name, n)
    rng = random.Random(44)
    ctx = ExteriorContext(5)
    for _ in range(30):
        a = random_form(rng, ctx, alg, rng.randint(1, 2))
        b = random_form(rng, ctx, alg, rng.randint(1, 3))
        assert matrix_bracket_relation_check(alg, a, b)


def test_matrix_relation_needs_representation():
    bare = Algebra("bare", 1, ("a",), {})
    ctx = ExteriorContext(3)
    a = AForm(ctx, bare, {1: (F(1),)})
    from obstructa.errors import RepresentationError
    with pytest.raises(RepresentationError):
        matrix_bracket_relation_check(bare, a, a)


# -- powers -------------------------------------------------------------------------

def test_power_schemes_agree_on_associative(gl2):
    p = ProductSelector.algebra()
    ctx = ExteriorContext(4)
    rng = random.Random(21)
    a = random_form(rng, ctx, gl2, 1)
    vals = {paren: power(a, 4, p, paren=paren)
            for paren in ("left", "right", "balanced")}
    assert vals["left"] == vals["right"] == vals["balanced"]
    assert power(a, 4, p, paren="all") == vals["left"]


def test_power_all_raises_on_true_ambiguity():
    tbl = {(0, 0): (F(0), F(1)), (1, 1): (F(1), F(0))}
    toy = Algebra("toy", 2, ("a", "b"), tbl)
    ctx = ExteriorContext(2)
    x = AForm(ctx, toy, {0: (F(1), F(0))})        # degree-0 form
    with pytest.raises(AmbiguousPowerError):
        power(x, 4, ProductSelector.algebra(), paren="all")


# -- nil and solv certificates ---------------------------------------------------

def test_so3_nil_profile(so3):
    p = ProductSelector.algebra()
    assert is_ks_nil(so3.whole(), 2, 1, p).holds
    assert is_ks_nil(so3.whole(), 1, 2, p).holds
    rep = is_ks_nil(so3.whole(), 1, 1, p)
    assert not rep.holds and rep.witness is not None


def test_nil_verdict_confirmed_by_direct_squares(so3):
    """Independent confirmation of (2,1): a ^ a = 0 for concrete 2-forms."""
    p = ProductSelector.algebra()
    ctx = ExteriorContext(4)
    rng = random.Random(31)
    for _ in range(60):
        a = random_form(rng, ctx, so3, 2, span=4)
        assert wedge(a, a, p).is_zero()


def test_nil_refutation_witness_reproduces(gl2):
    p = ProductSelector.algebra()
    rep = is_ks_nil(gl2.whole(), 1, 2, p)
    assert not rep.holds
    assert "reproduced" in rep.witness
    assert rep.witness["reproduced"] != "0"


def test_nil_oracle_agreement_no_alarm(so3, gl2):
    p = ProductSelector.algebra()
    for alg, k, s in ((so3, 2, 1), (so3, 1, 2), (gl2, 1, 1), (gl2, 1, 2)):
        rep = is_ks_nil(alg.whole(), k, s, p, oracle="random:80")
        assert rep.details["oracle"]["agrees"]
        assert rep.details["oracle"]["seed"] == DEFAULT_SEED


def test_nil_context_too_small(so3):
    with pytest.raises(InputError):
        is_ks_nil(so3.whole(), 2, 1, ProductSelector.algebra(),
                  context=ExteriorContext(3))


def test_nil_bad_oracle_string(so3):
    with pytest.raises(InputError):
        is_ks_nil(so3.whole(), 1, 1, ProductSelector.algebra(),
                  oracle="montecarlo:5")


def test_heisenberg_solv_certificate(heis):
    p = ProductSelector.algebra()
    dec = auto_solv_decomposition(heis)
    assert dec is not None and [d.dim for d in dec] == [2, 1]
    assert is_ks_solv_certificate(heis.whole(), 2, 1, dec, p).holds
    rep = is_ks_solv_certificate(heis.whole(), 1, 1, dec, p)
    assert not rep.holds


def test_solv_certificate_rejects_non_spanning(heis):
    p = ProductSelector.algebra()
    part = heis.subspace([(F(1), F(0), F(0))])
    rep = is_ks_solv_certificate(heis.whole(), 1, 1, [part], p)
    assert not rep.holds


def test_auto_solv_absent_for_perfect(so3):
    assert auto_solv_decomposition(so3) is None


# -- injective squares (the honest suite) ------------------------------------------

def test_injective_form_check():
    gl2 = catalog("gl", 2)
    ctx = ExteriorContext(2)
    good = AForm(ctx, gl2, {1: (F(1), F(0), F(0), F(0)),
                            2: (F(0), F(1), F(0), F(0))})
    bad = AForm(ctx, gl2, {1: (F(1), F(0), F(0), F(0)),
                           2: (F(2), F(0), F(0), F(0))})
    assert injective_form_check(good)
    assert not injective_form_check(bad)


def test_solvable_injective_square_ut2_finds_counterexample():
    """ut(2) bracket is solvable yet injective 1-form squares survive:
    [E11, E12] = E12 crosses the derived-series complements."""
    alg = catalog("upper_triangular", 2, product="bracket")
    rep = solvable_injective_square(alg, 2, k=1, count=50)
    assert not rep.holds
    assert rep.witness is not None
    assert rep.witness["seed"] == DEFAULT_SEED


def test_solvable_injective_square_abelian_holds():
    abelian = Algebra("q2", 2, ("x", "y"), {})
    rep = solvable_injective_square(abelian, 2, k=1, count=30)
    assert rep.holds


def test_solvable_injective_square_guards():
    so3 = catalog("so", 3)
    with pytest.raises(InputError):
        solvable_injective_square(so3, 2)      # not solvable
    alg = catalog("upper_triangular", 2, product="bracket")
    with pytest.raises(InputError):
        solvable_injective_square(alg, 2, k=2)  # even degree
    with pytest.raises(InputError):
        solvable_injective_square(alg, 9, k=1)  # C(9,1) > dim


# -- graded weak nilpotency ---------------------------------------------------------

def test_weak_nilpotent_check_on_graded_square():
    from obstructa.algebra import Grading
    tbl = {(0, 0): (F(0), F(1))}
    alg = Algebra("x2y", 2, ("x", "y"), tbl,
                  grading=Grading("Z", (1, 2)))
    rep = weak_nilpotent_check(alg.whole(), 1, 1,
                               ProductSelector.algebra())
    assert rep.holds
    assert rep.details


def test_weak_nilpotent_needs_grading(so3):
    from obstructa.errors import GradingError
    with pytest.raises(GradingError):
        weak_nilpotent_check(so3.whole(), 1, 1, ProductSelector.algebra())
