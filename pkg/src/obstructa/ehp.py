"""Hilbert-Palatini forms, their duals, trace maps, and generic vanishing.

The inhomogeneous form at spacetime dimension n is

    alpha_{n,L} = (^{n-2} e) ^ Omega  +  L/(n-1)! (^n e)

with e a degree-1 form valued in the designated A0, Omega a degree-2 form
valued in A1.  The geometric dual swaps the roles of the fields (powers of
omega against E); the algebraic dual swaps the value spaces.  Generic
vanishing at dimension n is decided by polarization over an n-generator
frame: the e-slots share one alternating variable, the curvature slot is
an independent variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from obstructa.algebra import Algebra, tree_to_string, trees_for_scheme
from obstructa.derham import Poly, PolyForm, curvature, d, poly_wedge, torsion
from obstructa.errors import DimensionMismatch, InputError
from obstructa.forms import (
    AForm,
    ExteriorContext,
    GenericCheckReport,
    ProductSelector,
    Slot,
    polarized_vanishes,
    reproduce_polarization_witness,
    wedge,
)
from obstructa.linalg import Vector, vec
from obstructa.rationals import Scalar, ZERO

VARIANTS = ("homogeneous", "inhomogeneous", "geometric_dual", "algebraic_dual")


@dataclass(frozen=True)
class HPOptions:
    n: int
    lam: Scalar = ZERO
    product: ProductSelector = field(default_factory=ProductSelector.algebra)
    paren: str = "left"
    variant: str = "inhomogeneous"

    def __post_init__(self):
        if self.n < 2:
            raise InputError(f"spacetime dimension must be >= 2, got {self.n}")
        if self.variant not in VARIANTS:
            raise InputError(f"variant must be one of {VARIANTS}")
        object.__setattr__(self, "lam", Scalar(self.lam))


class ConnectionData:
    """Connection pair (e, omega) with optional formal curvatures.

    mode "formal": Omega (and E, for the geometric dual) are free fields and
    must be supplied when used.  mode "concrete": polynomial forms only;
    Omega and E are computed by the de Rham layer and may not be supplied.
    swap=True designates the interchanged value spaces (algebraic dual
    configuration space): e valued in A1, omega in A0.
    """

    def __init__(self, algebra: Algebra, e, omega, Omega=None, E=None,
                 mode: str = "formal", swap: bool = False):
        if mode not in ("formal", "concrete"):
            raise InputError(f"mode must be formal or concrete, got {mode!r}")
        if mode == "concrete":
            if Omega is not None or E is not None:
                raise InputError("concrete mode computes Omega and E; do not supply them")
            for f0, nm in ((e, "e"), (omega, "omega")):
                if not isinstance(f0, PolyForm):
                    raise InputError(f"concrete mode needs PolyForm {nm}")
        for f0, nm, deg in ((e, "e", 1), (omega, "omega", 1),
                            (Omega, "Omega", 2), (E, "E", 2)):
            if f0 is not None and f0.degree not in (deg, None):
                raise InputError(f"{nm} must be a degree-{deg} form")
        ctx = e.context
        for f0 in (omega, Omega, E):
            if f0 is not None and f0.context != ctx:
                raise InputError("all connection forms must share one context")
            if f0 is not None and f0.algebra is not algebra:
                raise InputError("all connection forms must be valued in the given algebra")
        if e.algebra is not algebra:
            raise InputError("all connection forms must be valued in the given algebra")
        e_part, w_part = (1, 0) if swap else (0, 1)
        _check_valued(e, e_part, "e")
        _check_valued(omega, w_part, "omega")
        if Omega is not None:
            _check_valued(Omega, w_part, "Omega")
        if E is not None:
            _check_valued(E, e_part, "E")
        self.algebra = algebra
        self.e = e
        self.omega = omega
        self.Omega = Omega
        self.E = E
        self.mode = mode
        self.swap = swap


def _check_valued(form, part: int, what: str):
    dec = form.algebra.decomposition
    if dec is None or form is None:
        return
    space = dec[part]
    if isinstance(form, PolyForm):
        for mask, exp, v in form.component_vectors():
            if not space.contains(v):
                raise InputError(f"{what} has a component outside A{part} "
                                 f"(mask {mask:#x}, exponent {exp})")
    else:
        for mask, v in form.terms.items():
            if not space.contains(v):
                raise InputError(f"{what} has a component outside A{part} "
                                 f"(mask {mask:#x})")


def _is_poly(form) -> bool:
    return isinstance(form, PolyForm)


def _wedge_any(a, b, p: ProductSelector):
    if _is_poly(a):
        return poly_wedge(a, b, p)
    return wedge(a, b, p)


def _zero_like(form):
    if _is_poly(form):
        return PolyForm.zero(form.context, form.algebra)
    return AForm.zero(form.context, form.algebra)


def _power_any(a, s: int, p: ProductSelector, paren: str):
    """s-fold wedge power; all trees of the scheme must agree."""
    from obstructa.errors import AmbiguousPowerError
    trees = trees_for_scheme(paren, s)
    vals = []
    for t in trees:
        vals.append(_fold(t, [a] * s, p))
    for t, v in zip(trees[1:], vals[1:]):
        if not (v == vals[0]):
            raise AmbiguousPowerError(
                f"wedge power {s} differs between parenthesizations",
                (tree_to_string(trees[0]), tree_to_string(t)))
    return vals[0]


def _fold(tree, leaves, p: ProductSelector):
    if isinstance(tree, int):
        return leaves[tree]
    return _wedge_any(_fold(tree[0], leaves, p), _fold(tree[1], leaves, p), p)


def _resize(form, m_new: int):
    """Transplant a form into a larger context; masks are unchanged."""
    ctx = ExteriorContext(m_new)
    if _is_poly(form):
        pad = m_new - form.context.m
        terms = {}
        for mask, row in form.terms.items():
            terms[mask] = tuple(
                Poly(m_new, {exp + (0,) * pad: c for exp, c in p0.terms.items()})
                for p0 in row)
        return PolyForm(ctx, form.algebra, terms)
    return AForm(ctx, form.algebra, dict(form.terms))


def resolve_curvature(c: ConnectionData, opt: HPOptions):
    if c.mode == "concrete":
        return curvature(c.omega, opt.product) if c.algebra.decomposition \
            else d(c.omega) + poly_wedge(c.omega, c.omega, opt.product)
    if c.Omega is None:
        raise InputError("formal mode needs an explicit Omega for this variant")
    return c.Omega


def resolve_soldering_curvature(c: ConnectionData, opt: HPOptions):
    """E = de + e ^ e, the curvature-like field of the soldering form."""
    if c.mode == "concrete":
        return d(c.e) + poly_wedge(c.e, c.e, opt.product)
    if c.E is None:
        raise InputError("formal mode needs an explicit E for the geometric dual")
    return c.E


def hp_form(c: ConnectionData, opt: HPOptions):
    """The degree-n Hilbert-Palatini form for the requested variant."""
    if opt.variant in ("geometric_dual", "algebraic_dual"):
        return dual_forms(c, opt)
    base, curv = c.e, resolve_curvature(c, opt)
    return _assemble(base, curv, c, opt, with_lambda=opt.variant == "inhomogeneous")


def dual_forms(c: ConnectionData, opt: HPOptions):
    """geometric_dual: powers of omega against E.  algebraic_dual: the
    plain formula on the swapped-value-space configuration."""
    if opt.variant == "geometric_dual":
        base, curv = c.omega, resolve_soldering_curvature(c, opt)
        return _assemble(base, curv, c, opt, with_lambda=True)
    if opt.variant == "algebraic_dual":
        if not c.swap and c.algebra.decomposition is not None:
            raise InputError(
                "algebraic dual lives on the swapped configuration space; "
                "build ConnectionData with swap=True")
        base, curv = c.e, resolve_curvature(c, opt)
        return _assemble(base, curv, c, opt, with_lambda=True)
    raise InputError(f"dual_forms needs a dual variant, got {opt.variant!r}")


def _assemble(base, curv, c: ConnectionData, opt: HPOptions, with_lambda: bool):
    n = opt.n
    if c.mode == "formal" and base.context.m < n:
        m_new = n
        base = _resize(base, m_new)
        curv = _resize(curv, m_new)
    if n == 2:
        alpha = curv
    else:
        epow = _power_any(base, n - 2, opt.product, opt.paren)
        alpha = _wedge_any(epow, curv, opt.product)
    if with_lambda and opt.lam != 0:
        top = _power_any(base, n, opt.product, opt.paren)
        coeff = opt.lam / math.factorial(n - 1)
        alpha = alpha + coeff * top
    return alpha


# -- trace maps ----------------------------------------------------------------

class TraceMap:
    """Linear functional on the algebra, as a coordinate vector."""

    def __init__(self, algebra: Algebra, functional, provenance: str = "user-supplied"):
        row = vec(functional)
        if len(row) != algebra.dim:
            raise DimensionMismatch(
                f"trace functional has length {len(row)}, algebra dim {algebra.dim}")
        self.algebra = algebra
        self.functional = row
        self.provenance = provenance

    @classmethod
    def from_representation(cls, algebra: Algebra) -> "TraceMap":
        rep = algebra.representation
        if rep is None:
            raise InputError(f"algebra {algebra.name!r} has no MatrixRep to trace")
        return cls(algebra, rep.trace_vector(), provenance="matrix-trace-of-representation")

    def apply_vector(self, v: Vector) -> Scalar:
        return sum((a * b for a, b in zip(self.functional, v)), ZERO)

    def __repr__(self) -> str:
        return f"TraceMap({self.algebra.name}, {self.provenance})"


_SCALAR_ALGEBRA = Algebra("R", 1, ("1",), {(0, 0): (Scalar(1),)},
                          provenance="internal")


def apply_trace(f, t: TraceMap):
    """Componentwise functional application; lands in the scalar algebra."""
    if f.algebra is not t.algebra and f.algebra.dim != t.algebra.dim:
        raise DimensionMismatch("trace map built for a different algebra")
    if _is_poly(f):
        nv = f.context.m
        terms = {}
        for mask, row in f.terms.items():
            acc = Poly(nv)
            for coeff, p0 in zip(t.functional, row):
                if coeff != 0 and not p0.is_zero():
                    acc = acc + coeff * p0
            terms[mask] = (acc,)
        return PolyForm(f.context, _SCALAR_ALGEBRA, terms)
    terms = {}
    for mask, v in f.terms.items():
        terms[mask] = (t.apply_vector(v),)
    return AForm(f.context, _SCALAR_ALGEBRA, terms)


# -- equations of motion as residuals -------------------------------------------

def motion_residuals(c: ConnectionData, opt: HPOptions):
    """Left-hand sides of the two field equations, evaluated exactly:
    (^{n-2}e ^ Omega + L/(n-1)! ^n e,  ^{n-2}e ^ Theta)."""
    if c.mode != "concrete":
        raise InputError("motion residuals need concrete connection data")
    n = opt.n
    Om = resolve_curvature(c, opt)
    if c.algebra.decomposition is not None:
        Th = torsion(c.e, c.omega, opt.product)
    else:
        Th = d(c.e) + poly_wedge(c.omega, c.e, opt.product)
    if n == 2:
        first = Om
        second = Th
    else:
        epow = _power_any(c.e, n - 2, opt.product, opt.paren)
        first = _wedge_any(epow, Om, opt.product)
        second = _wedge_any(epow, Th, opt.product)
    if opt.lam != 0:
        top = _power_any(c.e, n, opt.product, opt.paren)
        first = first + (opt.lam / math.factorial(n - 1)) * top
    return first, second


# -- generic vanishing ----------------------------------------------------------

def hp_generic_vanishes(spec, opt: HPOptions) -> GenericCheckReport:
    """Decide at dimension n, for generic fields over an n-generator frame:
    (i) the cosmological term ^n e vanishes (alpha_{n,L} = alpha_n), and
    (ii) alpha_n = (^{n-2}e) ^ Omega vanishes.

    For the dual variants the 1-form slots take values in A1 and the free
    degree-2 slot in A0, per the dual table.
    """
    alg: Algebra = spec.algebra
    if spec.decomposition is not None:
        a0, a1 = spec.decomposition
        e_basis, c_basis = (tuple(a0.basis), tuple(a1.basis))
    else:
        whole = tuple(alg.whole().basis)
        e_basis, c_basis = whole, whole
    if opt.variant in ("geometric_dual", "algebraic_dual"):
        e_basis, c_basis = c_basis, e_basis
    n = opt.n
    table = opt.product.table_on(alg)
    trees = trees_for_scheme(opt.paren, max(n - 2, 1))
    scheme_names = ([tree_to_string(t) for t in trees] if opt.paren == "all"
                    else [opt.paren] * len(trees))

    alpha_vanishes = True
    alpha_witness = None
    for t, nm in zip(trees, scheme_names):
        if n == 2:
            word = 0
            slots = [Slot("curv", 2, c_basis)]
        else:
            word = (t, n - 2)
            slots = [Slot("e", 1, e_basis) for _ in range(n - 2)]
            slots.append(Slot("curv", 2, c_basis))
        ok, wit, _ = polarized_vanishes(alg.dim, table, word, slots)
        if not ok:
            alpha_vanishes = False
            if alpha_witness is None:
                alpha_witness = {
                    "part": "alpha_n", "scheme": nm, "groups": wit,
                    "reproduced": repr(reproduce_polarization_witness(
                        alg.dim, table, word, slots, wit))}
            break

    cos_vanishes = True
    cos_witness = None
    cos_trees = trees_for_scheme(opt.paren, n)
    cos_names = ([tree_to_string(t) for t in cos_trees] if opt.paren == "all"
                 else [opt.paren] * len(cos_trees))
    for t, nm in zip(cos_trees, cos_names):
        slots = [Slot("e", 1, e_basis) for _ in range(n)]
        ok, wit, _ = polarized_vanishes(alg.dim, table, t, slots)
        if not ok:
            cos_vanishes = False
            if cos_witness is None:
                cos_witness = {
                    "part": "cosmological", "scheme": nm, "groups": wit,
                    "reproduced": repr(reproduce_polarization_witness(
                        alg.dim, table, t, slots, wit))}
            break

    holds = alpha_vanishes and cos_vanishes
    return GenericCheckReport(
        property_id=f"hp_generic(n={n}, variant={opt.variant})",
        holds=holds,
        witness=alpha_witness or cos_witness,
        method="polarization",
        generator_count=n,
        details={
            "n": n,
            "variant": opt.variant,
            "paren": opt.paren,
            "product": opt.product.label,
            "alpha_n_vanishes": alpha_vanishes,
            "cosmological_term_vanishes": cos_vanishes,
            "alpha_n_witness": alpha_witness,
            "cosmological_witness": cos_witness,
            "lambda": str(opt.lam),
        })
