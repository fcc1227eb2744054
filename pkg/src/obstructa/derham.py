"""Forms with polynomial coefficients in formal coordinates x^1..x^m.

The coefficient ring is Q[x^1,...,x^m]: the smallest exact ring on which
the exterior derivative is nontrivial.  Everything else (wedge rule, signs)
matches the constant-coefficient engine in forms.py term for term, and
restricting a PolyForm with constant entries recovers the AForm results.
"""

from __future__ import annotations

from typing import Sequence

from obstructa.errors import ContextError, DimensionMismatch, InputError
from obstructa.forms import AForm, ExteriorContext, ProductSelector, mask_label
from obstructa.kernels.pure import shuffle_sign
from obstructa.linalg import is_zero as vec_is_zero
from obstructa.rationals import Scalar, ZERO


class Poly:
    """Sparse multivariate polynomial: exponent tuple -> Scalar."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Scalar] = {}
        for exp, c in (terms or {}).items():
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise InputError(f"bad exponent vector {exp} for {nvars} variables")
            c = Scalar(c)
            if c != 0:
                clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: Scalar(c)})

    @classmethod
    def x(cls, nvars: int, j: int) -> "Poly":
        if not 0 <= j < nvars:
            raise InputError(f"variable index {j} out of range")
        exp = tuple(1 if i == j else 0 for i in range(nvars))
        return cls(nvars, {exp: Scalar(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self) -> Scalar:
        if not self.terms:
            return ZERO
        if not self.is_constant():
            raise InputError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def _peer(self, other: "Poly"):
        if other.nvars != self.nvars:
            raise DimensionMismatch("polynomials over different variable counts")

    def __add__(self, other: "Poly") -> "Poly":
        self._peer(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, ZERO) + c
        return Poly(self.nvars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._peer(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, ZERO) - c
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = Scalar(other)
            return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})
        self._peer(other)
        out: dict[tuple[int, ...], Scalar] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(a + b for a, b in zip(ea, eb))
                out[key] = out.get(key, ZERO) + ca * cb
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def diff(self, j: int) -> "Poly":
        out: dict[tuple[int, ...], Scalar] = {}
        for exp, c in self.terms.items():
            if exp[j] == 0:
                continue
            key = tuple(e - 1 if i == j else e for i, e in enumerate(exp))
            out[key] = out.get(key, ZERO) + c * exp[j]
        return Poly(self.nvars, out)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and other.nvars == self.nvars
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for exp in sorted(self.terms):
            c = self.terms[exp]
            mono = "".join(f"x{i+1}^{e}" if e > 1 else f"x{i+1}"
                           for i, e in enumerate(exp) if e)
            bits.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(bits)


class PolyForm:
    """terms: mask -> tuple of Poly, one per algebra basis coordinate."""

    def __init__(self, context: ExteriorContext, algebra, terms: dict[int, Sequence[Poly]]):
        nvars = context.m
        clean: dict[int, tuple[Poly, ...]] = {}
        for mask, coords in terms.items():
            if not 0 <= mask <= context.full_mask():
                raise InputError(f"multi-index {mask:#x} outside context")
            row = tuple(coords)
            if len(row) != algebra.dim:
                raise DimensionMismatch("PolyForm term has wrong coordinate length")
            for p in row:
                if not isinstance(p, Poly) or p.nvars != nvars:
                    raise InputError("coordinates must be Poly over the context variables")
            if any(not p.is_zero() for p in row):
                clean[mask] = row
        self.context = context
        self.algebra = algebra
        self.terms = clean

    @classmethod
    def zero(cls, context: ExteriorContext, algebra) -> "PolyForm":
        return cls(context, algebra, {})

    @classmethod
    def from_aform(cls, a: AForm) -> "PolyForm":
        n = a.context.m
        return cls(a.context, a.algebra,
                   {m: tuple(Poly.const(n, c) for c in v) for m, v in a.terms.items()})

    def to_aform(self) -> AForm:
        out = {}
        for mask, row in self.terms.items():
            out[mask] = tuple(p.constant_value() for p in row)
        return AForm(self.context, self.algebra, out)

    def is_constant(self) -> bool:
        return all(p.is_constant() for row in self.terms.values() for p in row)

    @property
    def degree(self):
        degs = {m.bit_count() for m in self.terms}
        if not degs:
            return None
        return degs.pop() if len(degs) == 1 else "mixed"

    def is_zero(self) -> bool:
        return not self.terms

    def _peer(self, other: "PolyForm"):
        if other.context != self.context:
            raise ContextError("forms built over different contexts")
        if other.algebra is not self.algebra:
            raise ContextError("forms valued in different algebras")

    def __add__(self, other: "PolyForm") -> "PolyForm":
        self._peer(other)
        out = {m: list(row) for m, row in self.terms.items()}
        for m, row in other.terms.items():
            if m in out:
                out[m] = [a + b for a, b in zip(out[m], row)]
            else:
                out[m] = list(row)
        return PolyForm(self.context, self.algebra, out)

    def __sub__(self, other: "PolyForm") -> "PolyForm":
        return self + (-1) * other

    def __rmul__(self, c) -> "PolyForm":
        if isinstance(c, Poly):
            return PolyForm(self.context, self.algebra,
                            {m: [c * p for p in row] for m, row in self.terms.items()})
        c = Scalar(c)
        return PolyForm(self.context, self.algebra,
                        {m: [c * p for p in row] for m, row in self.terms.items()})

    def __neg__(self) -> "PolyForm":
        return (-1) * self

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyForm) and other.algebra is self.algebra
                and other.context == self.context and other.terms == self.terms)

    def component_vectors(self):
        """Yield (mask, exponent, Scalar vector): the constant-coefficient
        slices of the form, used for value-space membership checks."""
        for mask, row in sorted(self.terms.items()):
            exps = set()
            for p in row:
                exps.update(p.terms)
            for exp in sorted(exps):
                vec = tuple(p.terms.get(exp, ZERO) for p in row)
                if not vec_is_zero(vec):
                    yield mask, exp, vec

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            row = self.terms[m]
            inner = " , ".join(f"{self.algebra.basis_labels[i]}:[{p!r}]"
                               for i, p in enumerate(row) if not p.is_zero())
            bits.append(f"{mask_label(m)}(x)({inner})")
        return " + ".join(bits)


def poly_wedge(a: PolyForm, b: PolyForm, p: ProductSelector) -> PolyForm:
    """Monomial-rule wedge with polynomial coefficient multiplication."""
    a._peer(b)
    table = p.table_on(a.algebra)
    dim = a.algebra.dim
    nvars = a.context.m
    zero = Poly(nvars)
    acc: dict[int, list[Poly]] = {}
    for ma, ra in a.terms.items():
        for mb, rb in b.terms.items():
            if ma & mb:
                continue
            sgn = shuffle_sign(ma, mb)
            key = ma | mb
            out = acc.get(key)
            if out is None:
                out = [zero] * dim
                acc[key] = out
            for i, pa in enumerate(ra):
                if pa.is_zero():
                    continue
                for j, pb in enumerate(rb):
                    if pb.is_zero():
                        continue
                    ent = table.get((i, j))
                    if ent is None:
                        continue
                    prod = pa * pb
                    if sgn < 0:
                        prod = -prod
                    for k, z in enumerate(ent):
                        if z != 0:
                            out[k] = out[k] + z * prod
    return PolyForm(a.context, a.algebra, acc)


def d(a: PolyForm) -> PolyForm:
    """Exterior derivative: d(f dx^I) = sum_j (df/dx^j) dx^j ^ dx^I."""
    nvars = a.context.m
    zero = Poly(nvars)
    acc: dict[int, list[Poly]] = {}
    for mask, row in a.terms.items():
        for j in range(nvars):
            bit = 1 << j
            if mask & bit:
                continue
            sgn = shuffle_sign(bit, mask)
            key = mask | bit
            derivs = [p.diff(j) for p in row]
            if all(p.is_zero() for p in derivs):
                continue
            out = acc.get(key)
            if out is None:
                out = [zero] * a.algebra.dim
                acc[key] = out
            for k, dp in enumerate(derivs):
                if not dp.is_zero():
                    out[k] = out[k] + dp if sgn > 0 else out[k] - dp
    return PolyForm(a.context, a.algebra, acc)


def _check_valued_in(form: PolyForm, part: int, what: str):
    """part 0 or 1 of the algebra's designated decomposition; no-op when the
    algebra carries none."""
    dec = form.algebra.decomposition
    if dec is None:
        return
    space = dec[part]
    for mask, exp, vec in form.component_vectors():
        if not space.contains(vec):
            raise InputError(
                f"{what} has a component outside A{part}: "
                f"mask {mask:#x}, exponent {exp}")


def curvature(omega: PolyForm, p: ProductSelector) -> PolyForm:
    """Omega = d(omega) + omega ^ omega, with omega valued in A1."""
    if omega.degree not in (1, None):
        raise InputError("curvature expects a degree-1 form")
    _check_valued_in(omega, 1, "connection form")
    return d(omega) + poly_wedge(omega, omega, p)


def torsion(e: PolyForm, omega: PolyForm, p: ProductSelector) -> PolyForm:
    """Theta = d(e) + omega ^ e, with e valued in A0 and omega in A1."""
    if e.degree not in (1, None) or omega.degree not in (1, None):
        raise InputError("torsion expects degree-1 forms")
    _check_valued_in(e, 0, "soldering form")
    _check_valued_in(omega, 1, "connection form")
    return d(e) + poly_wedge(omega, e, p)


def _table_associative(alg, table) -> bool:
    from obstructa.forms import table_multiply
    n = alg.dim
    from obstructa.linalg import unit_vector
    units = [unit_vector(n, i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            ij = table_multiply(table, n, units[i], units[j])
            for k in range(n):
                jk = table_multiply(table, n, units[j], units[k])
                left = table_multiply(table, n, ij, units[k])
                right = table_multiply(table, n, units[i], jk)
                if left != right:
                    return False
    return True


def bianchi_residual(omega: PolyForm, p: ProductSelector) -> PolyForm:
    """d(Omega) - (Omega ^ omega - omega ^ Omega); zero when p is associative.

    The identity is only claimed for associative products, so anything else
    is rejected up front rather than reported as a mysterious nonzero.
    """
    if omega.degree not in (1, None):
        raise InputError("bianchi_residual expects a degree-1 form")
    table = p.table_on(omega.algebra)
    if not _table_associative(omega.algebra, table):
        raise InputError(
            f"product {p.label!r} is not associative on {omega.algebra.name!r}; "
            "the Bianchi identity is not claimed there")
    big_omega = d(omega) + poly_wedge(omega, omega, p)
    return d(big_omega) - (poly_wedge(big_omega, omega, p)
                           - poly_wedge(omega, big_omega, p))


def torsionless_check(e: PolyForm, omega: PolyForm, p: ProductSelector) -> bool:
    return torsion(e, omega, p).is_zero()
