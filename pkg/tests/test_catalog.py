"""Catalog families: dimensions, closure, representations, combinators."""

import math
from fractions import Fraction

import pytest

from obstructa.algebra import check_identity, verify_representation
from obstructa.catalog import (catalog, cd_imaginary_bracket, cd_tower,
                               complexify, direct_sum)
from obstructa.errors import CatalogError

F = Fraction


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_so_dimension(n):
    assert catalog("so", n).dim == n * (n - 1) // 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gl_dimension(n):
    assert catalog("gl", n).dim == n * n


@pytest.mark.parametrize("n,dim", [(1, 1), (2, 4), (3, 9)])
def test_u_dimension(n, dim):
    assert catalog("u", n).dim == dim


@pytest.mark.parametrize("n,dim", [(1, 0), (2, 3), (3, 8)])
def test_su_dimension(n, dim):
    assert catalog("su", n).dim == dim


def test_sp_dimension():
    # sp(2n, R) has dimension n(2n+1)
    assert catalog("sp", 1).dim == 3
    assert catalog("sp", 2).dim == 10


@pytest.mark.parametrize("n", [1, 2])
def test_heisenberg_dimension(n):
    assert catalog("heisenberg", n).dim == 2 * n + 1


def test_triangular_dimensions():
    assert catalog("strictly_upper", 4).dim == 6
    assert catalog("upper_triangular", 3).dim == 6


def test_so3_structure_constants(so3):
    """[L1, L2] = L3 cyclically, in the catalog's chosen normalization."""
    e1 = (F(1), F(0), F(0))
    e2 = (F(0), F(1), F(0))
    e3 = (F(0), F(0), F(1))
    assert so3.multiply_vectors(e1, e2) == e3
    assert so3.multiply_vectors(e2, e3) == e1
    assert so3.multiply_vectors(e3, e1) == e2
    assert so3.multiply_vectors(e2, e1) == tuple(-c for c in e3)


@pytest.mark.parametrize("name,args", [
    ("so", (3,)), ("so", (4,)), ("u", (2,)), ("su", (2,)), ("sp", (1,)),
    ("so_pq", (1, 2)), ("heisenberg", (1,)),
])
def test_bracket_families_are_lie(name, args):
    alg = catalog(name, *args)
    assert check_identity(alg, "anticommutative").holds
    assert check_identity(alg, "jacobi").holds


@pytest.mark.parametrize("name,args", [
    ("gl", (2,)), ("strictly_upper", (3,)), ("upper_triangular", (2,)),
])
def test_matrix_families_are_associative(name, args):
    assert check_identity(catalog(name, *args), "associative").holds


@pytest.mark.parametrize("name,args", [
    ("so", (3,)), ("so", (4,)), ("u", (1,)), ("u", (2,)), ("su", (2,)),
])
def test_reps_verify_and_antisymmetric(name, args):
    alg = catalog(name, *args)
    rep = alg.representation
    ok, wit = verify_representation(alg, rep)
    assert ok, wit
    for m in rep.matrices:
        for a in range(rep.rep_dim):
            for b in range(rep.rep_dim):
                assert m[a][b] == -m[b][a]


def test_product_parameter_switches_reading():
    bracket = catalog("gl", 2, product="bracket")
    matrix = catalog("gl", 2, product="matrix")
    assert check_identity(bracket, "anticommutative").holds
    assert check_identity(bracket, "jacobi").holds
    assert not check_identity(matrix, "anticommutative").holds
    assert check_identity(matrix, "associative").holds


def test_aliases_resolve():
    assert catalog("u(n)-as-real", 2).dim == catalog("u", 2).dim
    assert catalog("so(p,q)", 1, 2).dim == 3


def test_unknown_family_lists_options():
    with pytest.raises(CatalogError) as ei:
        catalog("e8")
    assert "so" in str(ei.value)


def test_direct_sum_structure(so3, heis):
    s = direct_sum(so3, heis)
    assert s.dim == 6
    # cross products vanish
    for i in range(3):
        for j in range(3, 6):
            ei = tuple(F(1) if t == i else F(0) for t in range(6))
            ej = tuple(F(1) if t == j else F(0) for t in range(6))
            assert all(c == 0 for c in s.multiply_vectors(ei, ej))
    assert s.basis_labels[0].startswith("s1:")
    assert s.basis_labels[3].startswith("s2:")


def test_direct_sum_rep_is_block_diagonal(so3):
    s = direct_sum(so3, so3)
    rep = s.representation
    assert rep is not None and rep.rep_dim == 6
    ok, wit = verify_representation(s, rep)
    assert ok, wit
    for m in rep.matrices[:3]:      # first summand acts on the first block
        for a in range(3):
            for b in range(3, 6):
                assert m[a][b] == 0 and m[b][a] == 0


def test_cd_tower_dims():
    assert [cd_tower("R", l).dim for l in range(5)] == [1, 2, 4, 8, 16]


def test_cd_tower_rejects_bad_base():
    with pytest.raises(CatalogError):
        cd_tower("C", 1)
    with pytest.raises(CatalogError):
        cd_tower("R", -1)


def test_cd_imaginary_bracket_quaternions_is_scaled_so3(so3):
    im_h = cd_imaginary_bracket(2)
    assert im_h.dim == 3
    assert check_identity(im_h, "anticommutative").holds
    assert check_identity(im_h, "jacobi").holds
    # [i, j] = ij - ji = 2k: twice the so(3) structure constants
    e1 = (F(1), F(0), F(0))
    e2 = (F(0), F(1), F(0))
    assert im_h.multiply_vectors(e1, e2) == (F(0), F(0), F(2))


def test_cd_imaginary_bracket_octonions_not_jacobi():
    im_o = cd_imaginary_bracket(3)
    assert im_o.dim == 7
    assert check_identity(im_o, "anticommutative").holds
    assert not check_identity(im_o, "jacobi").holds


def test_complexify_doubles_and_grades(so3):
    c = complexify(so3)
    assert c.dim == 6
    assert c.grading is not None
    assert c.grading.kind == ("Z_mod", 2)
    # i*i = -1 on the scalar part of the tensor
    e1re = tuple(F(1) if t == 0 else F(0) for t in range(6))
    e1im = tuple(F(1) if t == 3 else F(0) for t in range(6))
    out = c.multiply_vectors(e1im, e1im)
    assert out == tuple(-x for x in c.multiply_vectors(e1re, e1re))


def test_catalog_dispatches_combinators(so3):
    t = catalog("cd_tower", "R", 2)
    assert t.dim == 4
    s = catalog("direct_sum", so3, so3)
    assert s.dim == 6


def test_so_pq_split_signature_not_compact_metric():
    alg = catalog("so_pq", 2, 1)
    assert alg.dim == 3
    rep = alg.representation
    ok, _ = verify_representation(alg, rep)
    assert ok
    # eta-antisymmetric, not plain antisymmetric: some matrix has a
    # symmetric off-diagonal pair
    sym = any(rep.matrices[k][a][b] == rep.matrices[k][b][a] != 0
              for k in range(3) for a in range(3) for b in range(a + 1, 3))
    assert sym


def test_heisenberg_center(heis):
    # z is central and the only product direction
    e_z = (F(0), F(0), F(1))
    for i in range(3):
        ei = tuple(F(1) if t == i else F(0) for t in range(3))
        assert all(c == 0 for c in heis.multiply_vectors(e_z, ei))
    e_p = (F(1), F(0), F(0))
    e_q = (F(0), F(1), F(0))
    assert heis.multiply_vectors(e_p, e_q) == e_z


def test_family_arity_enforced():
    with pytest.raises(CatalogError):
        catalog("so", 3, 4)
    with pytest.raises(CatalogError):
        catalog("so_pq", 3)


def test_strictly_upper_nilpotency_degree():
    from obstructa.algebra import series
    rep = series(catalog("strictly_upper", 4), "lower_central")
    assert rep.degree == 2     # E12E23E34 nonzero, length-4 products vanish
    assert math.comb(4, 2) == catalog("strictly_upper", 4).dim
