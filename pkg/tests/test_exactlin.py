from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latsum.errors import RankError, SingularMatrixError, ZeroVectorError
from latsum.exactlin import (
    LatticeBasis,
    annihilator_lattice,
    det,
    dual_basis,
    facets_from_vertices,
    format_rat,
    hnf,
    identity,
    integer_kernel,
    is_integral,
    lattice_from_generators,
    lll_reduce,
    mat_mul,
    mat_vec,
    primitive,
    projected_lattice,
    rat,
    smallest_dilation,
    subspace_lattice,
)


def test_rat_refuses_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/6") == F(1, 2)
    assert format_rat(F(4, 2)) == "2"
    assert format_rat(F(-1, 3)) == "-1/3"


def _is_hnf(H, m):
    for i in range(m):
        if H[i][i] <= 0:
            return False
        for j in range(len(H[0])):
            if j > i and H[i][j] != 0:
                return False
            if j < i and not 0 <= H[i][j] < H[i][i]:
                return False
    return True


def test_hnf_identity():
    H, U = hnf(identity(3))
    assert H == identity(3) and U == identity(3)


def test_hnf_small():
    A = [[1, 1], [0, 2]]
    H, U = hnf(A)
    assert mat_mul(A, U) == H
    assert abs(det(U)) == 1
    assert _is_hnf(H, 2)
    assert hnf([[2]]) == ([[2]], [[1]])


def test_hnf_rank_deficient():
    with pytest.raises(RankError):
        hnf([[1, 2], [2, 4]])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda m: st.integers(m, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m))))
def test_hnf_properties(A):
    try:
        H, U = hnf(A)
    except RankError:
        from latsum.exactlin import rank
        assert rank(A) < len(A)
        return
    assert mat_mul(A, U) == H
    assert abs(det(U)) == 1
    assert _is_hnf(H, len(A))


def test_primitive():
    assert primitive((2, 4)) == (1, 2)
    assert primitive((F(-1, 3), 0, 1)) == (-1, 0, 3)
    assert primitive((0, -2, 0)) == (0, -1, 0)
    with pytest.raises(ZeroVectorError):
        primitive((0, 0))


@given(st.lists(st.fractions(max_denominator=9), min_size=2, max_size=4),
       st.fractions(min_value=F(1, 20), max_value=20, max_denominator=20))
def test_primitive_scale_invariant(v, lam):
    if not any(v):
        return
    assert primitive([lam * x for x in v]) == primitive(v)


def test_smallest_dilation():
    assert smallest_dilation((0, 0)) == 1
    assert smallest_dilation((F(5, 2), 4)) == 2
    assert smallest_dilation((0, F(11, 3))) == 3


@given(st.lists(st.fractions(max_denominator=12), min_size=1, max_size=4))
def test_smallest_dilation_minimal(s):
    q = smallest_dilation(s)
    assert is_integral([q * x for x in s])
    assert all(not is_integral([k * x for x in s]) for k in range(1, q))


def test_dual_basis():
    assert dual_basis(identity(2)) == identity(2)
    W = [[1, 1], [0, 1]]
    assert mat_mul(dual_basis(W), W) == identity(2)
    assert dual_basis([[2, 0], [0, 2]]) == [[F(1, 2), 0], [0, F(1, 2)]]
    with pytest.raises(SingularMatrixError):
        dual_basis([[1, 2], [2, 4]])


def test_lll():
    assert sorted(map(tuple, lll_reduce(identity(3)))) == sorted(map(tuple, identity(3)))
    red = lll_reduce([[1, 0], [10, 1]])
    assert min(x * x + y * y for x, y in red) <= 2
    assert abs(det(red)) == 1
    with pytest.raises(RankError):
        lll_reduce([[1, 2], [2, 4]])


def test_projected_lattice_half_step():
    lat = projected_lattice(LatticeBasis.standard(2), [(1, 2)], [(1, 0)])
    assert lat.columns == [(F(1, 2),)]


def test_projected_lattice_axis():
    lat = projected_lattice(LatticeBasis.standard(2), [(0, 1)], [(1, 0)])
    assert lat.columns == [(F(1),)]


def test_projected_lattice_brute_force():
    L = [(0, 1, 1)]
    comp = [(1, 0, 0), (0, 1, 0)]
    lat = projected_lattice(LatticeBasis.standard(3), L, comp)
    # projection along (0,1,1) onto the first two coordinates of the complement chart
    images = set()
    for x in range(-2, 3):
        for y in range(-2, 3):
            for z in range(-2, 3):
                images.add((F(x), F(y - z)))
                assert lat.contains((x, y - z))
    gen = lattice_from_generators(sorted(images), 2)
    assert gen.covolume() == lat.covolume() == 1


def test_subspace_and_annihilator_lattices():
    assert subspace_lattice([(0, 2, 2)], 3) in ([(0, 1, 1)], [(0, -1, -1)])
    A = annihilator_lattice([(0, 1, 1)], 3)
    assert len(A) == 2
    # saturated: the maximal minors have gcd 1, so Z^3 maps onto Z^2
    H, _ = hnf([list(r) for r in A])
    assert [H[i][i] for i in range(2)] == [1, 1]
    assert mat_vec([list(r) for r in A], (0, 1, 1)) == (0, 0)
    assert integer_kernel([[1, 1, 1]], 3)


def test_facets_of_triangle():
    facets = facets_from_vertices([(0, 0), (4, 0), (0, F(11, 3))])
    assert ((-1, 0), 0) in facets and ((0, -1), 0) in facets
    assert ((11, 12), 44) in facets
