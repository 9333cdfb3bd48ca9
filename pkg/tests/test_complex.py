import math

import pytest

from perfcx.complex import (ChainMap, FreeComplex, Homotopy, cone, direct_sum, dual, dual_map,
                            evaluation_map, evaluation_reduce, free_module, hom_complex,
                            homotopy_residual, identity_map, is_minimal, minimize, scalar_map, span,
                            suspend, suspend_map, tensor, tensor_map, tensor_power, truncate_below,
                            zero_complex, zero_map)
from perfcx.errors import DataError
from perfcx.homology import homology_is_zero, null_homotopy
from perfcx.koszul import koszul
from perfcx.ring import Ring, RingMatrix


@pytest.fixture
def qt2():
    return Ring("t", quotient=["t^2"])


def test_complex_rejects_nonzero_square(qxy):
    x, y = qxy.gens
    with pytest.raises(DataError):
        FreeComplex(qxy, {0: 1, 1: 1, 2: 1}, {1: RingMatrix.from_rows(qxy, [[x]]),
                                                2: RingMatrix.from_rows(qxy, [[y]])})


def test_chain_map_rejects_noncommuting_square(qxy):
    x, y = qxy.gens
    K = koszul([x])
    with pytest.raises(DataError):
        ChainMap(K, K, {0: RingMatrix.from_rows(qxy, [[x]])})


def test_span_examples(qxy):
    assert span(zero_complex(qxy)) == -math.inf
    assert span(free_module(qxy)) == 1
    for n in (1, 2, 3):
        R = Ring([f"x{i}" for i in range(n)])
        assert span(koszul(R.gens)) == n + 1


def test_suspension_examples(qx):
    x = qx.gens[0]
    K = koszul([x])
    assert suspend(K, 0) == K
    assert suspend(suspend(K, 1), -1) == K
    S = suspend(K, 1)
    assert S.ranks == {1: 1, 2: 1}
    assert S.diff(2) == RingMatrix.from_rows(qx, [[-x]])


def test_dual_examples(qx):
    x = qx.gens[0]
    R = free_module(qx)
    assert dual(R) == R
    K = koszul([x])
    D = dual(K)
    assert D.ranks == {-1: 1, 0: 1}
    assert D.diff(0) == RingMatrix.from_rows(qx, [[x]])
    # K(x)* is isomorphic to S^{-1} K(x) through the signs (1, -1)
    S = suspend(K, -1)
    iso = ChainMap(D, S, {-1: RingMatrix.identity(qx, 1), 0: RingMatrix.scalar(qx, 1, -1)})
    assert iso.failing_degree() is None
    assert dual(D) == K


def test_tensor_unit_and_koszul_ranks(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    R = free_module(qxy)
    assert tensor(K, R) == K and tensor(R, K) == K
    KK = tensor(K, K)
    assert [KK.rank(j) for j in range(5)] == [1, 4, 6, 4, 1]


def test_hom_complex_examples(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    R = free_module(qxy)
    assert hom_complex(R, K) == K
    assert hom_complex(K, R) == dual(K)
    H = hom_complex(K, K)
    assert [H.rank(j) for j in range(-2, 3)] == [1, 4, 6, 4, 1]


def test_tensor_power_examples(qxy, qt2):
    x, y = qxy.gens
    K = koszul([x, y])
    idK = identity_map(K)
    assert tensor_power(idK, 2) == identity_map(tensor(K, K))
    f = scalar_map(K, x)
    assert tensor_power(f, 1) == f
    t = qt2.gens[0]
    g = scalar_map(free_module(qt2), t)
    assert tensor_power(g, 2).is_zero()


def test_tensor_map_is_chain_map(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    f = scalar_map(K, x + y)
    g = tensor_map(f, identity_map(K))
    assert g.failing_degree() is None


def test_truncation_examples(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    tr = truncate_below(K, -5)
    assert tr.sub.is_zero() and tr.quotient == K
    tr = truncate_below(K, 2)
    assert tr.quotient == free_module(qxy, 1, 2)
    assert tr.surjection.failing_degree() is None and tr.inclusion.failing_degree() is None
    tr = truncate_below(K, 10)
    assert tr.quotient.is_zero() and tr.sub == K


def test_minimize_examples(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    assert minimize(K).complex == K and is_minimal(K)
    assert minimize(cone(identity_map(free_module(qxy)))).complex.is_zero()
    F = FreeComplex(qxy, {0: 1, 1: 2}, {1: RingMatrix.from_rows(qxy, [[1, x]])})
    m = minimize(F)
    assert m.complex.ranks == {1: 1} and m.complex.diffs == {}
    assert m.to_min.failing_degree() is None and m.from_min.failing_degree() is None


def test_minimize_preserves_homotopy_type(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    C = direct_sum(cone(identity_map(K)), K)
    m = minimize(C)
    assert m.complex.ranks == K.ranks
    assert null_homotopy(m.to_min @ m.from_min - identity_map(m.complex)) is not None
    assert null_homotopy(m.from_min @ m.to_min - identity_map(C)) is not None
    assert all(p.in_max_ideal() for D in m.complex.diffs.values() for p in D.entries.values())


def test_evaluation_map_is_chain_map(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    e = evaluation_map(K)
    assert e.failing_degree() is None
    assert e.target == free_module(qxy)


def test_evaluation_reduce_examples(qt2):
    R = free_module(qt2)
    idR = identity_map(R)
    assert evaluation_reduce(idR).reduced == idR
    assert evaluation_reduce(zero_map(R, R)).reduced.is_zero()
    t = qt2.gens[0]
    f = scalar_map(R, t)
    red = evaluation_reduce(f, (f, idR))
    assert red.reduced == f
    assert red.second @ red.first == red.reduced


def test_dual_and_suspend_maps(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    f = scalar_map(K, y)
    assert dual_map(f).failing_degree() is None
    assert suspend_map(f, 3).failing_degree() is None


def test_homotopy_boundary_is_null_homotopic_map(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    h = Homotopy(K, K, {0: RingMatrix.from_rows(qxy, [[1], [0]])})
    b = h.boundary()
    assert b.failing_degree() is None
    assert homotopy_residual(b, h).is_zero()


def test_cone_of_identity_is_exact(qxy):
    x, y = qxy.gens
    C = cone(identity_map(koszul([x, y])))
    assert all(homology_is_zero(C, n) for n in C.degrees())
