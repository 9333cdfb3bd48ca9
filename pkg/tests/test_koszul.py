from math import comb

import pytest

from perfcx.complex import dual, identity_map, span, suspend, tensor
from perfcx.errors import DataError
from perfcx.homology import homology_presentation, is_i_torsion
from perfcx.koszul import (DGModuleStructure, hom_decomposition, is_partial_system_of_parameters,
                           is_system_of_parameters, koszul, koszul_level, self_action,
                           self_duality, suspend_action, sum_action, tensor_decomposition,
                           verify_dg_module)
from perfcx.level import level_upper_bound
from perfcx.ring import Ring, RingMatrix, in_column_span


def poly_ring(n):
    return Ring([f"x{i + 1}" for i in range(n)])


def test_koszul_on_one_element(qx):
    x = qx.gens[0]
    K = koszul([x])
    assert K.ranks == {0: 1, 1: 1}
    assert K.diff(1) == RingMatrix.from_rows(qx, [[x]])


def test_koszul_on_two_elements(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    assert K.ranks == {0: 1, 1: 2, 2: 1}
    assert K.diff(1) == RingMatrix.from_rows(qxy, [[x, y]])
    assert K.diff(2) == RingMatrix.from_rows(qxy, [[-y], [x]])


def test_koszul_on_sop_is_m_torsion(qxy):
    x, y = qxy.gens
    assert is_i_torsion(koszul([x**2, y**3]), qxy.max_ideal()).value


def test_h0_is_quotient_and_elements_kill_homology(qxyz):
    x, y, z = qxyz.gens
    elems = [x * y, y * z, x**2]
    K = koszul(elems)
    H0 = homology_presentation(K, 0)
    assert all(H0.contains({0: e}) for e in elems)
    assert not H0.contains({0: qxyz.one})
    for i in K.degrees():
        Z = homology_presentation(K, i)
        for e in elems:
            rel = Z.relations
            if Z.ngens:
                assert in_column_span(rel, RingMatrix.scalar(qxyz, Z.ngens, e))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_self_duality(n):
    K = koszul(poly_ring(n).gens)
    sd = self_duality(K)
    assert sd.iso.source == dual(K) and sd.iso.target == suspend(K, -n)
    assert sd.iso.failing_degree() is None
    assert sd.inverse @ sd.iso == identity_map(dual(K))
    assert sd.iso @ sd.inverse == identity_map(suspend(K, -n))
    assert set(sd.signs.values()) <= {1, -1}


@pytest.mark.parametrize("n, ranks", [(1, [1, 2, 1]), (2, [1, 4, 6, 4, 1]), (3, [1, 6, 15, 20, 15, 6, 1])])
def test_tensor_decomposition(n, ranks):
    K = koszul(poly_ring(n).gens)
    td = tensor_decomposition(K)
    assert td.rank_identity
    assert [td.ranks_tensor[j] for j in range(2 * n + 1)] == ranks
    assert td.iso.failing_degree() is None and td.inverse.failing_degree() is None
    assert td.inverse @ td.iso == identity_map(td.source)
    assert td.iso @ td.inverse == identity_map(tensor(K, K))
    assert len(td.summands) == 2 ** n


def test_tensor_decomposition_rank_only_for_larger_n():
    K = koszul(poly_ring(5).gens)
    td = tensor_decomposition(K)
    assert td.rank_identity and td.iso is None
    assert td.ranks_tensor[5] == sum(comb(5, i) * comb(5, 5 - i) for i in range(6))


def test_dg_module_examples(qxy):
    K = koszul(qxy.gens)
    S = self_action(K)
    assert verify_dg_module(S).value
    T = sum_action(suspend_action(S, 1), S)
    assert verify_dg_module(T).value
    assert "exterior algebra" in verify_dg_module(T).note


def test_dg_module_rejects_broken_action(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    S = self_action(K)
    broken = dict(S.action)
    # make nu_0 o nu_0 nonzero on K_0 by sending e_empty to e_1 + e_2 (nu_0 on K_1 sends e_2 to e_12)
    broken[(0, 0)] = RingMatrix.from_rows(qxy, [[1], [1]])
    res = verify_dg_module(DGModuleStructure(K, K, broken))
    assert not res.value
    assert res.witness["axiom"] in ("leibniz", "square-zero", "alternation")


def test_dg_module_shape_mismatch(qxy):
    K = koszul(qxy.gens)
    bad = {(0, 0): RingMatrix.identity(qxy, 3)}
    with pytest.raises(DataError):
        verify_dg_module(DGModuleStructure(K, K, bad))


def test_koszul_level_examples(qxy):
    x, y = qxy.gens
    assert (koszul_level(koszul([x, y])).value, koszul_level(koszul([x, y])).status) == (3, "EXACT")
    kl = koszul_level(koszul([x]))
    assert (kl.value, kl.status) == (2, "UPPER_BOUND")
    kl = koszul_level(koszul([x**2, y**3]))
    assert (kl.value, kl.status) == (3, "EXACT")


def test_system_of_parameters_certificates(qxyz):
    x, y, z = qxyz.gens
    assert is_system_of_parameters(qxyz, [x, y, z])
    assert is_system_of_parameters(qxyz, [x + y, y**2, z**3])
    assert not is_system_of_parameters(qxyz, [x, y])
    assert not is_system_of_parameters(qxyz, [x, x * y, z])
    assert is_partial_system_of_parameters(qxyz, [x, y])
    assert not is_partial_system_of_parameters(qxyz, [x, x**2])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hom_decomposition_gives_sharp_level(n):
    K = koszul(poly_ring(n).gens)
    H = tensor(dual(K), K)
    iso = hom_decomposition(K)
    bound = level_upper_bound(H, iso=iso)
    assert bound.upper == level_upper_bound(K).upper == n + 1 == span(K)


def test_hom_without_hint_is_a_weaker_bound(qxy):
    K = koszul(qxy.gens)
    assert level_upper_bound(tensor(dual(K), K)).upper == 5
