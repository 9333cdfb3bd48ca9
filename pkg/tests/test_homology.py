import pytest

from perfcx.complex import (direct_sum, free_module, identity_map, scalar_map, suspend, zero_complex,
                            zero_map, homotopy_residual)
from perfcx.errors import DataError
from perfcx.homology import (GENERIC, MAXIMAL, ModulePresentation, field_fiber_homology_map,
                             ghost_after_tensor, homology_presentation, is_fiberwise_zero, is_ghost,
                             is_i_torsion, null_homotopy)
from perfcx.koszul import koszul
from perfcx.ring import Ideal, Ring, RingMatrix
from perfcx.theorems import sharpness_instance


@pytest.fixture
def qt2():
    return Ring("t", quotient=["t^2"])


def test_homology_of_koszul(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    H0 = homology_presentation(K, 0)
    assert H0.ngens == 1
    assert H0.annihilator() == Ideal(qxy, [x, y])
    assert homology_presentation(K, 1).is_zero()
    assert homology_presentation(K, 2).is_zero()


def test_homology_in_quotient_ring():
    R = Ring("x,y", quotient=["x*y"])
    x, y = R.gens
    H1 = homology_presentation(koszul([x], R), 1)
    assert not H1.is_zero()
    pruned = H1.prune()[0]
    assert pruned.ngens == 1
    assert pruned.annihilator() == Ideal(R, [x])


def test_ghost_examples(qx):
    x = qx.gens[0]
    K = koszul([x])
    assert is_ghost(zero_map(K, K)).value
    assert is_ghost(scalar_map(K, x)).value
    R2 = Ring("x,y", quotient=["x^2", "y^2"])
    Kq = koszul(R2.gens)
    res = is_ghost(identity_map(Kq))
    assert not res.value and res.failing is not None


def test_null_homotopy_examples(qx, qxy):
    x = qx.gens[0]
    K = koszul([x])
    h = null_homotopy(zero_map(K, K))
    assert h is not None and h.is_zero()
    f = scalar_map(K, x)
    h = null_homotopy(f)
    assert h.comp(0) == RingMatrix.identity(qx, 1)
    assert homotopy_residual(f, h).is_zero()
    assert null_homotopy(identity_map(koszul(qxy.gens))) is None


def test_null_homotopic_maps_are_ghosts(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    for c in (x, y, x + y, x * y):
        f = scalar_map(K, c)
        if null_homotopy(f) is not None:
            assert is_ghost(f).value


def test_fiber_at_maximal_ideal(qt2):
    t = qt2.gens[0]
    f = scalar_map(free_module(qt2), t)
    res = field_fiber_homology_map(f, MAXIMAL)
    assert res.is_zero
    assert is_fiberwise_zero(f, [MAXIMAL]).value


def test_fiber_of_sharpness_instance():
    for d in (1, 2, 3):
        si = sharpness_instance(d)
        res = field_fiber_homology_map(si.map, MAXIMAL)
        assert not res.is_zero
        assert res.degrees[d]["map"] == 1
        assert not is_fiberwise_zero(si.map, [MAXIMAL]).value


def test_generic_fiber(qx):
    K = koszul(qx.gens)
    res = field_fiber_homology_map(identity_map(K), GENERIC)
    assert res.is_zero
    assert all(v["source"] == 0 for v in res.degrees.values())


def test_generic_fiber_needs_domain_flag():
    R = Ring("x,y", quotient=["x*y"])
    with pytest.raises(DataError):
        field_fiber_homology_map(identity_map(free_module(R)), GENERIC)


def test_zero_map_is_fiberwise_zero(qxy):
    K = koszul(qxy.gens)
    assert is_fiberwise_zero(zero_map(K, K), [MAXIMAL, GENERIC]).value


def test_torsion_examples(qxy):
    x, y = qxy.gens
    K = koszul([x, y])
    m = Ideal(qxy, [x, y])
    assert is_i_torsion(K, m).value
    assert not is_i_torsion(free_module(qxy), Ideal(qxy, [x])).value
    assert not is_i_torsion(direct_sum(suspend(free_module(qxy), 3), K), m).value


def test_torsion_is_antitone_in_the_ideal(qxy):
    # J-torsion implies I-torsion for I inside J (V(J) lies in V(I)); the converse fails
    x, y = qxy.gens
    F = koszul([x**2, x * y])     # H_0 = R/(x^2, xy), supported on V(x)
    chain = [Ideal(qxy, [x]), Ideal(qxy, [x, y**2]), Ideal(qxy, [x, y])]
    verdicts = [is_i_torsion(F, I).value for I in chain]
    assert verdicts == [True, False, False]
    assert is_i_torsion(koszul([x, y]), chain[0]).value


def test_ghost_after_tensor_trivial_cases(qxy):
    K = koszul(qxy.gens)
    assert ghost_after_tensor(ModulePresentation(qxy, 0), identity_map(K)).value
    assert ghost_after_tensor(ModulePresentation.free(qxy), zero_map(K, K)).value


def test_ghost_after_tensor_carries_proxy_caveat(qxy):
    si = sharpness_instance(qxy, qxy.gens)
    res = ghost_after_tensor(ModulePresentation.free(qxy), si.map)
    assert "finite" in res.caveat
    assert res.value == is_ghost(si.map).value


def test_zero_complex_homology(qxy):
    assert homology_presentation(zero_complex(qxy), 0).is_zero()
