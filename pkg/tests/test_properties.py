"""Property tests for the invariants of each module, driven by hypothesis."""

from hypothesis import assume, given, strategies as st

import oracles
from perfcx.complex import (cone, direct_sum, dual, hom_complex, homotopy_residual, identity_map,
                            minimize, scalar_map, span, suspend, tensor, tensor_map, tensor_power)
from perfcx.homology import (MAXIMAL, ModulePresentation, field_fiber_homology_map,
                             homology_presentation, is_ghost, is_i_torsion, null_homotopy)
from perfcx.koszul import koszul, self_duality
from perfcx.level import (dual_filtration, level_upper_bound, span_filtration, tensor_filtration,
                          validate_filtration)
from perfcx.random_families import make_rng, random_complex
from perfcx.resolutions import minimal_resolution
from perfcx.ring import (Ideal, Ring, RingMatrix, buchberger, ideal_membership, in_column_span,
                         krull_dimension, normal_form, radical_membership, solve_linear, syzygies)
from perfcx.textfmt import format_complex, parse_complex
from perfcx.theorems import HOLDS, NA, PASS, SENSATION, check_mit, nilpotence_search

QXY = Ring("x,y")
QXYZ = Ring("x,y,z")


def polys(ring, max_degree=3, max_terms=4, coeffs=(-3, 3)):
    exps = st.tuples(*[st.integers(0, max_degree) for _ in range(ring.nvars)]).filter(
        lambda e: sum(e) <= max_degree)
    terms = st.dictionaries(exps, st.integers(*coeffs).filter(bool), max_size=max_terms)
    return terms.map(lambda d: sum((ring.monomial(e, c) for e, c in d.items()), ring.zero))


def nonzero_polys(ring, **kw):
    return polys(ring, **kw).filter(lambda p: bool(p.terms))


def local_polys(ring, **kw):
    """Polynomials without constant term."""
    return polys(ring, **kw).map(lambda p: p - ring.const(p.constant_term()))


def monomials(ring, lo=1, hi=3):
    return st.tuples(*[st.integers(0, hi) for _ in range(ring.nvars)]).filter(
        lambda e: lo <= sum(e) <= hi).map(ring.monomial)


seeds = st.integers(0, 10**6)


def complex_from(seed, ring=QXY):
    return random_complex(ring, make_rng(seed))


def squares_to_zero(F):
    return all((F.diff(n - 1) @ F.diff(n)).is_zero() for n in F.ranks if F.rank(n - 1))


# -- ring ------------------------------------------------------------------------------------

@given(nonzero_polys(QXYZ), st.lists(nonzero_polys(QXYZ, max_degree=2), min_size=1, max_size=3))
def test_normal_form_is_idempotent(p, gens):
    G = buchberger(gens, QXYZ)
    r = normal_form(p, G)
    assert normal_form(r, G) == r


@given(polys(QXYZ, max_degree=4), st.lists(nonzero_polys(QXYZ, max_degree=2), min_size=1, max_size=3))
def test_membership_matches_normal_form_and_oracle(p, gens):
    I = Ideal(QXYZ, gens)
    member = ideal_membership(p, I)
    assert member == normal_form(p, buchberger(gens, QXYZ)).is_zero()
    assert member == oracles.member(QXYZ, p, gens)
    q = p * gens[0] + gens[-1]
    assert ideal_membership(q, I) and oracles.member(QXYZ, q, gens)


@given(st.lists(local_polys(QXY, max_degree=2), min_size=2, max_size=2), st.lists(polys(QXY, max_degree=2), min_size=2, max_size=2))
def test_solve_linear_round_trip(row, xs):
    A = RingMatrix.from_rows(QXY, [row])
    B = A @ RingMatrix.from_rows(QXY, [[x] for x in xs])
    X = solve_linear(A, B)
    assert X is not None and A @ X == B


@given(st.lists(nonzero_polys(QXY, max_degree=2, max_terms=2), min_size=2, max_size=3))
def test_syzygies_contain_bounded_kernel(row):
    A = RingMatrix.from_rows(QXY, [row])
    S = syzygies(A)
    assert (A @ S).is_zero()
    K = oracles.bounded_kernel(A, 2)
    if K.cols:
        assert in_column_span(S, K)


@given(st.lists(monomials(QXYZ), min_size=1, max_size=3), monomials(QXYZ, 1, 2))
def test_radical_membership_on_monomial_ideals(gens, p):
    I = Ideal(QXYZ, gens)
    assert radical_membership(p, I) == oracles.radical_member_by_powers(QXYZ, p, gens)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda e: 1 <= sum(e) <= 3),
                min_size=1, max_size=3))
def test_krull_dimension_of_monomial_ideals(exps):
    I = Ideal(QXY, [QXY.monomial(e) for e in exps])
    assert krull_dimension(I) == oracles.monomial_dimension(exps, 2)


# -- complexes -------------------------------------------------------------------------------

@given(seeds, seeds)
def test_constructors_square_to_zero(a, b):
    F, G = complex_from(a), complex_from(b)
    for C in (F, dual(F), suspend(F, 2), tensor(F, G), hom_complex(F, G), direct_sum(F, G),
              cone(identity_map(F))):
        assert squares_to_zero(C)


@given(seeds, st.integers(-3, 3), st.integers(-3, 3))
def test_dual_and_suspension_laws(a, i, j):
    F = complex_from(a)
    assert dual(dual(F)) == F
    assert suspend(F, i + j) == suspend(suspend(F, i), j)


@given(seeds, seeds)
def test_span_of_tensor(a, b):
    F, G = complex_from(a), complex_from(b)
    assume(not F.is_zero() and not G.is_zero())
    assert span(tensor(F, G)) == span(F) + span(G) - 1


@given(seeds, local_polys(QXY, max_degree=1), local_polys(QXY, max_degree=1), st.integers(1, 2))
def test_tensor_power_respects_composition(a, p, q, n):
    F = complex_from(a)
    f, g = scalar_map(F, p), scalar_map(F, q)
    assert tensor_power(g @ f, n) == tensor_power(g, n) @ tensor_power(f, n)
    assert tensor_map(g @ f, identity_map(F)) == tensor_map(g, identity_map(F)) @ tensor_map(f, identity_map(F))


@given(seeds)
def test_minimize_lands_in_maximal_ideal(a):
    F = complex_from(a)
    m = minimize(direct_sum(F, cone(identity_map(F))))
    entries = [p for D in m.complex.diffs.values() for p in D.entries.values()]
    assert all(p.in_max_ideal() for p in entries)
    fib = field_fiber_homology_map(identity_map(m.complex), MAXIMAL)
    assert all(fib.degrees[n]["source"] == m.complex.rank(n) for n in m.complex.ranks)


# -- homology --------------------------------------------------------------------------------

@given(seeds, local_polys(QXY, max_degree=2))
def test_null_homotopies_are_exact_and_ghost(a, c):
    F = complex_from(a)
    f = scalar_map(F, c)
    h = null_homotopy(f)
    if h is not None:
        assert homotopy_residual(f, h).is_zero()
        assert is_ghost(f).value


@given(st.lists(monomials(QXY, 1, 2), min_size=1, max_size=3), st.lists(monomials(QXY, 1, 2), min_size=1, max_size=2),
       st.lists(monomials(QXY, 1, 2), min_size=1, max_size=2))
def test_torsion_is_antitone_and_matches_annihilators(gens, extra1, extra2):
    F = koszul(gens, QXY)
    I = Ideal(QXY, extra1)
    J = Ideal(QXY, extra1 + extra2)
    tI, tJ = is_i_torsion(F, I).value, is_i_torsion(F, J).value
    if tJ:
        assert tI
    anns = [homology_presentation(F, n).annihilator() for n in F.ranks
            if not homology_presentation(F, n).is_zero()]
    proxy = all(radical_membership(g, A) for g in I.gens for A in anns)
    assert tI == proxy


# -- koszul ---------------------------------------------------------------------------------

@given(st.lists(nonzero_polys(QXYZ, max_degree=3, max_terms=2), min_size=1, max_size=4))
def test_koszul_homology_is_killed_by_the_elements(elems):
    K = koszul(elems, QXYZ)
    assert squares_to_zero(K)
    H0 = homology_presentation(K, 0)
    assert all(H0.contains({0: e}) for e in elems)
    for n in K.ranks:
        H = homology_presentation(K, n)
        if H.ngens:
            for e in elems:
                assert in_column_span(H.relations, RingMatrix.scalar(QXYZ, H.ngens, e))


@given(st.integers(1, 3), st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_self_duality_is_invertible(n, powers):
    R = Ring([f"x{i}" for i in range(n)])
    K = koszul([g ** k for g, k in zip(R.gens, powers)])
    sd = self_duality(K)
    assert sd.inverse @ sd.iso == identity_map(dual(K))


# -- level ---------------------------------------------------------------------------------

@given(seeds, seeds)
def test_filtration_constructions(a, b):
    F, G = complex_from(a), complex_from(b)
    phi, psi = span_filtration(F), span_filtration(G)
    T = tensor_filtration(phi, psi)
    D = dual_filtration(phi)
    for x in (phi, psi, T, D):
        assert validate_filtration(x).value
    assert T.length == phi.length + psi.length - 1
    assert D.length == phi.length
    lb = level_upper_bound(F)
    assert validate_filtration(lb.witness).value and lb.lower <= lb.upper


@given(seeds, seeds, st.integers(-2, 3))
def test_level_bound_suspension_and_sums(a, b, i):
    F, G = complex_from(a), complex_from(b)
    assert level_upper_bound(suspend(F, i)).upper == level_upper_bound(F).upper
    assert level_upper_bound(direct_sum(F, G)).upper == max(level_upper_bound(F).upper,
                                                           level_upper_bound(G).upper)


@given(st.lists(monomials(QXY, 1, 3), min_size=1, max_size=3))
def test_resolutions_are_exact_minimal_and_bounded(gens):
    res = minimal_resolution(ModulePresentation.cyclic(QXY, gens), 3)
    assert res.exact_in_interior()
    assert all(p.in_max_ideal() for D in res.complex.diffs.values() for p in D.entries.values())
    assert level_upper_bound(res.complex).upper <= QXY.dim() + 1


# -- theorems and formats ----------------------------------------------------------------------

@given(seeds)
def test_mit_left_inequality(a):
    G = complex_from(a)
    f = identity_map(G)
    r = check_mit(f, Ideal(QXY, []), (f, f))
    assert r.status != SENSATION
    if r.status != NA:
        assert r.conclusion["witness"]["left_inequality"] == HOLDS
    else:
        assert not r.hypotheses_pass()


@given(seeds, local_polys(QXY, max_degree=1))
def test_nilpotence_persists(a, c):
    F = complex_from(a)
    res = nilpotence_search(scalar_map(F, c), 2, confirm_next=True)
    if res.found:
        assert res.persists


@given(seeds)
def test_complex_text_round_trip(a):
    F = complex_from(a)
    assert parse_complex(format_complex(F, "F"), QXY) == F


def test_status_constants_are_distinct():
    assert len({HOLDS, NA, PASS, SENSATION}) == 4
