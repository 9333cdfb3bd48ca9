"""End-to-end acceptance criteria, each run against its time limit.

A summary line per criterion is printed at the end of the pytest run (see conftest).
"""

import io
import json
import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

import oracles
from perfcx.cli import run, sweep_reports
from perfcx.complex import (dual, free_module, identity_map, scalar_map, span, suspend, tensor,
                            tensor_power, homotopy_residual)
from perfcx.homology import MAXIMAL, is_fiberwise_zero, is_ghost, is_i_torsion, null_homotopy
from perfcx.koszul import (DGModuleStructure, koszul, self_action, self_duality, suspend_action,
                           sum_action, tensor_decomposition, verify_dg_module)
from perfcx.level import dual_filtration, level_upper_bound, span_filtration, tensor_filtration, validate_filtration
from perfcx.random_families import ComplexFamily, ghost_lemma_instance, make_rng, random_complex
from perfcx.resolutions import PartialResolution, lift_through_resolution
from perfcx.ring import (Ideal, Ring, RingMatrix, buchberger, ideal_membership, in_column_span,
                         normal_form, radical_membership, syzygies)
from perfcx.theorems import (DEFAULT_SEED, FAIL, NA, PASS, check_canonical_element,
                             check_ghost_lemma, check_lift_nonvanishing, check_rank_bound,
                             check_tensor_nilpotence, check_wedge_injectivity, nilpotence_search,
                             sharpness_instance)

SEED = int(os.environ.get("PERFCX_SEED") or DEFAULT_SEED)

pytestmark = pytest.mark.acceptance


@contextmanager
def within(number, limit):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    print(f"criterion {number}: {elapsed:.2f} s (limit {limit} s)")
    assert elapsed < limit, f"criterion {number} took {elapsed:.2f} s, limit {limit} s"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue()


@pytest.mark.acceptance(1, "monomial suite over Q, GF(2), GF(5), d <= 3, n <= 3", 27)
def test_criterion_01_monomial_suite():
    cases = 0
    with within(1, 27):
        for field in ("Q", "GF(2)", "GF(5)"):
            for d in (1, 2, 3):
                names = ",".join(f"y{i + 1}" for i in range(d))
                for n in (1, 2, 3):
                    t0 = time.perf_counter()
                    code, out = cli("check-monomial", "--ring", f"{field}[{names}]", "--sop", names,
                                    "--n", str(n), "--json", "--seed", str(SEED))
                    assert time.perf_counter() - t0 < 1.0
                    report = json.loads(out)
                    assert code == 0 and report["conclusion"]["witness"]["verdict"] == "NOT MEMBER"
                    cases += 1
    assert cases >= 27


@pytest.mark.acceptance(2, "Koszul span, tensor rank identity and self-duality", 5)
def test_criterion_02_koszul_identities():
    expected = {2: [1, 4, 6, 4, 1], 3: [1, 6, 15, 20, 15, 6, 1]}
    with within(2, 5):
        for n in (1, 2, 3):
            R = Ring([f"x{i + 1}" for i in range(n)])
            K = koszul(R.gens)
            assert span(K) == n + 1
            td = tensor_decomposition(K)
            assert td.rank_identity
            KK = tensor(K, K)
            if n in expected:
                assert [KK.rank(j) for j in range(2 * n + 1)] == expected[n]
            assert td.iso.failing_degree() is None and td.inverse @ td.iso == identity_map(td.source)
            sd = self_duality(K)
            assert sd.iso.source == dual(K) and sd.iso.target == suspend(K, -n)
            assert sd.iso.failing_degree() is None and sd.inverse.failing_degree() is None
            assert sd.inverse @ sd.iso == identity_map(dual(K))
            assert sd.iso @ sd.inverse == identity_map(suspend(K, -n))


@pytest.mark.acceptance(3, "null-homotopy solver and nilpotence search", 5)
def test_criterion_03_null_homotopy_solver():
    with within(3, 5):
        Rx = Ring("x")
        K = koszul(Rx.gens)
        f = scalar_map(K, Rx.gens[0])
        h = null_homotopy(f)
        assert h is not None and homotopy_residual(f, h).is_zero()
        Rxy = Ring("x,y")
        assert null_homotopy(identity_map(koszul(Rxy.gens))) is None
        Rt = Ring("t", quotient=["t^2"])
        g = scalar_map(free_module(Rt), Rt.gens[0])
        h2 = null_homotopy(tensor_power(g, 2))
        assert h2 is not None and h2.is_zero()
        assert nilpotence_search(g, 3).n == 2


@pytest.mark.acceptance(4, "sharpness control for d = 1, 2, 3", 30)
def test_criterion_04_sharpness_control():
    with within(4, 30):
        for d in (1, 2, 3):
            si = sharpness_instance(d)
            R = si.koszul.ring
            assert is_i_torsion(si.koszul, R.max_ideal()).value
            assert level_upper_bound(si.koszul).upper == d + 1
            assert not is_fiberwise_zero(si.map, [MAXIMAL]).value
            assert not nilpotence_search(si.map, 3).found
            r = check_tensor_nilpotence(si.map, R.max_ideal(), (identity_map(si.koszul), si.map), nmax=3,
                                        seed=SEED)
            level_hyp = next(h for h in r.hypotheses if h["name"].startswith("level"))
            assert level_hyp["status"] == FAIL
            assert r.status == NA


@pytest.mark.acceptance(5, "tensor and dual filtrations on 50 random complexes", 60)
def test_criterion_05_filtration_suite():
    ring = Ring("x,y")
    cfg = ComplexFamily(max_span=3, max_rank=2, max_degree=2)
    with within(5, 60):
        rng = make_rng(SEED)
        cs = [random_complex(ring, rng, cfg) for _ in range(50)]
        for F in cs:
            assert span(F) <= 3 and max(F.ranks.values()) <= 2
            assert all(p.degree() <= 2 for D in F.diffs.values() for p in D.entries.values())
        for i, F in enumerate(cs):
            G = cs[(i + 1) % len(cs)]
            phi, psi = span_filtration(F), span_filtration(G)
            T = tensor_filtration(phi, psi)
            D = dual_filtration(phi)
            assert validate_filtration(T).value and T.length == phi.length + psi.length - 1
            assert validate_filtration(D).value and D.length == phi.length


@pytest.mark.acceptance(6, "canonical element, lift nonvanishing and wedge injectivity", 60)
def test_criterion_06_canonical_element():
    R = Ring("x,y")
    x, y = R.gens
    with within(6, 60):
        K = koszul([x, y])
        assert check_canonical_element([x, y], identity_map(K), seed=SEED).status == PASS
        G = koszul([x**2, y])
        f = lift_through_resolution(RingMatrix.identity(R, 1), PartialResolution.from_complex(K), G)
        assert check_canonical_element([x**2, y], f, seed=SEED).status == PASS
        for I in ([x, y], [x, y**2]):
            for xs in (I, [x**2, y**2]):
                r = check_lift_nonvanishing(I, xs, seed=SEED)
                assert r.hypotheses_pass() and r.status == PASS
        for I in ([x, y], [x**2, y], [x**2, y**2]):
            assert check_wedge_injectivity(I, seed=SEED).status == PASS


@pytest.mark.acceptance(7, "rank bound and DG-module negative control", 10)
def test_criterion_07_rank_bound():
    R = Ring("x,y")
    with within(7, 10):
        K = koszul(R.gens)
        S = self_action(K)
        r = check_rank_bound(S, seed=SEED)
        assert r.status == PASS
        table = r.conclusion["witness"]["table"]
        assert all(table[str(n)]["rank"] == table[str(n)]["binomial"] for n in range(3))
        r = check_rank_bound(sum_action(S, suspend_action(S, 1)), seed=SEED)
        assert r.status == PASS
        table = r.conclusion["witness"]["table"]
        assert any(table[str(n)]["rank"] > table[str(n)]["binomial"] for n in range(3))
        broken = dict(S.action)
        broken[(0, 0)] = RingMatrix.from_rows(R, [[1], [1]])
        res = verify_dg_module(DGModuleStructure(K, K, broken))
        assert not res.value and res.witness.get("axiom")


@pytest.mark.acceptance(8, "ghost lemma on 20 Koszul-based instances", 60)
def test_criterion_08_ghost_lemma():
    R = Ring("x,y")
    with within(8, 60):
        rng = make_rng(SEED)
        for i in range(20):
            c = 1 + i % 2
            F, ghosts = ghost_lemma_instance(R, rng, c)
            assert all(is_ghost(g).value for g in ghosts)
            assert level_upper_bound(F).upper <= c
            r = check_ghost_lemma(F, ghosts, seed=SEED)
            assert r.hypotheses_pass() and r.status == PASS


def _random_poly(rng, ring, max_degree, terms):
    p = ring.zero
    for _ in range(rng.randint(1, terms)):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(ring.nvars)] += 1
        p = p + ring.monomial(tuple(e), rng.choice([-3, -2, -1, 1, 2, 3]))
    return p


@pytest.mark.acceptance(9, "oracle equivalence, 100 instances each", 120)
def test_criterion_09_oracle_equivalence():
    rng = random.Random(SEED)
    R3 = Ring("x,y,z")
    R2 = Ring("x,y")
    with within(9, 120):
        for _ in range(100):
            gens = [p for p in (_random_poly(rng, R3, 3, 3) for _ in range(rng.randint(1, 3))) if p.terms]
            if not gens:
                gens = [R3.gens[0]]
            q = _random_poly(rng, R3, 4, 4)
            p = q if rng.random() < 0.5 else q * gens[0] + gens[-1]
            member = ideal_membership(p, Ideal(R3, gens))
            assert member == normal_form(p, buchberger(gens, R3)).is_zero()
            assert member == oracles.member(R3, p, gens)
        for _ in range(100):
            row = [p for p in (_random_poly(rng, R2, 2, 2) for _ in range(rng.randint(2, 3))) if p.terms]
            if len(row) < 2:
                row = list(R2.gens)
            A = RingMatrix.from_rows(R2, [row])
            S = syzygies(A)
            assert (A @ S).is_zero()
            Kb = oracles.bounded_kernel(A, 3)
            if Kb.cols:
                assert in_column_span(S, Kb)
        for _ in range(100):
            gens = [R3.monomial(tuple(rng.randint(0, 2) for _ in range(3))) for _ in range(rng.randint(1, 3))]
            gens = [g for g in gens if not g.is_constant()] or [R3.gens[1] ** 2]
            p = R3.monomial(tuple(rng.randint(0, 1) for _ in range(3)))
            assert radical_membership(p, Ideal(R3, gens)) == oracles.radical_member_by_powers(R3, p, gens)


DETERMINISM_RUNS = [
    ["sweep", "--family", "monomial", "--count", "0"],
    ["sweep", "--family", "mit", "--count", "10"],
    ["sweep", "--family", "minors", "--count", "10"],
    ["sweep", "--family", "filtration", "--count", "10"],
    ["check-lift", "--ring", "Q[x,y]", "--ideal", "x,y", "--sop", "x^2,y^2"],
    ["check-wedge", "--ring", "Q[x,y]", "--ideal", "x^2,y"],
    ["check-rank", "--ring", "Q[x,y]", "--sop", "x,y", "--shifts", "0,1"],
    ["level", "--ring", "Q[x,y,z]", "--koszul", "x,y,z"],
]


def _suite_output(hash_seed):
    env = dict(os.environ, PYTHONHASHSEED=str(hash_seed))
    chunks = []
    for argv in DETERMINISM_RUNS:
        proc = subprocess.run([sys.executable, "-m", "perfcx", *argv, "--json", "--no-timing", "--seed", str(SEED)],
                              capture_output=True, env=env)
        assert proc.returncode == 0, proc.stderr
        chunks.append(proc.stdout)
    return b"".join(chunks)


@pytest.mark.acceptance(10, "byte-identical JSON reports for a fixed seed", 120)
def test_criterion_10_determinism():
    with within(10, 120):
        first = _suite_output(1)
        second = _suite_output(2)
        assert first and first == second
        in_process = "".join(r.to_json() + "\n" for r in _zero_time(sweep_reports("mit", 10, SEED)))
        assert in_process.encode() in first


def _zero_time(reports):
    for r in reports:
        r.wallTimeMs = 0
    return reports
