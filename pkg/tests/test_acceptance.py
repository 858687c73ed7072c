"""The sixteen acceptance criteria, at the stated sizes and time limits.

Each test records one line (criterion number, PASS/FAIL, detail) that is
printed in the pytest terminal summary.
"""
import time
from itertools import product

import pytest

from conftest import ACCEPTANCE_LINES
from lienil import _kernels
from lienil.checks import run_check
from lienil.f23model import f23_reduce
from lienil.freealg import NcPoly
from lienil.pbw import pbw_decompose
from lienil.scalars import GF, QQ
from lienil.tgrade import commutator_tideal


@pytest.fixture(autouse=True, scope="module")
def _compiled_kernels():
    # one-time JIT compilation is not part of the timed work
    _kernels.warmup()


def record(k, title, ok, detail=""):
    ACCEPTANCE_LINES.append(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip())


def run_all(k, title, requests, limit_s=None):
    t0 = time.perf_counter()
    results = [run_check(name, **params) for name, params in requests]
    dt = time.perf_counter() - t0
    bad = [r for r in results if not r.passed]
    ok = not bad and (limit_s is None or dt < limit_s)
    detail = f"({dt:.1f}s)"
    if bad:
        r = bad[0]
        detail += f" {r.name} {r.status}: {r.counterexample} | {'; '.join(r.notes)}"
    elif limit_s is not None and dt >= limit_s:
        detail += f" over the {limit_s}s limit"
    record(k, title, ok, detail)
    assert not bad, detail
    if limit_s is not None:
        assert dt < limit_s, detail
    return results


def test_criterion_01_identities():
    run_all(1, "exact identities over Q and F_5", [("identities", {"char": [0, 5], "n": 8})], 5)


def test_criterion_02_rank4_counterexample():
    run_all(2, "[x,y][z,t] outside T^(3)", [("rank4_counterexample", {})], 1)


def test_criterion_03_product_of_commutator_ideals():
    reqs = [("theorem1", {"m": m, "n": n, "max_deg": 8, "char": [0, 5]})
            for m, n in ((2, 2), (2, 3), (3, 3), (2, 4))]
    run_all(3, "T^(m)T^(n) in T^(m+n-1), rank 3, deg <= 8", reqs)


def test_criterion_04_rank4_products_and_double_commutators():
    reqs = [("latyshev", {"m": 2, "n": 2, "max_deg": 6}),
            ("lemma1_2", {"m": 3, "n": 2, "max_deg": 6}),
            ("lemma1_3", {"n": [2, 3], "max_deg": 7}),
            ("eq1_3", {})]
    run_all(4, "rank-4 products, odd case, double commutators, [x,y,z,t][x,y]", reqs)


def test_criterion_05_weight_criterion():
    (r,) = run_all(5, "weight criterion, n = 3..5, rank 3, deg <= 7",
                   [("theorem2", {"n": [3, 4, 5], "max_deg": 7})])
    assert all(row["lhs_dim"] == row["rhs_dim"] for row in r.dims)


def test_criterion_06_nilpotency_index():
    run_all(6, "[x,y]^(n-1) in T^(n), [x,y]^(n-2) not", [("corollary2", {"n": [3, 4, 5, 6]})], 30)


def test_criterion_07_frobenius():
    run_all(7, "Frobenius relations, p = q = 5, n = 4..6",
            [("frobenius", {"char": 5, "q": 5, "n": [4, 5, 6]})])


def test_criterion_08_center_char0():
    run_all(8, "char-0 center, n = 4, 5, ranks 2, 3, deg <= 6",
            [("theorem3", {"n": [4, 5], "rank": [2, 3], "max_deg": 6})])


def test_criterion_09_center_char_p():
    run_all(9, "char-5 center with Z_5, n = 4, 5, ranks 2, 3, deg <= 7",
            [("theorem4", {"char": 5, "q": 5, "n": [4, 5], "rank": [2, 3], "max_deg": 7})])


def test_criterion_10_rank2_center():
    run_all(10, "rank-2 center commutes with z; [x,y]z remark",
            [("corollary3", {"n": 4, "char": [0, 5], "max_deg": 6})])


def test_criterion_11_commutative_tspace():
    run_all(11, "commutative T-space of x^5",
            [("sec4_1", {"char": 5, "s": 1, "max_deg": 15, "span_deg": 10})])


def test_criterion_12_special_polynomials():
    reqs = [("lemma4_1", {"char": [5, 7], "q_max": 12}),
            ("lemma4_2", {"char": [5, 7]}),
            ("theorem5", {"char": 5, "q": 5, "target": 25, "oracle_q": 6})]
    run_all(12, "consequences of [x,y], f(p,p) excluded, L in 5Z", reqs)


def test_criterion_13_derivation_modulo_proper_ideal():
    run_all(13, "commutator is a derivation modulo I_(n+1)",
            [("lemma5_1", {"n": [2, 3], "word_deg": 3})])


def test_criterion_14_ideal_chain():
    run_all(14, "solvability of i + j - 2 = s", [("theorem6_arith", {"p": [5, 7, 11], "s_max": 1000})], 1)
    ACCEPTANCE_LINES.pop()
    run_all(14, "i + j - 2 = s and truncated factor simplicity (n = 4, p = 5, cap 8)",
            [("theorem6_factor", {"n": 4, "char": 5, "max_deg": 8})])


def test_criterion_15_infinitely_many_tideals():
    run_all(15, "[x,y]^2, [x,y,x,y] independent; I_a != I_b",
            [("remark5", {"pairs": [(0, 1), (1, 2), (1, -1)], "max_deg": 6})])


def test_criterion_16_cross_oracles():
    t0 = time.perf_counter()
    bad = None
    for field in (QQ, GF(5)):
        by_deg = {}
        for k in range(1, 7):
            for w in product((0, 1), repeat=k):
                by_deg.setdefault((w.count(0), w.count(1)), []).append(w)
        for d, ws in by_deg.items():
            T = commutator_tideal(3, 2, d, field)
            # every difference of words of one bidegree, against one base word
            base = NcPoly.monomial(ws[0], 2, field)
            for w in ws:
                f = NcPoly.monomial(w, 2, field) - base
                if f23_reduce(f).is_zero() != T.contains(f):
                    bad = bad or f
    for rank in (2, 3):
        for k in range(1, 7):
            for w in product(range(rank), repeat=k):
                f = NcPoly.monomial(w, rank)
                if pbw_decompose(f).expand() != f:
                    bad = bad or f
    dt = time.perf_counter() - t0
    record(16, "f23 kernel vs T^(3); PBW round trip, deg <= 6", bad is None,
           f"({dt:.1f}s)" + ("" if bad is None else f" counterexample {bad}"))
    assert bad is None
