import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lienil import _kernels as K
from lienil.linalg import RowSpace, left_kernel
from lienil.scalars import GF, QQ


def _rand(rng, r, c, lo=-3, hi=4, rank=None):
    if rank is None:
        return rng.integers(lo, hi, (r, c)).astype(np.int64)
    return (rng.integers(lo, hi, (r, rank)) @ rng.integers(lo, hi, (rank, c))).astype(np.int64)


@pytest.mark.parametrize("p", [5, 7, 2**31 - 1])
def test_numpy_and_numba_kernels_agree(p):
    rng = np.random.default_rng(1)
    for _ in range(10):
        A = _rand(rng, 30, 25, 0, p if p < 100 else 1000, rank=None) % p
        R1, piv1, _ = K.echelon_mod_p_numpy(A, p)
        X = rng.integers(0, min(p, 1000), (8, 25)).astype(np.int64)
        res1 = K.reduce_mod_p_numpy(X, R1, piv1, p)
        R2, piv2, _ = K.echelon_mod_p(A, p)
        assert np.array_equal(R1, R2) and np.array_equal(piv1, piv2)
        assert np.array_equal(res1, K.reduce_mod_p(X, R2, piv2, p))


@pytest.mark.parametrize("p", [5, 7])
def test_echelon_against_sympy_mod_p(p):
    from sympy.polys.domains import GF as SGF
    from sympy.polys.matrices import DomainMatrix
    rng = np.random.default_rng(p)
    for _ in range(5):
        A = _rand(rng, 12, 10, rank=6) % p
        R, piv, sel = K.echelon_mod_p(A, p)
        dom = SGF(p)
        dm = DomainMatrix([[dom(int(v)) for v in row] for row in A], A.shape, dom)
        ref, ref_piv = dm.rref()
        assert list(piv) == list(ref_piv)
        ref_rows = [[int(v) % p for v in row] for row in ref.to_Matrix().tolist()[:len(ref_piv)]]
        assert R.tolist() == ref_rows
        assert len(sel) == len(piv)
        assert RowSpace.from_rows(GF(p), 10, A[sel]) == RowSpace.from_rows(GF(p), 10, A)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_rational_rowspace_matches_sympy(seed):
    rng = np.random.default_rng(seed)
    A = _rand(rng, 9, 7, rank=int(rng.integers(1, 6)))
    S = RowSpace.from_rows(QQ, 7, A)
    rref, piv = sympy.Matrix(A.tolist()).rref()
    assert S.dim == len(piv)
    assert list(S.pivots) == list(piv)
    ours = [[sympy.Rational(str(v)) for v in row] for row in S.rref_rows()]
    assert ours == rref[:len(piv), :].tolist()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([0, 5, 7]))
def test_membership_and_sum(seed, p):
    F = GF(p) if p else QQ
    rng = np.random.default_rng(seed)
    A = _rand(rng, 5, 8)
    B = _rand(rng, 4, 8)
    SA, SB = RowSpace.from_rows(F, 8, A), RowSpace.from_rows(F, 8, B)
    S = SA + SB
    assert S == RowSpace.from_rows(F, 8, np.vstack([A, B]))
    assert SA.leq(S) and SB.leq(S)
    comb = (rng.integers(-3, 4, 5) @ A)
    assert SA.contains(comb)
    assert S.contains_rows(np.vstack([A, B])).all()


def test_large_entries_fall_back_to_exact():
    big = 2**45
    A = np.array([[big, 1, 0], [0, big, 1]], dtype=np.int64)
    S = RowSpace.from_rows(QQ, 3, A)
    assert S.dim == 2
    assert S.contains([big, big + 1, 1])
    assert not S.contains([1, 0, 0])


@pytest.mark.parametrize("p", [0, 5])
def test_left_kernel(p):
    F = GF(p) if p else QQ
    rng = np.random.default_rng(3)
    M = _rand(rng, 6, 3)
    if p:
        block = M % p
    else:
        import flint
        block = flint.fmpz_mat(M.tolist())
    N = left_kernel(F, [block], 6)
    assert N.shape == (3, 6)
    Z = N @ M
    assert not (Z % p if p else Z).any()


def test_numpy_fallback_gives_identical_components():
    import json
    import os
    import subprocess
    import sys
    code = ("import json; from lienil import _kernels; from lienil.scalars import GF;"
            "from lienil.tgrade import commutator_tideal;"
            "T = commutator_tideal(3, 3, (2, 2, 1), GF(5));"
            "print(json.dumps([_kernels.BACKEND, T.matrix]))")
    outs = []
    for flag in ("", "1"):
        env = dict(os.environ, LIENIL_NO_NUMBA=flag)
        p = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
        outs.append(json.loads(p.stdout))
    assert outs[1][0] == "numpy"
    assert outs[0][1] == outs[1][1]
