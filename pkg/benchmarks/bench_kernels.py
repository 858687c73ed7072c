"""Compare the numba and numpy kernels on random matrices mod p.

    python benchmarks/bench_kernels.py [--sizes 100,300,600] [--p 5] [--repeat 3]

Also times a T-ideal component end to end under whichever backend the
environment selects (set LIENIL_NO_NUMBA=1 to force numpy).
"""
import argparse
import time

import numpy as np

from lienil import _kernels as K
from lienil.scalars import FieldSpec
from lienil.tgrade import clear_caches, commutator_tideal


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="100,300,600")
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    p = args.p
    rng = np.random.default_rng(0)
    print(f"backend in use: {K.BACKEND}")
    print(f"{'n':>6} {'kernel':>10} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for n in map(int, args.sizes.split(",")):
        # low rank so the reduction has real work
        A = (rng.integers(0, p, (n, n // 2)) @ rng.integers(0, p, (n // 2, n))) % p
        A = A.astype(np.int64)
        t_np = best_of(lambda: K.echelon_mod_p_numpy(A, p), args.repeat)
        R, piv, _ = K.echelon_mod_p_numpy(A, p)
        X = rng.integers(0, p, (n, n)).astype(np.int64)
        r_np = best_of(lambda: K.reduce_mod_p_numpy(X, R, piv, p), args.repeat)
        if K.HAVE_NUMBA:
            K.echelon_mod_p_numba(A, p)      # compile
            K.reduce_mod_p_numba(X, R, piv, p)
            t_nb = best_of(lambda: K.echelon_mod_p_numba(A, p), args.repeat)
            r_nb = best_of(lambda: K.reduce_mod_p_numba(X, R, piv, p), args.repeat)
            assert np.array_equal(K.echelon_mod_p_numba(A, p)[0], R)
        else:
            t_nb = r_nb = float("nan")
        for name, a, b in (("echelon", t_np, t_nb), ("reduce", r_np, r_nb)):
            print(f"{n:>6} {name:>10} {a * 1e3:>10.2f} {b * 1e3:>10.2f} {a / b:>8.1f}")

    F = FieldSpec(p)
    clear_caches()
    t0 = time.perf_counter()
    T = commutator_tideal(3, 3, (3, 3, 2), F)
    print(f"T^(3) at (3,3,2) over F_{p}: dim {T.dim}, {time.perf_counter() - t0:.2f} s ({K.BACKEND})")


if __name__ == "__main__":
    main()
