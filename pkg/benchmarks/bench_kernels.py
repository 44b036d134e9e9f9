#!/usr/bin/env python3
"""Time the numba and numpy kernel paths on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3]

Each row reports the best of ``--repeat`` runs after one warm-up call (so
JIT compilation is excluded) and checks that both paths return the same
result.
"""
import argparse
import time

import numpy as np

from pqbraces import kernels
from pqbraces.automorphisms import holomorph
from pqbraces.group_core import make_params
from pqbraces.regular_subgroups import enumerate_regular_bruteforce
from pqbraces.skew_brace import are_isomorphic, brace_from_regular, catalog
from pqbraces.ybe import solution_from_brace


def best_of(fn, repeat):
    result = fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def same(a, b):
    if isinstance(a, tuple) and a and isinstance(a[0], np.ndarray):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    if isinstance(a, list) and a and hasattr(a[0], "indices"):
        return [s.indices for s in a] == [s.indices for s in b]
    return a == b


def cases():
    P = make_params(29, 7)
    B = catalog(P)[-1]
    sol = solution_from_brace(B, check=False)
    yield f"brace law, pq={P.order}", lambda be: kernels.brace_law_witness(B.add, B.neg, B.circ, backend=be)
    yield f"bi-skew law, pq={P.order}", lambda be: kernels.brace_law_witness(B.circ, B.circ_inv, B.add, backend=be)
    yield f"braid relation, pq={P.order}", lambda be: kernels.braid_witness(sol.sigma, sol.tau, backend=be)
    yield f"associativity, pq={P.order}", lambda be: kernels.associativity_witness(B.circ, backend=be)

    Q = make_params(13, 3)
    H = holomorph(Q, "M")
    yield f"element orders, |Hol(M)|={H.size}", lambda be: kernels.element_orders(
        H.add, H.apply, H.compose, H.n_aut, H.id_aut, backend=be)
    yield f"closure of 3 elements in Hol(M), |Hol|={H.size}", lambda be: kernels.closure(
        [1, H.n_aut + 3, 7 * H.n_aut + 11], H.add, H.apply, H.compose, H.n_aut, H.id_aut, backend=be)
    yield "oracle Hol(M), p=13 q=3", lambda be: enumerate_regular_bruteforce(Q, "M", backend=be)

    R = make_params(7, 3)
    subs = enumerate_regular_bruteforce(R, "M")
    braces = [brace_from_regular(R, "M", S) for S in subs]
    yield "iso search, 12x12 brace pairs (7,3)", lambda be: [
        bool(are_isomorphic(a, b, backend=be)) for a in braces[:12] for b in braces[:12]]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "numba" not in kernels.BACKENDS:
        print("numba is not installed; only the numpy path is available")
    print(f"{'kernel':<40}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}  agree")
    for name, fn in cases():
        t_np, r_np = best_of(lambda: fn("numpy"), args.repeat)
        if "numba" in kernels.BACKENDS:
            t_nb, r_nb = best_of(lambda: fn("numba"), args.repeat)
            print(f"{name:<40}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x  {same(r_np, r_nb)}")
        else:
            print(f"{name:<40}{t_np:>12.4f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
