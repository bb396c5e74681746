"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from exactrec import graph as G
from exactrec import observe as O
from exactrec._backend import available_backends
from exactrec.solve import sdp_rank


def adjmask(g):
    m = np.zeros(g.n, dtype=np.uint64)
    for i, j in g.edges:
        m[i] |= np.uint64(1 << j)
        m[j] |= np.uint64(1 << i)
    return m


def cases():
    rng = np.random.default_rng(0)

    g20 = G.random_regular(20, 4, 1)
    yield "cheeger_search n=20", lambda k: k.cheeger_search(g20.n, adjmask(g20), g20.degrees())

    g18 = G.random_regular(18, 3, 2)
    obs18 = O.generate_observations(g18, np.ones(18), O.NoiseParams(0.2, 0.2), 3)
    csr18 = obs18.csr()
    yield "brute_force_search n=18", lambda k: k.brute_force_search(18, *csr18)

    for n in (60, 120):
        a = rng.standard_normal((n, n))
        m = a + a.T
        tol = 1e-11 * np.linalg.norm(m)
        yield f"jacobi_eigen n={n}", lambda k, m=m, tol=tol: k.jacobi_eigen(m.copy(), tol, 100)

    g = G.smooth(G.cycle(400), 4.0, 4)
    obs = O.generate_observations(g, np.ones(400), O.NoiseParams(0.2, 0.2), 5)
    csr = obs.csr()
    z0 = rng.standard_normal((400, sdp_rank(400)))
    z0 /= np.linalg.norm(z0, axis=1, keepdims=True)

    def mixing(k):
        Z = z0.copy()
        for _ in range(20):
            k.mixing_sweep(*csr, Z)

    yield "mixing_sweep n=400 x20", mixing


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'kernel':<26}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases():
        times = {}
        for name in names:
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                fn(backends[name])
                best = min(best, time.perf_counter() - t0)
            times[name] = best
        row = f"{label:<26}" + "".join(f"{times[n] * 1e3:>10.1f}ms" for n in names)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
