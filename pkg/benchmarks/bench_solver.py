"""Compiled vs pure-Python kernels: CDCL solver and exhaustive immersion search.

Usage: python3 benchmarks/bench_solver.py [--repeat N] [--seed S]
"""

import argparse
import random
import time

from vpamin import dfa as D
from vpamin.gen import random_dfa
from vpamin.sat import _pybrute, _pysolver, encoding, minimize as M

try:
    from vpamin.sat import _cbrute, _csolver
except ImportError:
    raise SystemExit("compiled extensions are not built; run pip install -e . first")


def minimal_partial(rng: random.Random, size: int):
    while True:
        d = D.trim(D.minimize(random_dfa(rng, rng.randint(size, 6))))
        if d.num_states == size:
            return d


def pack(targets):
    out = []
    for t in targets:
        delta = [t.transitions[s, a] for s in range(t.num_states) for a in t.alphabet]
        final = [int(s in t.finals) for s in range(t.num_states)]
        out.append((delta, t.initial, final, next(iter(D.dead_states(t)), -1)))
    return sorted(out, key=lambda p: -len(p[2]))


def workloads(seed: int):
    rng = random.Random(seed)
    for sizes in [(2, 3), (2, 4), (3, 3), (1, 2, 4), (2, 2, 2), (4, 4, 4)]:
        canon = M.canonical([minimal_partial(rng, s) for s in sizes])
        yield sizes, canon


def timed(fn, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print(f"{'kernel':<8} {'targets':<10} {'k':>2} {'result':<7} {'python s':>9} "
          f"{'compiled s':>11} {'speedup':>8}")
    for sizes, canon in workloads(args.seed):
        for k in (5, 6):
            model = encoding.encode(k, canon)
            n, clauses = model.variable_count, model.clauses
            tp, rp = timed(lambda: _pysolver.solve(n, clauses), args.repeat)
            tc, rc = timed(lambda: _csolver.solve(n, clauses), args.repeat)
            assert rp == rc, "solver kernels diverge"
            res = "sat" if rp[0] is not None else "unsat"
            print(f"{'cdcl':<8} {str(sizes):<10} {k:>2} {res:<7} {tp:>9.4f} {tc:>11.4f} "
                  f"{tp / tc:>7.1f}x")
            packed = pack(canon)
            tp, rp = timed(lambda: _pybrute.search(k, 2, packed), args.repeat)
            tc, rc = timed(lambda: _cbrute.search(k, 2, packed), args.repeat)
            assert rp == rc, "search kernels diverge"
            res = "sat" if rp[0] is not None else "unsat"
            print(f"{'brute':<8} {str(sizes):<10} {k:>2} {res:<7} {tp:>9.4f} {tc:>11.4f} "
                  f"{tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
