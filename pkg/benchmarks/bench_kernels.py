"""Time the numba and numpy routes of the batch kernels against each other.

    python benchmarks/bench_kernels.py --radius 8

The numba timings exclude compilation (one warm-up call on a tiny input).
"""

import argparse
import time

import numpy as np

from artin_shortlex import kernels
from artin_shortlex.automata import all_words_array, build_shortlex_acceptor
from artin_shortlex.oracle import relator_halves
from artin_shortlex.words import Presentation


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--radius", type=int, default=8, help="ball radius for the component kernel")
    ap.add_argument("--depth", type=int, default=7, help="word length for the DFA batch kernel")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if not kernels.USE_NUMBA:
        print("numba route unavailable (not installed or disabled by environment); "
              "timing the numpy route only")
    pres = Presentation.triangle(3, 3, 3)
    k = 2 * pres.n
    halves = relator_halves(pres, True)
    dfa = build_shortlex_acceptor(pres, verify_depth=4)
    words, lens, _ = all_words_array(k, args.depth)

    routes = [False] + ([True] if kernels.USE_NUMBA else [])
    if kernels.USE_NUMBA:
        kernels.ball_components(k, 2, halves, jit=True)
        kernels.dfa_accepts(dfa.trans, dfa.accepting, dfa.start, words[:4], lens[:4], jit=True)
        kernels.dfa_count_by_length(dfa.trans, dfa.accepting, dfa.start, 2, jit=True)

    rows = []
    results = {}
    for jit in routes:
        name = "numba" if jit else "numpy"
        t_ball, labels = best_of(lambda: kernels.ball_components(k, args.radius, halves, jit=jit),
                                 args.repeat)
        t_dfa, acc = best_of(lambda: kernels.dfa_accepts(dfa.trans, dfa.accepting, dfa.start,
                                                         words, lens, jit=jit), args.repeat)
        t_cnt, cnt = best_of(lambda: kernels.dfa_count_by_length(dfa.trans, dfa.accepting,
                                                                 dfa.start, 20, jit=jit),
                             args.repeat)
        results[name] = (labels, acc, cnt)
        rows.append((name, t_ball, t_dfa, t_cnt))

    n_ball = int(kernels.length_offsets(k, args.radius)[-1])
    print(f"(3,3,3): ball radius {args.radius} = {n_ball} words; "
          f"{len(lens)} words up to length {args.depth}; acceptor {dfa.n_states} states")
    print(f"{'route':<7}{'components':>13}{'dfa batch':>12}{'growth(20)':>12}")
    for name, a, b, c in rows:
        print(f"{name:<7}{a:>12.3f}s{b:>11.3f}s{c:>11.4f}s")
    if len(rows) == 2:
        print(f"{'speedup':<7}{rows[0][1] / rows[1][1]:>12.1f}x{rows[0][2] / rows[1][2]:>11.1f}x"
              f"{rows[0][3] / rows[1][3]:>11.1f}x")
        a, b = results["numpy"], results["numba"]
        same = all(np.array_equal(x, y) for x, y in zip(a, b))
        print("routes agree:", same)


if __name__ == "__main__":
    main()
