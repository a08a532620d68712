"""Compare the compiled and pure-Python kernel backends.

Runs each kernel on the same seeded inputs under every available backend,
then times one end-to-end search per backend in a fresh interpreter.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time
from itertools import combinations

from turanlab.kernels import available_backends

SEARCH_SNIPPET = (
    "import time;"
    "from turanlab.counting import Cycle;"
    "from turanlab.search import SearchConfig, search_max;"
    "from turanlab.kernels import BACKEND;"
    "t=time.perf_counter();"
    "r=search_max(SearchConfig({n}, Cycle(4), (Cycle(6),)));"
    "print(BACKEND, r.max_copies, r.explored, time.perf_counter()-t)"
)


def random_rows(rng: random.Random, n: int, p: float) -> list[int]:
    rows = [0] * n
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return rows


def timed(fn, inputs, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for args in inputs:
            fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graphs", type=int, default=300)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--search-n", type=int, default=8)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    graphs = [(random_rows(rng, n, rng.uniform(0.2, 0.6)), n) for n in (rng.randint(6, 14) for _ in range(args.graphs))]
    sparse = [(random_rows(rng, 40, 0.08), 40) for _ in range(20)]
    workloads = {
        "canonical_labeling n<=14": ("canonical_labeling", graphs, lambda g: g),
        "canonical_labeling n=40": ("canonical_labeling", sparse, lambda g: g),
        "count_cycles k=6": ("count_cycles", graphs, lambda g: (*g, 6)),
        "has_cycle k=6": ("has_cycle", graphs, lambda g: (*g, 6)),
        "has_cycle_through k=8": ("has_cycle_through", graphs, lambda g: (g[0], g[1], g[1] - 1, 8)),
    }

    backends = available_backends()
    print(f"{'workload':28}" + "".join(f"{name:>12}" for name in backends) + "     speedup")
    for label, (fname, data, shape) in workloads.items():
        inputs = [shape(g) for g in data]
        times = {name: timed(getattr(mod, fname), inputs, args.repeat) for name, mod in backends.items()}
        line = f"{label:28}" + "".join(f"{t:11.4f}s" for t in times.values())
        if "cython" in times:
            line += f"  {times['python'] / times['cython']:9.1f}x"
        print(line)

    print(f"\nend-to-end search: max C4 over C6-free graphs, n={args.search_n}")
    for pure in (False, True):
        env = dict(os.environ)
        if pure:
            env["TURANLAB_PURE_PYTHON"] = "1"
        else:
            env.pop("TURANLAB_PURE_PYTHON", None)
        out = subprocess.run(
            [sys.executable, "-c", SEARCH_SNIPPET.format(n=args.search_n)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        ).stdout.split()
        print(f"  backend={out[0]:7} max={out[1]} explored={out[2]} time={float(out[3]):.2f}s")


if __name__ == "__main__":
    main()
