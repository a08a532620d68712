"""Recompute ex(n, C4, C6) over all graphs for small n and write it to data/general_c4_c6.json."""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from turanlab.constructions import C4C6, formula_value
from turanlab.counting import Cycle
from turanlab.search import SearchConfig, search_max


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=9)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "general_c4_c6.json"))
    args = ap.parse_args()
    rows = []
    for n in range(4, args.n_max + 1):
        res = search_max(SearchConfig(n, Cycle(4), (Cycle(6),)))
        rows.append(
            {
                "n": n,
                "max_c4": res.max_copies,
                "construction_value": formula_value(C4C6(n)),
                "extremal_graph6": res.graph6,
                "explored": res.explored,
            }
        )
        print(f"n={n} ex={res.max_copies} extremal={len(res.extremal)} explored={res.explored}")
    Path(args.out).write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
