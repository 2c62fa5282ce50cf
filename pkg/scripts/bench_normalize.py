"""Time normalization and equality on random cells of growing size.

    python3 scripts/bench_normalize.py --sizes 25 50 100 200 --samples 20
"""

import argparse
import random
import statistics
import time

from cornering import fixtures
from cornering.cells import generator_count
from cornering.generate import CellGenConfig, random_cell
from cornering.rewrite import cells_equal, rewrite_fixpoint, to_row_normal_form


def timed(fn, *args):
    start = time.perf_counter()
    fn(*args)
    return time.perf_counter() - start


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[25, 50, 100, 200])
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    theory = fixtures.baking()
    print(f"{'size':>5} {'gens':>5} {'rnf ms':>9} {'rnf max':>9} {'literal ms':>11} {'equal ms':>9}")
    for size in args.sizes:
        rng = random.Random(args.seed + size)
        cfg = CellGenConfig(rows=size, max_width=8, max_generators=size, p_atom=0.7)
        rnf, lit, eq, gens = [], [], [], []
        for _ in range(args.samples):
            c = random_cell(rng, theory, cfg)
            gens.append(generator_count(c))
            rnf.append(timed(to_row_normal_form, c))
            lit.append(timed(rewrite_fixpoint, c))
            eq.append(timed(cells_equal, c, c, theory))
        print(f"{size:>5} {max(gens):>5} {1e3 * statistics.mean(rnf):>9.2f} {1e3 * max(rnf):>9.2f} "
              f"{1e3 * statistics.mean(lit):>11.2f} {1e3 * statistics.mean(eq):>9.2f}")


if __name__ == "__main__":
    main()
