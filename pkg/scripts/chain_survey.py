"""Survey closure chains J_N^k over a directory of system files.

For every system prints the stabilization level, the obstruction level and
the wall time of the scan.  Useful for picking horizons before running the
CLI on larger instances.

    python3 scripts/chain_survey.py systems --k 1 --max-order 5
"""

import argparse
import time
from pathlib import Path

from artinapprox import stabilization_scan
from artinapprox.errors import ArtinError
from artinapprox.sysfile import parse_system


def natural_horizon(system, max_order):
    """Explicit tables stop at max-degree; the counterexample needs N - 1 alphas at order N."""
    if system.mode == "explicit":
        return min(max_order, system.max_degree)
    if system.mode == "counterexample":
        return min(max_order, len(system.alphas) + 1)
    return max_order


def survey(paths, k, max_order, workers):
    for path in paths:
        try:
            system = parse_system(path.read_text(encoding="utf-8"))
        except ArtinError:
            continue  # solution files and the like live next to the systems
        horizon = natural_horizon(system, max_order)
        start = time.perf_counter()
        report = stabilization_scan(system, k, horizon, workers=workers)
        elapsed = time.perf_counter() - start
        last = report.rows[-1].basis
        yield path.name, horizon, report.stabilized_at, report.obstruction_at, str(last), elapsed


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("directory", type=Path)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--max-order", type=int, default=5)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    paths = sorted(args.directory.glob("*.txt"))
    print(f"{'system':<26} {'horizon':>7} {'stable':>6} {'obstr':>6} {'time':>7}  J at horizon")
    for name, horizon, stable, obstr, last, elapsed in survey(paths, args.k, args.max_order, args.workers):
        print(f"{name:<26} {horizon:>7} {str(stable):>6} {str(obstr):>6} {elapsed:>6.2f}s  {last}")


if __name__ == "__main__":
    main()
