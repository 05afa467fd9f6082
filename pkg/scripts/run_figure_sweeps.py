#!/usr/bin/env python3
"""Reproduce the figure data sweeps as CSV files.

Emits three datasets into --outdir:

  rotated_domino.csv   lambda_hat vs theta_min over random rotation angles
  usd.csv              lambda_hat vs amplitude magnitudes for the
                       unambiguous-discrimination family
  random_unitary.csv   per-party ratios across the N_u = 2 .. D+2 transition
                       for two qubits and qubit-qutrit

Default sample counts are desk scale (200 / 20 seeds); --full-scale bumps
them to 10000 / 100.  Plotting is left to the reader; the CSVs carry every
column needed for any projection.
"""

import argparse
from pathlib import Path

from loccgate import SweepConfig, run_sweep, write_csv_atomic


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="data", help="output directory (created if missing)")
    parser.add_argument("--samples", type=int, default=200, help="samples per continuous family")
    parser.add_argument("--seeds", type=int, default=20, help="seeds per random-unitary N_u value")
    parser.add_argument("--seed", type=int, default=20240, help="master seed")
    parser.add_argument(
        "--full-scale",
        action="store_true",
        help="use the full experiment scale (10000 samples, 100 seeds)",
    )
    args = parser.parse_args()

    samples = 10000 if args.full_scale else args.samples
    seeds = 100 if args.full_scale else args.seeds
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    configs = {
        "rotated_domino.csv": SweepConfig(
            family="rotated_domino", samples=samples, seed=args.seed
        ),
        "usd.csv": SweepConfig(family="usd", samples=samples, seed=args.seed + 1),
    }
    for filename, cfg in configs.items():
        header, rows = run_sweep(cfg)
        write_csv_atomic(outdir / filename, header, rows)
        print(f"wrote {outdir / filename} ({len(rows)} rows)")

    # the transition study concatenates both dimension pairs into one file
    transition_rows = []
    transition_header = None
    for dims in ((2, 2), (2, 3)):
        total = dims[0] * dims[1]
        cfg = SweepConfig(
            family="random_unitary",
            samples=seeds,
            seed=args.seed + 2,
            dims=dims,
            nu_values=tuple(range(2, total + 3)),
        )
        header, rows = run_sweep(cfg)
        header = ["dims", *header]
        rows = [[f"{dims[0]}x{dims[1]}", *row] for row in rows]
        if transition_header is None:
            transition_header = header
        elif header != transition_header:
            # [2,3] and [2,2] have the same party count, columns must agree
            raise RuntimeError("transition sweep column mismatch")
        transition_rows.extend(rows)
    write_csv_atomic(outdir / "random_unitary.csv", transition_header, transition_rows)
    print(f"wrote {outdir / 'random_unitary.csv'} ({len(transition_rows)} rows)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
