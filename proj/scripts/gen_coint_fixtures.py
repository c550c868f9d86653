#!/usr/bin/env python3
"""Generate archived cointegration fixtures from statsmodels.

Writes tests/data/coint_pairs.csv (pair_id, idx, a, b) and
tests/data/coint_expected.csv (pair_id, n, tau, pvalue), where the expected
values come from statsmodels.tsa.stattools.coint(b, a, trend='c', maxlag=1,
autolag=None) -- the reference the C++ Engle-Granger test mirrors.

Run once; the CSVs are committed so the test suite never depends on Python.
"""

import csv
import pathlib

import numpy as np
from statsmodels.tsa.stattools import coint

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


def make_pairs():
    rng = np.random.default_rng(20260818)
    pairs = []
    # cointegrated pairs: b = alpha + beta*a + stationary noise
    specs = [(500, 2.0, 0.5, 5.0), (380, 0.7, 1.0, -3.0), (250, -1.4, 0.8, 0.0),
             (160, 3.2, 2.0, 12.0), (120, 1.0, 0.25, 1.5)]
    for n, beta, sd, alpha in specs:
        a = 100.0 + np.cumsum(rng.normal(0.0, 1.0, n))
        b = alpha + beta * a + rng.normal(0.0, sd, n)
        pairs.append((a, b))
    # independent random walks (not cointegrated)
    for n in (500, 400, 300, 200, 130):
        a = 50.0 + np.cumsum(rng.normal(0.0, 1.0, n))
        b = 80.0 + np.cumsum(rng.normal(0.0, 1.2, n))
        pairs.append((a, b))
    return pairs


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    pairs = make_pairs()
    with open(OUT / "coint_pairs.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["pair_id", "idx", "a", "b"])
        for pid, (a, b) in enumerate(pairs):
            for i, (x, y) in enumerate(zip(a, b)):
                w.writerow([pid, i, f"{x:.17g}", f"{y:.17g}"])
    with open(OUT / "coint_expected.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["pair_id", "n", "tau", "pvalue"])
        for pid, (a, b) in enumerate(pairs):
            tau, pval, _ = coint(b, a, trend="c", maxlag=1, autolag=None)
            w.writerow([pid, len(a), f"{tau:.17g}", f"{pval:.17g}"])
            print(f"pair {pid}: n={len(a)} tau={tau:.6f} p={pval:.6g}")


if __name__ == "__main__":
    main()
