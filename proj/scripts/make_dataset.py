#!/usr/bin/env python3
"""Generate the bundled 7-symbol daily OHLCV fixture.

Deterministic synthetic price paths: each symbol follows a geometric random
walk driven by a shared market factor, one of three sector factors, and an
idiosyncratic term, so similarity functions have real structure to find.
Writes tests/data/sp7_daily.csv (1250 business days from 2012-01-03).
"""

import csv
import datetime
import math
import os
import random

SYMBOLS = {
    # symbol: (sector, base price, market beta, sector beta, noise sd)
    "DIS":   ("media",      40.0, 0.9, 1.0, 0.010),
    "GOOGL": ("media",     320.0, 1.1, 0.9, 0.013),
    "KO":    ("consumer",   35.0, 0.6, 1.0, 0.007),
    "JNJ":   ("consumer",   65.0, 0.5, 0.9, 0.006),
    "GE":    ("industrial", 18.0, 1.2, 1.0, 0.012),
    "MMM":   ("industrial", 82.0, 0.8, 0.9, 0.008),
    "JPM":   ("industrial", 34.0, 1.3, 0.5, 0.014),
}
DAYS = 1250
START = datetime.date(2012, 1, 3)


def business_days(start, count):
    days, d = [], start
    while len(days) < count:
        if d.weekday() < 5:
            days.append(d)
        d += datetime.timedelta(days=1)
    return days


def main():
    rng = random.Random(20120103)
    dates = business_days(START, DAYS)
    sectors = sorted({sec for sec, *_ in SYMBOLS.values()})

    market = [rng.gauss(0.0003, 0.008) for _ in range(DAYS)]
    sector_moves = {s: [rng.gauss(0.0001, 0.005) for _ in range(DAYS)] for s in sectors}

    rows = []
    for symbol in sorted(SYMBOLS):
        sector, base, beta_m, beta_s, sd = SYMBOLS[symbol]
        close = base
        prev_close = base
        for t, date in enumerate(dates):
            ret = beta_m * market[t] + beta_s * sector_moves[sector][t] + rng.gauss(0.0, sd)
            close = prev_close * math.exp(ret)
            open_ = prev_close * math.exp(rng.gauss(0.0, sd / 3.0))
            stretch = abs(rng.gauss(0.0, sd / 2.0))
            high = max(open_, close) * (1.0 + stretch)
            low = min(open_, close) * (1.0 - stretch)
            volume = round(1e6 * math.exp(rng.gauss(0.0, 0.3)))
            rows.append(
                (date.isoformat(), symbol, round(open_, 4), round(high, 4),
                 round(low, 4), round(close, 4), volume)
            )
            prev_close = close

    out_path = os.path.join(os.path.dirname(__file__), "..", "tests", "data", "sp7_daily.csv")
    with open(out_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["date", "symbol", "open", "high", "low", "close", "volume"])
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows for {len(SYMBOLS)} symbols to {os.path.normpath(out_path)}")


if __name__ == "__main__":
    main()
