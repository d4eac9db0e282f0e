#!/usr/bin/env python3
"""Generate the bundled USD/TRY daily snapshot (data/usdtry_2022.csv).

The live history is not redistributable offline, so the shipped file is a
seeded reconstruction: a log-level path pinned to approximate month-end
USD/TRY closes for 2022, with regime-dependent heavy-tailed daily noise,
two event days in June, and quote repetition on some weekend days.

Run once; the CSV and its SHA-256 are committed.
"""
import datetime as dt
import hashlib
import math
import sys

import numpy as np

SEED = 20221213
START = dt.date(2022, 5, 15)
END = dt.date(2022, 12, 13)

# Approximate closing levels used as the drift skeleton.
ANCHORS = [
    (dt.date(2022, 5, 15), 15.62),
    (dt.date(2022, 5, 31), 16.35),
    (dt.date(2022, 6, 23), 17.25),
    (dt.date(2022, 6, 30), 16.70),
    (dt.date(2022, 7, 31), 17.92),
    (dt.date(2022, 8, 31), 18.17),
    (dt.date(2022, 9, 30), 18.52),
    (dt.date(2022, 10, 31), 18.60),
    (dt.date(2022, 11, 30), 18.63),
    (dt.date(2022, 12, 13), 18.64),
]

# Event days (percent moves) layered on top of the skeleton.
EVENTS = {
    dt.date(2022, 6, 8): 2.0,
    dt.date(2022, 6, 24): -2.6,
}


def skeleton(day):
    for (d0, v0), (d1, v1) in zip(ANCHORS, ANCHORS[1:]):
        if d0 <= day <= d1:
            w = (day - d0).days / (d1 - d0).days
            return math.exp((1 - w) * math.log(v0) + w * math.log(v1))
    raise ValueError(day)


def daily_vol(day):
    if day < dt.date(2022, 7, 15):
        return 0.30
    if day < dt.date(2022, 9, 15):
        return 0.12
    return 0.06


def main(path):
    rng = np.random.default_rng(SEED)
    days = [START + dt.timedelta(days=i) for i in range((END - START).days + 1)]
    log_rate = math.log(ANCHORS[0][1])
    rows = [(days[0], round(math.exp(log_rate), 4))]
    for prev, day in zip(days, days[1:]):
        drift = math.log(skeleton(day)) - math.log(skeleton(prev))
        # pull back toward the skeleton so the path tracks the anchors
        gap = math.log(skeleton(prev)) - log_rate
        noise = daily_vol(day) / 100.0 * rng.standard_t(4) / math.sqrt(2.0)
        step = drift + 0.15 * gap + noise
        if day in EVENTS:
            step = EVENTS[day] / 100.0
        weekend = day.weekday() >= 5
        if weekend and rng.random() < 0.55:
            step = 0.0
        log_rate += step
        rows.append((day, round(math.exp(log_rate), 4)))
    with open(path, "w", newline="\n") as f:
        f.write("date,rate\n")
        for day, rate in rows:
            f.write(f"{day.isoformat()},{rate:.4f}\n")
    digest = hashlib.sha256(open(path, "rb").read()).hexdigest()
    print(f"{len(rows)} rows -> {path}\nsha256 {digest}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/usdtry_2022.csv")
