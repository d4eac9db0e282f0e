#!/usr/bin/env python3
"""Independent reference values for the bundled snapshot.

Uses numpy/scipy/statsmodels only (no code shared with the C++ library).
Prints a JSON document; the acceptance suite pins these numbers.

Conventions mirrored from the library's documented choices:
  * train segment = first 179 returns, test = remaining 33
  * skewness/kurtosis from population moments, std with n-1
  * ADF lag by AIC over 0..floor(12 (T/100)^0.25); PP/KPSS Bartlett bandwidth floor(4 (T/100)^(2/9))
  * runs test: x > threshold vs x <= threshold
  * smoothing SSR over all periods, RMSE = sqrt(SSR / n)
"""
import json
import math
import sys

import numpy as np
import pandas as pd
from scipy import stats
from statsmodels.tsa.stattools import adfuller, kpss
from statsmodels.tsa.adfvalues import mackinnoncrit

TRAIN = 179


def load(path):
    df = pd.read_csv(path)
    rate = df["rate"].to_numpy(float)
    return (rate[1:] - rate[:-1]) / rate[:-1] * 100.0


def describe(x):
    n = len(x)
    m = x.mean()
    d = x - m
    m2, m3, m4 = (d**2).mean(), (d**3).mean(), (d**4).mean()
    skew, kurt = m3 / m2**1.5, m4 / m2**2
    jb = n / 6 * (skew**2 + (kurt - 3) ** 2 / 4)
    vals, counts = np.unique(np.round(x, 3), return_counts=True)
    top = counts.max()
    cands = vals[counts == top]
    mode = sorted(cands, key=lambda v: (abs(v), v))[0]
    return dict(mean=m, median=float(np.median(x)), mode=float(mode), max=x.max(), min=x.min(),
                std_dev=x.std(ddof=1), skewness=skew, kurtosis=kurt, jb_stat=jb, jb_prob=stats.chi2.sf(jb, 2))


def longest(flags):
    best = cur = 0
    for f in flags:
        cur = cur + 1 if f else 0
        best = max(best, cur)
    return best


def frequency(x):
    inc = longest(np.r_[True, x[1:] > x[:-1]]) if len(x) else 0
    # monotone runs count observations, so a run of k rises spans k+1 values
    up = 1 + max((longest(x[1:] > x[:-1]),)) if len(x) > 1 else 1
    down = 1 + max((longest(x[1:] < x[:-1]),)) if len(x) > 1 else 1
    return dict(zero=int((x == 0).sum()), negative=int((x < 0).sum()), positive=int((x > 0).sum()),
                max_neg_run=longest(x < 0), max_pos_run=longest(x > 0), max_increasing=up, max_decreasing=down)


def runs(x, thr):
    above = x > thr
    r = 1 + int((above[1:] != above[:-1]).sum())
    n1, n2 = int(above.sum()), int((~above).sum())
    n = n1 + n2
    e = 2 * n1 * n2 / n + 1
    sd = math.sqrt(2 * n1 * n2 * (2 * n1 * n2 - n) / (n * n * (n - 1)))
    z = (r - e) / sd
    return dict(R=r, expected=e, std_dev=sd, z=z, p=2 * stats.norm.sf(abs(z)))


def nw_bw(n):
    return int(math.floor(4 * (n / 100) ** (2 / 9)))


def bartlett(u, bw):
    n = len(u)
    s = u @ u / n
    for j in range(1, bw + 1):
        s += 2 * (1 - j / (bw + 1)) * (u[j:] @ u[:-j]) / n
    return s


def adf(x, regression):
    schwert = int(math.floor(12 * (len(x) / 100) ** 0.25))
    res = adfuller(x, maxlag=schwert, regression=regression, autolag="AIC")
    return dict(stat=res[0], p=res[1], lags=res[2], nobs=res[3], crit5=res[4]["5%"])


def pp(x, regression):
    y = x[1:]
    ylag = x[:-1]
    dy = y - ylag
    n = len(dy)
    cols = [ylag]
    if regression in ("c", "ct"):
        cols.append(np.ones(n))
    if regression == "ct":
        cols.append(np.arange(1, n + 1, dtype=float))
    X = np.column_stack(cols)
    beta, *_ = np.linalg.lstsq(X, dy, rcond=None)
    e = dy - X @ beta
    k = X.shape[1]
    s2 = e @ e / (n - k)
    cov = s2 * np.linalg.inv(X.T @ X)
    se = math.sqrt(cov[0, 0])
    t = beta[0] / se
    g0 = e @ e / n
    lam2 = bartlett(e, nw_bw(n))
    lam = math.sqrt(lam2)
    z = math.sqrt(g0 / lam2) * t - 0.5 * ((lam2 - g0) / lam) * (n * se / math.sqrt(s2))
    return dict(stat=z, crit5=float(mackinnoncrit(1, regression, n)[1]))


def kpss_stat(x, regression):
    stat, p, lags, crit = kpss(x, regression=regression, nlags=nw_bw(len(x)))
    return dict(stat=stat, lags=lags, crit5=crit["5%"])


def supf_0v1(x, trim=0.15):
    n = len(x)
    h = int(math.floor(trim * n))
    bw = nw_bw(n)
    best, at = -1.0, None
    for k in range(h, n - h + 1):
        d1 = np.r_[np.ones(k), np.zeros(n - k)]
        X = np.column_stack([d1, 1 - d1])
        beta = np.array([x[:k].mean(), x[k:].mean()])
        e = x - X @ beta
        Z = X * e[:, None]
        omega = Z.T @ Z
        for j in range(1, bw + 1):
            g = Z[j:].T @ Z[:-j]
            omega += (1 - j / (bw + 1)) * (g + g.T)
        inv = np.linalg.inv(X.T @ X)
        V = inv @ omega @ inv
        r = np.array([1.0, -1.0])
        w = (r @ beta) ** 2 / (r @ V @ r)
        if w > best:
            best, at = w, k
    return dict(f=best, at=at)


def brown(y, alpha):
    lvl = y[0]
    ssr = 0.0
    for t in range(1, len(y)):
        ssr += (y[t] - lvl) ** 2
        lvl = alpha * y[t] + (1 - alpha) * lvl
    return ssr, lvl


def holt(y, alpha, beta):
    lvl0 = y[0]
    lvl = alpha * y[1] + (1 - alpha) * lvl0
    trend = y[1] - y[0]
    ssr = (y[1] - y[0]) ** 2
    for t in range(2, len(y)):
        pred = lvl + trend
        ssr += (y[t] - pred) ** 2
        new = alpha * y[t] + (1 - alpha) * pred
        trend = beta * (new - lvl) + (1 - beta) * trend
        lvl = new
    return ssr, lvl, trend


def fit_brown(y):
    grid = np.round(np.arange(0, 1001) / 1000, 3)
    ssrs = [brown(y, a)[0] for a in grid]
    i = int(np.argmin(ssrs))
    ssr, lvl = brown(y, grid[i])
    return dict(alpha=float(grid[i]), ssr=ssr, rmse=math.sqrt(ssr / len(y)), level=lvl)


def fit_holt(y):
    best = (math.inf, 0, 0)
    coarse = np.round(np.arange(0, 101) / 100, 2)
    for a in coarse:
        for b in coarse:
            s = holt(y, a, b)[0]
            if s < best[0]:
                best = (s, a, b)
    _, ca, cb = best
    fa = np.round(np.arange(round(max(0, ca - 0.01) * 1000), round(min(1, ca + 0.01) * 1000) + 1) / 1000, 3)
    fb = np.round(np.arange(round(max(0, cb - 0.01) * 1000), round(min(1, cb + 0.01) * 1000) + 1) / 1000, 3)
    for a in fa:
        for b in fb:
            s = holt(y, a, b)[0]
            if s < best[0]:
                best = (s, a, b)
    ssr, a, b = best
    return dict(alpha=float(a), beta=float(b), ssr=ssr, rmse=math.sqrt(ssr / len(y)))


def metrics(f, a):
    f, a = np.asarray(f), np.asarray(a)
    den = np.abs(f) + np.abs(a)
    keep = den >= 1e-12
    return dict(rmse=math.sqrt(((f - a) ** 2).mean()), mae=np.abs(f - a).mean(),
                smape=200 * (np.abs(f - a)[keep] / den[keep]).mean())


def main(path):
    r = load(path)
    train, test = r[:TRAIN], r[TRAIN:]
    dtrain = np.diff(train)
    out = dict(n_returns=len(r), n_train=len(train), n_test=len(test))
    out["describe"] = describe(train)
    out["frequency"] = frequency(train)
    out["leverage"] = float(np.corrcoef(train[1:] ** 2, train[:-1])[0, 1])
    vals, counts = np.unique(np.round(train, 3), return_counts=True)
    out["runs"] = dict(mean=runs(train, train.mean()), median=runs(train, np.median(train)),
                       mode=runs(train, out["describe"]["mode"]))
    out["adf"] = dict(none=adf(train, "n"), constant_trend=adf(train, "ct"))
    out["pp"] = dict(none=pp(train, "n"), constant_trend=pp(train, "ct"))
    out["kpss"] = dict(constant=kpss_stat(train, "c"), constant_trend=kpss_stat(train, "ct"))
    out["kpss_diff"] = dict(constant=kpss_stat(dtrain, "c"), constant_trend=kpss_stat(dtrain, "ct"))
    out["bai_perron_0v1"] = supf_0v1(train)
    b = fit_brown(train)
    out["brown"] = b
    out["holt"] = fit_holt(train)
    h = len(test)
    out["forecast"] = dict(
        brown=metrics(np.full(h, b["level"]), test),
        naive=metrics(np.full(h, train[-1]), test),
        mean=metrics(np.full(h, train.mean()), test),
    )
    json.dump(out, sys.stdout, indent=2, default=float)
    print()


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/usdtry_2022.csv")
