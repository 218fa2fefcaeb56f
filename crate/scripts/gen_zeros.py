#!/usr/bin/env python3
"""Generate a table of Riemann zero ordinates (one per line, ascending).

Sign changes of the Hardy Z-function are located on a fine grid using a
vectorized Riemann-Siegel formula with the C0..C4 remainder terms, then each
bracket is refined by Illinois iteration. Low ordinates use mpmath.siegelz.
The result is checked against mpmath.zetazero at several indices.

    python3 scripts/gen_zeros.py 100000 data/zeros_100k.txt
"""
import math
import sys

import mpmath
import numpy as np
import sympy as sp

LOW_T = 300.0


def remainder_coefficients(degree=48):
    """Chebyshev fits of C0..C4 as functions of p in [0, 1]."""
    p = sp.symbols("p")
    psi = sp.cos(2 * sp.pi * (p**2 - p - sp.Rational(1, 16))) / sp.cos(2 * sp.pi * p)
    d = [psi]
    for _ in range(12):
        d.append(sp.diff(d[-1], p))
    pi = sp.pi
    exprs = [
        d[0],
        -d[3] / (96 * pi**2),
        d[2] / (64 * pi**2) + d[6] / (18432 * pi**4),
        -d[1] / (64 * pi**2) - d[5] / (3840 * pi**4) - d[9] / (5308416 * pi**6),
        d[0] / (128 * pi**2)
        + 19 * d[4] / (24576 * pi**4)
        + 11 * d[8] / (5898240 * pi**6)
        + d[12] / (2038431744 * pi**8),
    ]
    fns = [sp.lambdify(p, e, "mpmath") for e in exprs]
    mpmath.mp.dps = 60
    n = 4 * degree
    nodes = np.cos(np.pi * (np.arange(n) + 0.5) / n)  # in (-1, 1)
    ps = 0.5 * (nodes + 1.0)
    fits = []
    for f in fns:
        vals = []
        for x in ps:
            xm = mpmath.mpf(float(x))
            # nudge off the removable singularities at p = 1/4, 3/4
            if abs(xm - mpmath.mpf(1) / 4) < 1e-12 or abs(xm - mpmath.mpf(3) / 4) < 1e-12:
                xm += mpmath.mpf(10) ** -20
            vals.append(float(f(xm)))
        fits.append(np.polynomial.chebyshev.Chebyshev.fit(ps, vals, degree, domain=[0, 1]))
    mpmath.mp.dps = 15
    return fits


def theta(t):
    return t / 2 * np.log(t / (2 * np.pi)) - t / 2 - np.pi / 8 + 1 / (48 * t) + 7 / (5760 * t**3)


def make_z(fits):
    def z(t):
        t = np.asarray(t, dtype=np.float64)
        a = np.sqrt(t / (2 * np.pi))
        nmax = np.floor(a).astype(np.int64)
        frac = a - nmax
        th = theta(t)
        top = int(nmax.max())
        n = np.arange(1, top + 1, dtype=np.float64)
        acc = np.zeros_like(t)
        logn = np.log(n)
        inv = 1 / np.sqrt(n)
        for k in range(top):
            mask = nmax > k
            acc += np.where(mask, inv[k] * np.cos(th - t * logn[k]), 0.0)
        acc *= 2
        corr = np.zeros_like(t)
        for k, f in enumerate(fits):
            corr += f(frac) * a ** (-float(k))
        sign = np.where(nmax % 2 == 1, 1.0, -1.0)
        return acc + sign * a ** -0.5 * corr

    return z


def refine(zf, lo, hi, iters=60):
    flo, fhi = zf(lo), zf(hi)
    side = np.zeros_like(lo)
    for _ in range(iters):
        mid = (lo * fhi - hi * flo) / (fhi - flo)
        fm = zf(mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
        fhi = np.where(left, fhi, fm)
        # Illinois weighting for the stagnant end
        fhi = np.where(left & (side == 1), fhi / 2, fhi)
        flo = np.where(~left & (side == -1), flo / 2, flo)
        side = np.where(left, 1, -1)
        if np.max(hi - lo) < 1e-11:
            break
    return 0.5 * (lo + hi)


def main():
    count = int(sys.argv[1])
    out = sys.argv[2]
    # N(T) ~ theta(T)/pi + 1
    tmax = 20.0
    while theta(tmax) / np.pi + 1 < count + 50:
        tmax *= 1.1
    fits = remainder_coefficients()
    zf = make_z(fits)
    mpz = np.vectorize(lambda x: float(mpmath.siegelz(x)))

    roots = []
    # low range with mpmath
    grid = np.arange(10.0, LOW_T, 0.02)
    vals = mpz(grid)
    idx = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
    for i in idx:
        roots.append(float(mpmath.findroot(mpmath.siegelz, (grid[i], grid[i + 1]), solver="illinois")))

    chunk = 200_000
    start = LOW_T
    while start < tmax:
        spacing = 2 * np.pi / math.log(start / (2 * np.pi))
        step = spacing / 24
        g = start + step * np.arange(chunk + 1)
        v = zf(g)
        i = np.nonzero(np.sign(v[:-1]) != np.sign(v[1:]))[0]
        roots.extend(refine(zf, g[i], g[i + 1]).tolist())
        start = g[-1]
        print(f"scanned to {start:.1f}, {len(roots)} zeros", file=sys.stderr)

    roots = np.array(sorted(roots))
    assert np.all(np.diff(roots) > 0)
    for k in [1, 100, 1000, 5000, 10000, 30000, 60000, count]:
        ref = float(mpmath.zetazero(k).imag)
        err = abs(roots[k - 1] - ref)
        print(f"zero {k}: {roots[k-1]:.9f} vs mpmath {ref:.9f} (|err|={err:.2e})", file=sys.stderr)
        assert err < 1e-6, "zero count mismatch or inaccurate root"
    with open(out, "w") as fh:
        for r in roots[:count]:
            fh.write(f"{r:.9f}\n")


if __name__ == "__main__":
    main()
