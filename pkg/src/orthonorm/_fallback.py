"""Pure numpy versions of the compiled kernels (same signatures)."""
import numpy as np


def recur(A, B, C, y0, x, n):
    x = np.asarray(x, dtype=float)
    ym = np.zeros_like(x)
    yc = np.full_like(x, y0)
    for k in range(n):
        ym, yc = yc, (A[k] * x + B[k]) * yc - C[k] * ym
    return yc


def recur_all(A, B, C, y0, x, n):
    x = np.asarray(x, dtype=float)
    out = np.empty((n + 1, x.size))
    out[0] = y0
    if n >= 1:
        out[1] = (A[0] * x + B[0]) * y0
    for k in range(1, n):
        out[k + 1] = (A[k] * x + B[k]) * out[k] - C[k] * out[k - 1]
    return out


def christoffel(A, B, C, y0, x, n):
    x = np.asarray(x, dtype=float)
    ym = np.zeros_like(x)
    yc = np.full_like(x, y0)
    s = yc * yc
    for k in range(n - 1):
        ym, yc = yc, (A[k] * x + B[k]) * yc - C[k] * ym
        s += yc * yc
    return s


def stieltjes(x, w, N):
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    a = np.zeros(N)
    b = np.zeros(N)
    r = np.zeros(N)
    mass = float(np.sum(w))
    pc = np.full_like(x, 1.0 / np.sqrt(mass))
    pm = np.zeros_like(x)
    bprev = 0.0
    for k in range(N):
        xp = x * pc
        a[k] = np.dot(w, xp * pc)
        r[k] = np.sqrt(np.dot(w, xp * xp))
        q = (x - a[k]) * pc - bprev * pm
        bk = np.sqrt(np.dot(w, q * q))
        if not (bk > 0.0 and np.isfinite(bk)):
            return a, b, r, k, mass
        b[k] = bk
        pm, pc = pc, q / bk
        bprev = bk
    return a, b, r, -1, mass
