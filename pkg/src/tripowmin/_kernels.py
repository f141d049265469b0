"""Scalar numeric kernels, jit-compiled when the numba backend is active.

Backend selection happens once at import time from the TRIPOWMIN_BACKEND
environment variable: "auto" (default) compiles the kernels whenever numba
imports cleanly, "numba" requires it, "numpy" forces the pure-python /
vectorized fallbacks. Everything here works on the apex frame: triangle
with vertices (0, a), (-b, 0), (c, 0), all of a, b, c positive.
"""

import math
import os

import numpy as np


def _pick_backend():
    choice = os.environ.get("TRIPOWMIN_BACKEND", "auto").strip().lower() or "auto"
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(
            "TRIPOWMIN_BACKEND must be 'auto', 'numba' or 'numpy', got %r" % choice
        )
    if choice == "numpy":
        return "numpy", None
    try:
        from numba import njit
    except ImportError:
        if choice == "numba":
            raise ImportError("TRIPOWMIN_BACKEND=numba but numba is not importable")
        return "numpy", None
    return "numba", njit


BACKEND, _njit = _pick_backend()


def backend() -> str:
    """Name of the active kernel backend: "numba" or "numpy"."""
    return BACKEND


def eval_f(a, b, c, n, x, y):
    """Sum of n-th powered distances from (x, y) to the three side lines."""
    p = math.sqrt(a * a + b * b)
    q = math.sqrt(a * a + c * c)
    d1 = abs(a * x - b * y + a * b) / p
    d2 = abs(-a * x - c * y + a * c) / q
    d3 = abs(y)
    return d1 ** n + d2 ** n + d3 ** n


def grad_f(a, b, c, n, x, y):
    """Gradient of the powered-distance sum, n > 1.

    Slacks are clamped at zero so fractional powers stay real when a
    boundary point lands an ulp outside; the clamped value is exactly the
    one-sided derivative there.
    """
    p = math.sqrt(a * a + b * b)
    q = math.sqrt(a * a + c * c)
    u = (a * x - b * y + a * b) / p
    v = (-a * x - c * y + a * c) / q
    w = y
    if u < 0.0:
        u = 0.0
    if v < 0.0:
        v = 0.0
    if w < 0.0:
        w = 0.0
    du = u ** (n - 1.0)
    dv = v ** (n - 1.0)
    dw = w ** (n - 1.0)
    gx = n * (a / p) * du - n * (a / q) * dv
    gy = -n * (b / p) * du - n * (c / q) * dv + n * dw
    return gx, gy


def _seg_closest(px, py, ax, ay, bx, by):
    vx = bx - ax
    vy = by - ay
    t = ((px - ax) * vx + (py - ay) * vy) / (vx * vx + vy * vy)
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return ax + t * vx, ay + t * vy


def project_point(a, b, c, x, y):
    """Nearest point of the closed triangle; ties go to the first edge tried.

    Points inside by a roundoff-level margin are returned unchanged, which
    makes repeated projection bit-stable.
    """
    g1 = a * x - b * y + a * b
    g2 = -a * x - c * y + a * c
    e1 = 1e-14 * (a * b + abs(a * x) + abs(b * y))
    e2 = 1e-14 * (a * c + abs(a * x) + abs(c * y))
    if g1 >= -e1 and g2 >= -e2 and y >= 0.0:
        return x, y
    bx, by = _seg_closest(x, y, 0.0, a, -b, 0.0)
    bd = (bx - x) * (bx - x) + (by - y) * (by - y)
    cx, cy = _seg_closest(x, y, 0.0, a, c, 0.0)
    d = (cx - x) * (cx - x) + (cy - y) * (cy - y)
    if d < bd:
        bx, by, bd = cx, cy, d
    cx, cy = _seg_closest(x, y, -b, 0.0, c, 0.0)
    d = (cx - x) * (cx - x) + (cy - y) * (cy - y)
    if d < bd:
        bx, by, bd = cx, cy, d
    return bx, by


def _lattice_best_loop(a, b, c, n, m, w1x, w1y, w2x, w2y, w3x, w3y):
    # Scan the barycentric lattice of the window triangle (w1, w2, w3) at
    # resolution m; strict < keeps the lowest lattice index on exact ties.
    p = math.sqrt(a * a + b * b)
    q = math.sqrt(a * a + c * c)
    inv = 1.0 / m
    best_x = w1x
    best_y = w1y
    best_f = math.inf
    for i in range(m + 1):
        wa = i * inv
        for j in range(m + 1 - i):
            wb = j * inv
            wc = (m - i - j) * inv
            x = wa * w1x + wb * w2x + wc * w3x
            y = wa * w1y + wb * w2y + wc * w3y
            d1 = abs(a * x - b * y + a * b) / p
            d2 = abs(-a * x - c * y + a * c) / q
            d3 = abs(y)
            f = d1 ** n + d2 ** n + d3 ** n
            if f < best_f:
                best_f = f
                best_x = x
                best_y = y
    return best_x, best_y, best_f


_BARY_CACHE: dict = {}


def _bary_weights(m):
    cached = _BARY_CACHE.get(m)
    if cached is None:
        counts = np.arange(m + 1, 0, -1)
        ii = np.repeat(np.arange(m + 1), counts).astype(np.float64)
        jj = np.concatenate([np.arange(k) for k in counts]).astype(np.float64)
        kk = m - ii - jj
        inv = 1.0 / m
        cached = (ii * inv, jj * inv, kk * inv)
        _BARY_CACHE[m] = cached
    return cached


def _lattice_best_numpy(a, b, c, n, m, w1x, w1y, w2x, w2y, w3x, w3y):
    # Vectorized twin of _lattice_best_loop: same enumeration order, same
    # arithmetic expressions.  numpy's vectorized pow can round a different
    # way than libm's scalar pow, so the handful of near-minimal lattice
    # points is re-evaluated with scalar arithmetic; both implementations
    # then return identical bits, lowest lattice index on exact ties.
    p = math.sqrt(a * a + b * b)
    q = math.sqrt(a * a + c * c)
    wa, wb, wc = _bary_weights(m)
    x = wa * w1x + wb * w2x + wc * w3x
    y = wa * w1y + wb * w2y + wc * w3y
    d1 = np.abs(a * x - b * y + a * b) / p
    d2 = np.abs(-a * x - c * y + a * c) / q
    d3 = np.abs(y)
    f = d1 ** n + d2 ** n + d3 ** n
    fmin = float(np.min(f))
    cutoff = fmin + 32.0 * float(np.spacing(fmin))
    best_x = w1x
    best_y = w1y
    best_f = math.inf
    for k in np.nonzero(f <= cutoff)[0]:
        fk = float(d1[k]) ** n + float(d2[k]) ** n + float(d3[k]) ** n
        if fk < best_f:
            best_f = fk
            best_x = float(x[k])
            best_y = float(y[k])
    return best_x, best_y, best_f


def pg_minimize(a, b, c, n, x0, y0, step0, tol, max_iters):
    """Spectral projected gradient descent.

    Each iteration seeds the step with the Barzilai-Borwein quotient from
    the previous move and backtracks by halving until the value drops below
    the worst of the last ten accepted values (plus a small slope margin).
    The spectral step tracks the local curvature scale in the direction of
    travel, which matters on thin triangles where the objective valley can
    be worse than 1e5:1 anisotropic and a fixed-step method zigzags for
    millions of iterations.

    The objective is normalized by its value at the start point: a power
    sum of sub-unit distances collapses exponentially with n, and on the
    raw scale step * |grad| can sit below any fixed threshold before a
    single move is taken.  Normalization leaves the minimizer untouched
    and makes the stopping rule read as a displacement-length threshold:
    stop once step * |grad| <= tol, or at the iteration cap.  Returns
    (x, y, f, iterations, step * |grad| at exit) for the best point seen,
    with f back on the raw scale.
    """
    x, y = project_point(a, b, c, x0, y0)
    f0 = eval_f(a, b, c, n, x, y)
    inv0 = 1.0 / f0 if f0 > 0.0 else 1.0
    f = f0 * inv0
    gx, gy = grad_f(a, b, c, n, x, y)
    gx *= inv0
    gy *= inv0
    gn = math.hypot(gx, gy)
    bx, by, bf = x, y, f
    hist = np.empty(10)
    for i in range(10):
        hist[i] = f
    s = step0
    it = 0
    while it < max_iters and s * gn > tol:
        fmax = hist[0]
        for i in range(1, 10):
            if hist[i] > fmax:
                fmax = hist[i]
        accepted = False
        cx = x
        cy = y
        cf = f
        dx = 0.0
        dy = 0.0
        while s * gn > tol:
            cx, cy = project_point(a, b, c, x - s * gx, y - s * gy)
            dx = cx - x
            dy = cy - y
            if dx != 0.0 or dy != 0.0:
                cf = eval_f(a, b, c, n, cx, cy) * inv0
                if cf <= fmax + 1e-4 * (gx * dx + gy * dy):
                    accepted = True
                    break
            s *= 0.5
        if not accepted:
            break
        ngx, ngy = grad_f(a, b, c, n, cx, cy)
        ngx *= inv0
        ngy *= inv0
        den = dx * (ngx - gx) + dy * (ngy - gy)
        if den > 0.0:
            s = (dx * dx + dy * dy) / den
        else:
            # flat or concave sample: grow and let the search recover
            s *= 2.0
        if s > 1e30:
            s = 1e30
        elif s < 1e-30:
            s = 1e-30
        x, y, f = cx, cy, cf
        gx, gy = ngx, ngy
        gn = math.hypot(gx, gy)
        if f < bf:
            bx, by, bf = x, y, f
        hist[it % 10] = f
        it += 1
    return bx, by, bf / inv0, it, s * gn


if BACKEND == "numba":
    _jit = _njit(cache=True)
    _seg_closest = _jit(_seg_closest)
    eval_f = _jit(eval_f)
    grad_f = _jit(grad_f)
    project_point = _jit(project_point)
    pg_minimize = _jit(pg_minimize)
    lattice_best = _jit(_lattice_best_loop)
else:
    lattice_best = _lattice_best_numpy


def warmup():
    """Force one compilation/execution of every kernel (useful for timing)."""
    eval_f(3.0, 1.0, 2.0, 2.0, 0.2, 0.8)
    grad_f(3.0, 1.0, 2.0, 2.0, 0.2, 0.8)
    project_point(3.0, 1.0, 2.0, 5.0, -1.0)
    lattice_best(3.0, 1.0, 2.0, 2.0, 8, 0.0, 3.0, -1.0, 0.0, 2.0, 0.0)
    pg_minimize(3.0, 1.0, 2.0, 2.0, 0.3, 1.0, 0.36, 1e-10, 50)
