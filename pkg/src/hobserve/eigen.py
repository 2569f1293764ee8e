"""Dense complex eigenvalues: Householder Hessenberg reduction plus shifted QR.

Only eigenvalues are computed (no Schur vectors).  The QR sweep works on the
active unreduced window and deflates from the bottom whenever a subdiagonal
entry becomes negligible.
"""

import numpy as np

from .errors import ConvergenceError

EPS = np.finfo(float).eps


def hessenberg(a):
    """Return an upper Hessenberg matrix unitarily similar to ``a``."""
    h = np.array(a, dtype=complex)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k].copy()
        xmax = np.abs(x).max()
        if xmax == 0.0:
            continue
        x /= xmax  # keeps the squared norms clear of underflow
        xnorm = np.linalg.norm(x)
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * xnorm
        v /= np.linalg.norm(v)
        h[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, :])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h


def _givens(a, b):
    r = np.hypot(abs(a), abs(b))
    if r == 0.0:
        return 1.0 + 0j, 0j
    return a / r, b / r


def _wilkinson_shift(a, b, c, d):
    # eigenvalue of [[a, b], [c, d]] closest to d
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    mu1 = d - b * c / (half + disc) if half + disc != 0 else d
    mu2 = d - b * c / (half - disc) if half - disc != 0 else d
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def eigvals(a, max_sweeps_per_dim=100):
    """Eigenvalues of a square complex matrix.

    Raises :class:`ConvergenceError` after ``max_sweeps_per_dim * n`` QR sweeps.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0, dtype=complex)
    norm = np.abs(a).max()
    if norm == 0.0:
        return np.zeros(n, dtype=complex)
    if not np.isfinite(norm):
        raise ValueError("matrix has non-finite entries")
    # power-of-two scaling is exact; plain complex division by a subnormal overflows
    e = int(np.frexp(norm)[1])
    scaled = np.ldexp(a.real, -e) + 1j * np.ldexp(a.imag, -e)
    lam = _eigvals_scaled(scaled, max_sweeps_per_dim)
    return np.ldexp(lam.real, e) + 1j * np.ldexp(lam.imag, e)


def _eigvals_scaled(a, max_sweeps_per_dim):
    # a has max-norm ~1 here; entries below the LAPACK-style safe minimum are
    # far under roundoff and are flushed so no division sees a subnormal
    n = a.shape[0]
    small = np.finfo(float).tiny * n / EPS
    a = np.where(np.abs(a) < small, 0.0, a)
    h = hessenberg(a)
    h[np.abs(h) < small] = 0.0
    out = np.zeros(n, dtype=complex)
    hi = n - 1
    sweeps = 0
    since_deflation = 0
    budget = max_sweeps_per_dim * n
    while hi >= 0:
        if hi == 0:
            out[0] = h[0, 0]
            break
        lo = hi
        while lo > 0:
            scale = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if scale == 0.0:
                scale = np.abs(h[: hi + 1, : hi + 1]).max()
            if abs(h[lo, lo - 1]) <= max(EPS * scale, small):
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            out[hi] = h[hi, hi]
            hi -= 1
            since_deflation = 0
            continue
        if sweeps >= budget:
            raise ConvergenceError(f"QR iteration did not converge after {sweeps} sweeps")
        sweeps += 1
        since_deflation += 1

        if since_deflation % 11 == 0:
            # exceptional shift to break cycles
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1]) * (1 + 1j)
        else:
            mu = _wilkinson_shift(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])

        w = slice(lo, hi + 1)
        blk = h[w, w]
        m = hi - lo + 1
        blk[np.arange(m), np.arange(m)] -= mu
        rots = []
        for k in range(m - 1):
            c, s = _givens(blk[k, k], blk[k + 1, k])
            rows = blk[k:k + 2, k:].copy()
            blk[k, k:] = c.conjugate() * rows[0] + s.conjugate() * rows[1]
            blk[k + 1, k:] = -s * rows[0] + c * rows[1]
            blk[k + 1, k] = 0.0
            rots.append((c, s))
        for k, (c, s) in enumerate(rots):
            top = min(k + 2, m - 1)
            cols = blk[: top + 1, k:k + 2].copy()
            # right-multiply by G^H
            blk[: top + 1, k] = cols[:, 0] * c + cols[:, 1] * s
            blk[: top + 1, k + 1] = -cols[:, 0] * s.conjugate() + cols[:, 1] * c.conjugate()
        blk[np.arange(m), np.arange(m)] += mu
        blk[np.abs(blk) < small] = 0.0
        h[w, w] = blk
    return out
