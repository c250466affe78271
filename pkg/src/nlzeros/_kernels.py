"""numba kernels for the census scans.

The per-polynomial count is a certified argument-principle computation:
the winding number of f(e^{it}) is accumulated segment by segment, and a
segment is accepted only when a Taylor bound proves |f| stays away from 0
on it (|f(t+s) - f(t)| <= |f'(t)| s + C2 s^2 / 2 with C2 = sum k^2 |a_k|).
Rejected segments are bisected.  Cyclotomic factors are divided out
exactly first when the walk fails.  Anything still unresolved is flagged
and recounted by the exact Python path.
"""

import math

import numpy as np
from numba import njit

FLAG = 255

CLS_NEWMAN = 0
CLS_LITTLEWOOD_NORM = 1
CLS_LITTLEWOOD_ALL = 2

_STACK = 96


@njit(cache=True)
def _eval(a, n, t):
    c = math.cos(t)
    s = math.sin(t)
    zr = 1.0
    zi = 0.0
    fr = 0.0
    fi = 0.0
    dr = 0.0
    di = 0.0
    for k in range(n + 1):
        ak = a[k]
        if ak != 0:
            fr += ak * zr
            fi += ak * zi
            dr -= k * ak * zi
            di += k * ak * zr
        nzr = zr * c - zi * s
        zi = zr * s + zi * c
        zr = nzr
    return fr, fi, dr, di


@njit(cache=True)
def winding(a, n, M, maxdepth):
    """Number of zeros of sum a_k z^k in |z| < 1, or -1 if not certified."""
    if n == 0:
        return 0
    c2 = 0.0
    tot_abs = 0.0
    for k in range(n + 1):
        c2 += k * k * abs(a[k])
        tot_abs += (k + 1) * abs(a[k])
    # covers rounding in the O(n) recurrences with a wide margin
    slack = 1e-9 * (1.0 + tot_abs)
    h0 = 2.0 * math.pi / M
    total = 0.0
    st0 = np.empty(_STACK)
    st1 = np.empty(_STACK)
    std = np.empty(_STACK, np.int64)
    f0r, f0i, d0r, d0i = _eval(a, n, 0.0)
    sr, si, sdr, sdi = f0r, f0i, d0r, d0i
    for j in range(M):
        t1 = (j + 1) * h0
        st0[0] = j * h0
        st1[0] = t1
        std[0] = 0
        sp = 1
        while sp > 0:
            sp -= 1
            u0 = st0[sp]
            u1 = st1[sp]
            dep = std[sp]
            if j == M - 1 and u1 == t1:
                f1r, f1i, d1r, d1i = sr, si, sdr, sdi
            else:
                f1r, f1i, d1r, d1i = _eval(a, n, u1)
            hh = 0.5 * (u1 - u0)
            q = 0.5 * c2 * hh * hh + slack
            ok0 = math.hypot(f0r, f0i) > math.hypot(d0r, d0i) * hh + q
            ok1 = math.hypot(f1r, f1i) > math.hypot(d1r, d1i) * hh + q
            if ok0 and ok1:
                xr = f1r * f0r + f1i * f0i
                xi = f1i * f0r - f1r * f0i
                total += math.atan2(xi, xr)
                f0r, f0i, d0r, d0i = f1r, f1i, d1r, d1i
            else:
                if dep >= maxdepth or sp + 2 > _STACK:
                    return -1
                mid = 0.5 * (u0 + u1)
                st0[sp] = mid
                st1[sp] = u1
                std[sp] = dep + 1
                sp += 1
                st0[sp] = u0
                st1[sp] = mid
                std[sp] = dep + 1
                sp += 1
    w = total / (2.0 * math.pi)
    r = round(w)
    if abs(w - r) > 0.25 or r < 0 or r > n:
        return -1
    return int(r)


@njit(cache=True)
def _near_root(a, n, d):
    t = 2.0 * math.pi / d
    c = math.cos(t)
    s = math.sin(t)
    zr = 1.0
    zi = 0.0
    fr = 0.0
    fi = 0.0
    scale = 0.0
    for k in range(n + 1):
        fr += a[k] * zr
        fi += a[k] * zi
        scale += abs(a[k])
        nzr = zr * c - zi * s
        zi = zr * s + zi * c
        zr = nzr
    return math.hypot(fr, fi) < 1e-6 * (1.0 + scale)


@njit(cache=True)
def _try_divide(a, n, phi, dphi, q):
    """q = a / phi if exact (phi monic); returns True on success."""
    r = a[: n + 1].copy()
    for k in range(n - dphi, -1, -1):
        c = r[k + dphi]
        q[k] = c
        if c != 0:
            if abs(c) > (1 << 40):
                return False
            for i in range(dphi + 1):
                r[k + i] -= c * phi[i]
    for i in range(dphi):
        if r[i] != 0:
            return False
    return True


@njit(cache=True)
def count_one(a, n, orders, phis, phideg, M, maxdepth):
    """(N, U) for one polynomial, (FLAG, FLAG) when not certified."""
    w = winding(a, n, M, maxdepth)
    if w >= 0:
        return w, 0
    cur = a[: n + 1].copy()
    deg = n
    q = np.zeros(n + 1, np.int64)
    u = 0
    for idx in range(orders.shape[0]):
        dp = phideg[idx]
        while deg >= dp and _near_root(cur, deg, orders[idx]):
            if not _try_divide(cur, deg, phis[idx], dp, q):
                break
            deg -= dp
            for i in range(deg + 1):
                cur[i] = q[i]
            u += dp
    if u == 0:
        return FLAG, FLAG
    w = winding(cur, deg, M, maxdepth)
    if w < 0:
        return FLAG, FLAG
    return w, u


@njit(cache=True)
def _gray(x):
    return x ^ (x >> 1)


@njit(cache=True)
def newman_coeffs(idx, n, out):
    """Coefficients of the idx-th Newman polynomial in generation order (dedup ALL)."""
    for i in range(n + 1):
        out[i] = 0
    out[0] = 1
    out[n] = 1
    if n == 1:
        return
    l = (n - 1) // 2
    vl = n - 1 - 2 * l
    size = 1 << l
    vpos = idx & 1 if vl == 1 else 0
    s = idx >> vl
    i = s >> l
    jpos = s & (size - 1)
    j = jpos if i % 2 == 0 else size - 1 - jpos
    gu = _gray(i)
    gw = _gray(j)
    for b in range(l):
        out[1 + b] = (gu >> b) & 1
        out[n - 1 - b] = (gw >> b) & 1
    if vl == 1:
        v = vpos if s % 2 == 0 else 1 - vpos
        out[1 + l] = v


@njit(cache=True)
def littlewood_coeffs(idx, n, normalized, out):
    if normalized:
        out[0] = 1
        if n >= 1:
            out[1] = 1
        g = _gray(idx)
        for b in range(n - 1):
            out[2 + b] = 1 if (g >> b) & 1 else -1
    else:
        g = _gray(idx)
        for b in range(n + 1):
            out[b] = 1 if (g >> b) & 1 else -1


@njit(cache=True)
def scan_block(cls, n, start, stop, orders, phis, phideg, M, maxdepth, outN, outU):
    a = np.zeros(n + 1, np.int64)
    for idx in range(start, stop):
        if cls == CLS_NEWMAN:
            newman_coeffs(idx, n, a)
        elif cls == CLS_LITTLEWOOD_NORM:
            littlewood_coeffs(idx, n, True, a)
        else:
            littlewood_coeffs(idx, n, False, a)
        nn, uu = count_one(a, n, orders, phis, phideg, M, maxdepth)
        outN[idx - start] = nn
        outU[idx - start] = uu


def cyclotomic_tables(nmax):
    """Orders d with phi(d) <= nmax and their padded Phi_d coefficient rows."""
    from .poly import cyclotomic, cyclotomic_orders_upto, euler_phi

    orders = [d for d in cyclotomic_orders_upto(max(nmax, 1)) if euler_phi(d) <= nmax]
    width = max(euler_phi(d) for d in orders) + 1
    phis = np.zeros((len(orders), width), np.int64)
    deg = np.zeros(len(orders), np.int64)
    for r, d in enumerate(orders):
        c = cyclotomic(d).coeffs
        phis[r, : len(c)] = c
        deg[r] = len(c) - 1
    return np.array(orders, np.int64), phis, deg
