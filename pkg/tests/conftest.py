"""Shared helpers: slow reference oracles and point-set builders.

Everything here is deliberately naive — direct loops over frequencies,
exhaustive enumeration of candidate boxes — so the fast vectorized
implementations can be pinned against an independent code path on
small instances.
"""

import numpy as np

from unidisc.pointsets import PointSet, default_generator_matrices, net_points


def naive_eval(freqs, coeffs, X):
    """O(K * m) evaluation of sum_k c_k exp(i<k, x>), one frequency at a time."""
    X = np.asarray(X, dtype=np.float64)
    out = np.zeros(X.shape[0], dtype=np.complex128)
    for k, c in zip(np.asarray(freqs), np.asarray(coeffs)):
        out += c * np.exp(1j * (X @ np.asarray(k, dtype=np.float64)))
    return out


def brute_dispersion(unit_points):
    """Largest open axis-parallel empty box by exhaustive enumeration.

    Candidate edges are point coordinates plus the cube walls; the
    optimal box always has each face touching a point or a wall, so
    this search is exact.  Exponential in m and d — small inputs only.
    """
    P = np.asarray(unit_points, dtype=np.float64)
    m, d = P.shape
    lows = [np.unique(np.concatenate(([0.0], P[:, j]))) for j in range(d)]
    highs = [np.unique(np.concatenate((P[:, j], [1.0]))) for j in range(d)]
    best = 0.0

    def rec(j, u, v, vol):
        nonlocal best
        if j == d:
            inside = np.ones(m, dtype=bool)
            for ax in range(d):
                inside &= (P[:, ax] > u[ax]) & (P[:, ax] < v[ax])
            if not inside.any():
                best = max(best, vol)
            return
        for uj in lows[j]:
            for vj in highs[j]:
                if vj > uj:
                    rec(j + 1, u + (uj,), v + (vj,), vol * (vj - uj))

    rec(0, (), (), 1.0)
    return best


def planted_net(r, s, a):
    """Net of resolution r with the corner box prod_j [0, 2^(a-s_j)) emptied.

    The removed box is anisotropic with per-axis extent 2^(a-s_j), the
    shape that a degree-2^s witness kernel concentrates on.
    """
    s = tuple(int(v) for v in s)
    pts = net_points(default_generator_matrices(len(s), r))
    nums = pts.numerators
    in_box = np.ones(pts.m, dtype=bool)
    for j, sj in enumerate(s):
        shift = r + a - sj
        if shift >= r:
            continue  # box spans the whole axis
        in_box &= nums[:, j] < (1 << max(shift, 0))
    return PointSet(d=len(s), domain="unit", numerators=nums[~in_box],
                    exponent=r)


def diagonal_points(r):
    """The 2^r points (i, i)/2^r on the main diagonal."""
    i = np.arange(1 << r, dtype=np.int64)
    return PointSet(d=2, domain="unit",
                    numerators=np.stack([i, i], axis=1), exponent=r)
