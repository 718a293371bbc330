"""Geometric quality measures for point sets.

* dispersion: the volume of the largest empty axis-parallel open box in
  the unit cube, computed exactly for small sets and restricted to
  dyadic boxes for large ones;
* covering certificates: does every point of the torus have a sample
  within the per-axis radius 1/(2 d N_j) radians, as required for
  two-sided sup-norm discretization;
* density profiles: occupancy counts of the half-cell partition
  attached to a degree vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frequency import enumerate_compositions
from .pointsets import PointSet, dyadic_box_indices
from .trigpoly import TWO_PI

_DEFAULT_EXACT_CAPS = {1: 100000, 2: 1024, 3: 160}
_DEFAULT_EXACT_CAP_HIGH_D = 64


@dataclass(frozen=True)
class DispersionResult:
    volume: float
    u: tuple | None
    v: tuple | None
    method: str  # "exact" | "dyadic"


@dataclass(frozen=True)
class CoveringResult:
    status: str  # "pass" | "fail" | "inconclusive"
    witness: tuple | None  # torus point with no sample in radius, on fail
    method: str  # "dyadic-boxes" | "probe"
    details: dict


@dataclass(eq=False)
class DensityProfile:
    N: tuple
    shape: tuple
    counts: np.ndarray
    m: int

    @property
    def b_plus(self) -> int:
        return int(self.counts.max())

    @property
    def b_minus(self) -> int:
        return int(self.counts.min())

    @property
    def equal_b(self) -> int | None:
        """Common cell count when occupancy is perfectly even, else None."""
        return self.b_plus if self.b_plus == self.b_minus else None


# ---------------------------------------------------------------------------
# exact dispersion


def _gap_scan(ys_sorted: np.ndarray) -> tuple[float, float]:
    """Largest gap (and its lower end) in [0, 1] around sorted values."""
    vals = np.concatenate(([0.0], ys_sorted, [1.0]))
    gaps = np.diff(vals)
    i = int(np.argmax(gaps))  # first maximal gap = smallest lower end
    return float(gaps[i]), float(vals[i])


def _sweep_2d(P: np.ndarray, scale: float, prefix: tuple, best: list) -> None:
    """All maximal empty boxes of a 2-d subproblem, via a removal sweep.

    For each left edge u1 (ascending), points to the right are removed
    in order of decreasing x; after each removal batch the current
    largest y-gap gives the best box with right edge at the removed x.
    Candidates are folded into `best` = [volume, u, v] scaled by the
    widths already fixed in enclosing dimensions.
    """
    xs = P[:, 0]
    ys = P[:, 1]
    yorder = np.argsort(ys, kind="stable")
    u_cands = [0.0] + sorted(set(float(v) for v in xs))
    for u1 in u_cands:
        if scale * (1.0 - u1) <= best[0] and best[1] is not None:
            continue
        sel = yorder[xs[yorder] > u1]
        k = sel.shape[0]
        # linked list over strip points in ascending y, with sentinels
        yv = np.empty(k + 2)
        yv[0] = 0.0
        yv[1:k + 1] = ys[sel]
        yv[k + 1] = 1.0
        nxt = list(range(1, k + 2)) + [k + 2]
        prv = list(range(-1, k + 1))
        diffs = np.diff(yv[: k + 2])
        gi = int(np.argmax(diffs))
        cur_gap, cur_lo = float(diffs[gi]), float(yv[gi])

        xv = xs[sel]
        order = np.argsort(-xv, kind="stable")
        pos = 0
        v1 = 1.0
        while True:
            vol = scale * (v1 - u1) * cur_gap
            if vol > best[0]:
                best[0] = vol
                best[1] = prefix + ((u1, v1), (cur_lo, cur_lo + cur_gap))
            if pos >= k:
                break
            v1 = float(xv[order[pos]])
            while pos < k and float(xv[order[pos]]) == v1:
                node = int(order[pos]) + 1
                p, nx = prv[node], nxt[node]
                lo = float(yv[p])
                g = float(yv[nx]) - lo
                nxt[p] = nx
                prv[nx] = p
                if g > cur_gap or (g == cur_gap and lo < cur_lo):
                    cur_gap, cur_lo = g, lo
                pos += 1


def _search_nd(P: np.ndarray, scale: float, prefix: tuple,
               best: list) -> None:
    dd = P.shape[1]
    if dd == 1:
        vals = np.sort(P[:, 0])
        gap, lo = _gap_scan(vals)
        vol = scale * gap
        if vol > best[0]:
            best[0] = vol
            best[1] = prefix + ((lo, lo + gap),)
        return
    if dd == 2:
        _sweep_2d(P, scale, prefix, best)
        return
    xs = P[:, 0]
    u_cands = [0.0] + sorted(set(float(v) for v in xs))
    for u1 in u_cands:
        if scale * (1.0 - u1) <= best[0] and best[1] is not None:
            continue
        sub = P[xs > u1]
        v_vals = sorted(set(float(v) for v in sub[:, 0]), reverse=True)
        for v1 in [1.0] + v_vals:
            w = scale * (v1 - u1)
            if w <= best[0] and best[1] is not None:
                continue
            strip = sub[sub[:, 0] < v1]
            _search_nd(strip[:, 1:], w, prefix + ((u1, v1),), best)


def dispersion_exact(points: PointSet,
                     max_points: int | None = None) -> DispersionResult:
    """Exact dispersion via maximal-empty-box search.

    Coordinates are normalized to the unit cube first. The search is
    exhaustive over candidate edges, so it is intended for small sets;
    per-dimension defaults cap the accepted cardinality (override with
    `max_points`). Ties between maximal boxes resolve to the first box
    in scan order (lower edges ascending, upper edges descending).
    """
    d = points.d
    cap = max_points if max_points is not None else _DEFAULT_EXACT_CAPS.get(
        d, _DEFAULT_EXACT_CAP_HIGH_D
    )
    if points.m > cap:
        raise ValueError(
            f"{points.m} points exceeds the exact-search cap {cap} for "
            f"d={d}; pass max_points to override or use dispersion_dyadic"
        )
    if points.m == 0:
        return DispersionResult(volume=1.0, u=(0.0,) * d, v=(1.0,) * d,
                                method="exact")
    P = points.unit_coords()
    best: list = [0.0, None]
    _search_nd(P, 1.0, (), best)
    if best[1] is None:
        # degenerate: a point on every candidate edge; the scan above
        # always records something for nonempty strips, so this is
        # unreachable in practice
        return DispersionResult(volume=0.0, u=None, v=None, method="exact")
    pairs = best[1]
    return DispersionResult(
        volume=float(best[0]),
        u=tuple(p[0] for p in pairs),
        v=tuple(p[1] for p in pairs),
        method="exact",
    )


# ---------------------------------------------------------------------------
# dyadic dispersion


def find_empty_dyadic_box(points: PointSet, shape) -> tuple | None:
    """First (lexicographic) empty dyadic box with per-axis levels
    `shape`, or None if every box of that shape holds a point."""
    if points.encoding != "dyadic":
        raise ValueError("dyadic box search requires dyadic points")
    s = tuple(int(v) for v in shape)
    L = sum(s)
    if L > 26:
        raise ValueError(f"total level {L} too fine to enumerate")
    flat = dyadic_box_indices(points.numerators, points.exponent, s)
    occ = np.zeros(1 << L, dtype=bool)
    occ[flat] = True
    if occ.all():
        return None
    b = int(np.argmin(occ))
    a = []
    for sj in reversed(s):
        a.append(b & ((1 << sj) - 1))
        b >>= sj
    return tuple(a[::-1])


def dispersion_dyadic(points: PointSet,
                      max_level: int | None = None) -> DispersionResult:
    """Largest empty dyadic box, scanning total levels coarse to fine.

    Returns the first empty box found (smallest total level, then
    lexicographic in shape and position); its volume 2^-L upper-bounds
    nothing but lower-bounds the true dispersion. With the default cap
    (exponent + 1) a witness always exists; a caller-supplied smaller
    cap may exhaust without finding one, reported as volume 0.
    """
    if points.encoding != "dyadic":
        raise ValueError("dyadic dispersion requires dyadic points")
    d = points.d
    cap = max_level if max_level is not None else points.exponent + 1
    for L in range(cap + 1):
        for comp in enumerate_compositions(L, d):
            box = find_empty_dyadic_box(points, comp.s)
            if box is not None:
                u = tuple(a / float(1 << sj) for a, sj in zip(box, comp.s))
                v = tuple((a + 1) / float(1 << sj)
                          for a, sj in zip(box, comp.s))
                return DispersionResult(volume=2.0 ** (-L), u=u, v=v,
                                        method="dyadic")
    return DispersionResult(volume=0.0, u=None, v=None, method="dyadic")


# ---------------------------------------------------------------------------
# covering certificates


def covering_radii(N, d: int) -> list[float]:
    """Per-axis comparison radii 1/(2 d N_j) in radians (inf if N_j=0)."""
    return [math.inf if nj == 0 else 1.0 / (2.0 * d * nj) for nj in N]


def covering_certificate(points: PointSet, N, probe_divisor: int = 2,
                         max_cells: int = 60_000_000) -> CoveringResult:
    """Certify that every torus point has a sample within the per-axis
    radii 1/(2 d N_j).

    Dyadic sets first try an exact argument: if every dyadic box with
    per-axis fractional width <= radius/(2 pi) holds a sample, coverage
    follows. Otherwise (and for float sets) a probe raster with spacing
    radius/probe_divisor is marked around each sample at the
    correspondingly shrunk radius; uncovered probes are re-checked at
    the full radius. A probe genuinely out of range is a `fail` witness;
    probes uncovered only at the shrunk radius leave the certificate
    `inconclusive`.
    """
    N = tuple(int(v) for v in N)
    d = points.d
    if len(N) != d:
        raise ValueError("degree vector length must match dimension")
    if points.m == 0:
        raise ValueError("cannot certify an empty point set")
    radii = covering_radii(N, d)
    active = [j for j in range(d) if N[j] > 0]
    if not active:
        return CoveringResult(status="pass", witness=None,
                              method="dyadic-boxes",
                              details={"note": "no active axes"})

    if points.encoding == "dyadic":
        # fractional box width 2^-sigma_j <= radius_j / (2 pi)
        sigma = [0] * d
        for j in active:
            sigma[j] = max(0, math.ceil(math.log2(TWO_PI / radii[j])))
        if sum(sigma) <= 26:
            flat = dyadic_box_indices(points.numerators, points.exponent,
                                      sigma)
            occ = np.zeros(1 << sum(sigma), dtype=bool)
            occ[flat] = True
            if occ.all():
                return CoveringResult(
                    status="pass", witness=None, method="dyadic-boxes",
                    details={"sigma": sigma, "cells": int(occ.size)},
                )
        # fall through: occupancy gaps do not disprove coverage

    # probe raster
    counts = [1] * d
    steps = [TWO_PI] * d
    for j in active:
        counts[j] = int(math.ceil(TWO_PI * probe_divisor / radii[j]))
        steps[j] = TWO_PI / counts[j]
    total = math.prod(counts)
    if total > max_cells:
        raise ValueError(
            f"probe raster would need {total} cells (> {max_cells}); "
            "reduce N or use a dyadic point set"
        )
    shrunk = [radii[j] - steps[j] / 2.0 for j in range(d)]
    if any(shrunk[j] <= 0 for j in active):
        raise ValueError("probe_divisor too small for a sound certificate")

    raster = np.zeros(counts, dtype=bool)
    X = np.mod(points.radians(), TWO_PI)
    eps = 1e-9
    for row in X:
        slabs = []  # per-axis list of index slices (with wraparound)
        for j in range(d):
            if N[j] == 0:
                slabs.append([slice(0, 1)])
                continue
            lo = math.ceil((row[j] - shrunk[j]) / steps[j] + eps)
            hi = math.floor((row[j] + shrunk[j]) / steps[j] - eps)
            if hi < lo:
                slabs.append([])
                continue
            pieces = []
            loi, hii = lo % counts[j], hi % counts[j]
            if hi - lo + 1 >= counts[j]:
                pieces.append(slice(0, counts[j]))
            elif loi <= hii:
                pieces.append(slice(loi, hii + 1))
            else:
                pieces.append(slice(loi, counts[j]))
                pieces.append(slice(0, hii + 1))
            slabs.append(pieces)
        if any(len(p) == 0 for p in slabs):
            continue
        # mark the product of the per-axis index windows
        def _mark(idx, depth):
            if depth == d:
                raster[tuple(idx)] = True
                return
            for piece in slabs[depth]:
                _mark(idx + [piece], depth + 1)
        _mark([], 0)

    holes = np.argwhere(~raster)
    if holes.shape[0] == 0:
        return CoveringResult(status="pass", witness=None, method="probe",
                              details={"counts": counts, "cells": total})
    # exact recheck at the full radius
    step_arr = np.array(steps)
    rad_arr = np.array([radii[j] if N[j] > 0 else math.inf
                        for j in range(d)])
    checked = 0
    limit = 100_000
    for start in range(0, min(holes.shape[0], limit), 4096):
        block = holes[start:start + 4096] * step_arr
        diff = np.abs(block[:, None, :] - X[None, :, :])
        diff = np.minimum(diff, TWO_PI - diff)
        within = (diff <= rad_arr[None, None, :] * (1 + 1e-9)).all(axis=2)
        uncovered = ~within.any(axis=1)
        checked += block.shape[0]
        if uncovered.any():
            w = block[int(np.argmax(uncovered))]
            return CoveringResult(
                status="fail", witness=tuple(float(v) for v in w),
                method="probe",
                details={"counts": counts, "holes": int(holes.shape[0])},
            )
    return CoveringResult(
        status="inconclusive", witness=None, method="probe",
        details={"counts": counts, "holes": int(holes.shape[0]),
                 "rechecked": checked},
    )


# ---------------------------------------------------------------------------
# density profiles


def density_profile(points: PointSet, N) -> DensityProfile:
    """Cell occupancy for the partition into boxes of fractional width
    1/(4 max(N_j, 1)) per axis (the half-cells of the dyadic grid of N).

    Dyadic sets with power-of-two cell counts are binned exactly in
    integer arithmetic; float sets are binned by floor division.
    """
    N = tuple(int(v) for v in N)
    d = points.d
    if len(N) != d:
        raise ValueError("degree vector length must match dimension")
    Nbar = [max(v, 1) for v in N]
    shape = tuple(4 * v for v in Nbar)
    m = points.m
    ks = [v.bit_length() - 1 for v in Nbar]
    dyadic_ok = (
        points.encoding == "dyadic"
        and all((1 << k) == v for k, v in zip(ks, Nbar))
    )
    if dyadic_ok:
        s = [k + 2 for k in ks]
        flat = dyadic_box_indices(points.numerators, points.exponent, s)
        counts = np.bincount(flat, minlength=int(np.prod(shape)))
    else:
        U = points.unit_coords()
        flat = np.zeros(m, dtype=np.int64)
        for j in range(d):
            idx = np.floor(U[:, j] * shape[j]).astype(np.int64)
            idx = np.clip(idx, 0, shape[j] - 1)
            flat = flat * shape[j] + idx
        counts = np.bincount(flat, minlength=int(np.prod(shape)))
    return DensityProfile(N=N, shape=shape,
                          counts=counts.reshape(shape), m=m)
