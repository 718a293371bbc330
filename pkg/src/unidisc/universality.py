"""Measurement harness: does one point set discretize every subspace?

The central object is a sweep over the whole collection of
dyadic-rectangle subspaces at total level n: for each level split s and
many random polynomials from T(R(s)), compare the discrete q-norm over
the point set with the continuous norm, and aggregate the worst
constants observed. Companion checks cover the sup-norm two-point
argument (factor-2 bound under the covering condition), the Fejér-kernel
witness that detects large empty boxes, and the de la Vallée Poussin
operator bounds behind the L_q upper estimates.

Ratio conventions: for finite q the per-sample ratio is
[(1/m) sum |f(xi)|^q] / ||f||_q^q (power form); for q = inf it is
max |f(xi)| / ||f||_inf, where the certified lower end of the sup-norm
bracket is used when aggregating minima (C1) and the upper end when
aggregating maxima (C2), so the reported constants are statements about
certified quantities only.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .frequency import FrequencyBox, SubspaceIndex, enumerate_compositions
from .geometry import covering_certificate, density_profile, \
    find_empty_dyadic_box
from .norms import norm, norm_linf_certified
from .pointsets import PointSet, UniversalConstructionParams, \
    random_points, sparse_grid, universal_set
from .trigpoly import TWO_PI, TrigPolynomial, eval_tensors_at, \
    fejer_values, random_poly, vp_values

_EVAL_CHUNK = 16384


def resolve_threads(threads=None) -> int:
    """Worker count: explicit argument, else UNIDISC_THREADS, else 1."""
    if threads is None:
        env = os.environ.get("UNIDISC_THREADS", "").strip()
        threads = int(env) if env else 1
    return max(1, int(threads))


def _run_ordered(worker, jobs, threads: int) -> list:
    if threads <= 1 or len(jobs) <= 1:
        return [worker(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, jobs))


def _sample_kinds(samples: int, kinds) -> list[str]:
    kinds = tuple(kinds)
    for k in kinds:
        if k not in ("gaussian", "spike"):
            raise ValueError(f"unknown sample kind {k!r}")
    if len(kinds) == 1:
        return [kinds[0]] * samples
    n_spike = samples // 5
    return ["gaussian"] * (samples - n_spike) + ["spike"] * n_spike


def _sample_tensors(comp: SubspaceIndex, seed: int, si: int,
                    kind_list) -> tuple[FrequencyBox, np.ndarray]:
    box = comp.box()
    shape = box.shape()
    tensors = np.empty((len(kind_list),) + shape, dtype=np.complex128)
    for k, kind in enumerate(kind_list):
        rng = np.random.default_rng((seed, si, k))
        f = random_poly(box, rng, kind=kind)
        tensors[k] = f.to_box_form().tensor
    return box, tensors


# ---------------------------------------------------------------------------
# sweep


@dataclass(frozen=True)
class SubspaceRecord:
    s: tuple
    samples: int
    min_ratio: float
    max_ratio: float
    argmin: dict
    argmax: dict

    def to_json_dict(self) -> dict:
        return {
            "s": list(self.s),
            "samples": self.samples,
            "min_ratio": self.min_ratio,
            "max_ratio": self.max_ratio,
            "argmin": self.argmin,
            "argmax": self.argmax,
        }


@dataclass(eq=False)
class UniversalityReport:
    n: int
    d: int
    q: float
    m: int
    samples: int
    seed: int
    kinds: tuple
    points_info: dict
    C1_hat: float
    C2_hat: float
    records: list

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "q": "inf" if self.q == math.inf else self.q,
            "m": self.m,
            "samples": self.samples,
            "seed": self.seed,
            "kinds": list(self.kinds),
            "points": self.points_info,
            "C1_hat": self.C1_hat,
            "C2_hat": self.C2_hat,
            "records": [r.to_json_dict() for r in self.records],
        }

    def csv_rows(self) -> list[list]:
        rows = [["s", "samples", "min_ratio", "max_ratio",
                 "argmin_sample", "argmin_kind",
                 "argmax_sample", "argmax_kind"]]
        for r in self.records:
            rows.append([
                "|".join(str(v) for v in r.s), r.samples,
                repr(r.min_ratio), repr(r.max_ratio),
                r.argmin["sample"], r.argmin["kind"],
                r.argmax["sample"], r.argmax["kind"],
            ])
        return rows


def _continuous_denominators(tensors, box: FrequencyBox, q,
                             delta: float, oversample: int):
    """Per-sample continuous-norm data.

    Finite q: array of ||f||_q^q. q = inf: (lower, upper) bracket arrays.
    """
    B = tensors.shape[0]
    if q == math.inf:
        lo = np.empty(B)
        hi = np.empty(B)
        for k in range(B):
            f = TrigPolynomial.from_box(box, tensors[k])
            res = norm_linf_certified(f, delta=delta)
            lo[k] = res.value
            hi[k] = res.upper
        return lo, hi
    if float(q) == 2.0:
        axes = tuple(range(1, tensors.ndim))
        return (np.abs(tensors) ** 2).sum(axis=axes)
    powers = np.empty(B)
    for k in range(B):
        f = TrigPolynomial.from_box(box, tensors[k])
        powers[k] = norm(f, q, oversample=oversample).value ** float(q)
    return powers


def _discrete_stats(tensors, box: FrequencyBox, X, q):
    """Per-sample discrete statistics over the full point set:
    mean of |f|^q for finite q, max of |f| for q = inf."""
    B = tensors.shape[0]
    m = X.shape[0]
    acc = np.zeros(B)
    for lo in range(0, m, _EVAL_CHUNK):
        vals = np.abs(eval_tensors_at(tensors, box, X[lo:lo + _EVAL_CHUNK]))
        if q == math.inf:
            np.maximum(acc, vals.max(axis=1), out=acc)
        else:
            acc += (vals ** float(q)).sum(axis=1)
    return acc if q == math.inf else acc / m


def sweep(points: PointSet, n: int, d: int, q, samples: int = 100,
          seed: int = 0, kinds=("gaussian", "spike"), subspace=None,
          threads=None, delta: float = 0.25, oversample: int = 4,
          points_info: dict | None = None) -> UniversalityReport:
    """Measure discretization constants over the whole collection.

    For every level split s with |s| = n (or the single `subspace` if
    given), draws `samples` random polynomials from T(R(s)) and records
    the extreme discrete/continuous ratios. Sampling is deterministic
    given `seed`: each (subspace, sample) pair has its own derived RNG
    stream, so results are independent of the thread count.
    """
    if points.domain != "torus2pi":
        points = points.to_torus()
    if points.d != d:
        raise ValueError(f"points have d={points.d}, sweep asked for {d}")
    qv = math.inf if q == math.inf else float(q)
    if qv != math.inf and qv < 1:
        raise ValueError("q must be >= 1 or math.inf")
    if subspace is not None:
        comps = [SubspaceIndex(tuple(int(v) for v in subspace))]
        if comps[0].n != n or comps[0].d != d:
            raise ValueError("subspace inconsistent with (n, d)")
    else:
        comps = enumerate_compositions(n, d)
    kind_list = _sample_kinds(samples, kinds)
    X = points.coords()

    def worker(job):
        si, comp = job
        box, tensors = _sample_tensors(comp, seed, si, kind_list)
        denom = _continuous_denominators(tensors, box, qv, delta, oversample)
        stat = _discrete_stats(tensors, box, X, qv)
        if qv == math.inf:
            low, up = denom
            r_lo = stat / low
            r_hi = stat / up
        else:
            r_lo = r_hi = stat / denom
        kmin = int(np.argmin(r_lo))
        kmax = int(np.argmax(r_hi))
        return SubspaceRecord(
            s=comp.s, samples=samples,
            min_ratio=float(r_lo[kmin]), max_ratio=float(r_hi[kmax]),
            argmin={"sample": kmin, "kind": kind_list[kmin]},
            argmax={"sample": kmax, "kind": kind_list[kmax]},
        )

    records = _run_ordered(worker, list(enumerate(comps)),
                           resolve_threads(threads))
    info = dict(points_info) if points_info else {}
    info.setdefault("m", points.m)
    info.setdefault("encoding", points.encoding)
    return UniversalityReport(
        n=n, d=d, q=qv, m=points.m, samples=samples, seed=seed,
        kinds=tuple(kinds), points_info=info,
        C1_hat=float(min(r.min_ratio for r in records)),
        C2_hat=float(max(r.max_ratio for r in records)),
        records=records,
    )


# ---------------------------------------------------------------------------
# sup-norm two-point argument: covering => max >= lower-bracket / 2


def max_vs_sup_check(points: PointSet, n: int, d: int, samples: int = 250,
                     seed: int = 0, factor: float = 0.5,
                     kinds=("gaussian", "spike"), delta: float = 0.25,
                     threads=None, tol: float = 1e-9) -> dict:
    """For every subspace: certify the covering condition, then verify
    max_nu |f(xi_nu)| >= factor * (certified lower sup-norm bound) on
    random samples.

    The max scan runs over a seed-shuffled point order and stops early
    for a sample once its threshold is reached, which keeps the cost of
    large point sets near one chunk per subspace.
    """
    if points.domain != "torus2pi":
        points = points.to_torus()
    comps = enumerate_compositions(n, d)
    kind_list = _sample_kinds(samples, kinds)
    perm = np.random.default_rng((seed, 0xC0FFEE)).permutation(points.m)
    X = points.coords()[perm]

    def worker(job):
        si, comp = job
        N = comp.box().N
        cov = covering_certificate(points, N)
        box, tensors = _sample_tensors(comp, seed, si, kind_list)
        low = np.empty(samples)
        for k in range(samples):
            f = TrigPolynomial.from_box(box, tensors[k])
            low[k] = norm_linf_certified(f, delta=delta).value
        thresh = factor * low - tol
        running = np.zeros(samples)
        active = np.ones(samples, dtype=bool)
        scanned = 0
        for lo in range(0, X.shape[0], _EVAL_CHUNK):
            idx = np.nonzero(active)[0]
            vals = np.abs(
                eval_tensors_at(tensors[idx], box, X[lo:lo + _EVAL_CHUNK])
            )
            running[idx] = np.maximum(running[idx], vals.max(axis=1))
            active[idx] = running[idx] < thresh[idx]
            scanned = lo + min(_EVAL_CHUNK, X.shape[0] - lo)
            if not active.any():
                break
        bad = np.nonzero(running < thresh)[0]
        full = scanned >= X.shape[0]
        return {
            "s": list(comp.s),
            "covering": cov.status,
            "violations": int(bad.size),
            "bad_samples": [int(v) for v in bad[:8]],
            "scanned_points": int(scanned),
            "worst_ratio": float((running / low).min()) if full else None,
        }

    per_s = _run_ordered(worker, list(enumerate(comps)),
                         resolve_threads(threads))
    return {
        "n": n, "d": d, "m": points.m, "samples": samples,
        "factor": factor,
        "covering_all_pass": all(r["covering"] == "pass" for r in per_s),
        "violations": int(sum(r["violations"] for r in per_s)),
        "per_subspace": per_s,
    }


# ---------------------------------------------------------------------------
# Fejér witness for empty boxes


@dataclass(frozen=True)
class WitnessResult:
    found: bool
    s: tuple | None = None
    margin: int | None = None
    u: tuple | None = None
    v: tuple | None = None
    center: tuple | None = None
    peak: float | None = None
    point_max: float | None = None
    ratio: float | None = None

    def to_json_dict(self) -> dict:
        out = {"found": self.found}
        if self.found:
            out.update({
                "s": list(self.s), "margin": self.margin,
                "u": list(self.u), "v": list(self.v),
                "center": list(self.center), "peak": self.peak,
                "point_max": self.point_max, "ratio": self.ratio,
            })
        return out


def _empty_box_any(points: PointSet, shape) -> tuple | None:
    if points.encoding == "dyadic":
        return find_empty_dyadic_box(points, shape)
    s = tuple(int(v) for v in shape)
    L = sum(s)
    if L > 26:
        raise ValueError(f"total level {L} too fine to enumerate")
    U = points.unit_coords()
    flat = np.zeros(points.m, dtype=np.int64)
    for j, sj in enumerate(s):
        idx = np.floor(U[:, j] * (1 << sj)).astype(np.int64)
        idx = np.clip(idx, 0, (1 << sj) - 1)
        flat = (flat << sj) | idx
    occ = np.zeros(1 << L, dtype=bool)
    occ[flat] = True
    if occ.all():
        return None
    b = int(np.argmin(occ))
    out = []
    for sj in reversed(s):
        out.append(b & ((1 << sj) - 1))
        b >>= sj
    return tuple(out[::-1])


def fejer_witness(points: PointSet, n: int, a_min: int = 2) -> WitnessResult:
    """Hunt for a level split s (|s| = n) whose dyadic grid has an empty
    box with per-axis side 2^(a - s_j), a >= a_min, and exhibit the
    concentrated polynomial that breaks sup-norm discretization there.

    Searches margins a from the largest possible downward, so the
    reported witness has the deepest clearance available. On success the
    witness polynomial is the tensor Fejér kernel with per-axis peak
    2^s_j translated to the box center w; its peak value is 2^n while
    every sample point sits outside the box, which forces
    max_nu |f(xi_nu)| / f(w) <= 2^(-2a).
    """
    d = points.d
    best = None  # (margin, si, s, box)
    for si, comp in enumerate(enumerate_compositions(n, d)):
        s = comp.s
        top = min(s)
        if top < a_min:
            continue
        for a in range(top, a_min - 1, -1):
            if best is not None and a <= best[0]:
                break
            shape = tuple(sj - a for sj in s)
            box = _empty_box_any(points, shape)
            if box is not None:
                best = (a, si, s, box)
                break
    if best is None:
        return WitnessResult(found=False)
    a, _, s, box = best
    shape = tuple(sj - a for sj in s)
    u = tuple(b / float(1 << sj) for b, sj in zip(box, shape))
    v = tuple((b + 1) / float(1 << sj) for b, sj in zip(box, shape))
    center = tuple((b + 0.5) / float(1 << sj) for b, sj in zip(box, shape))
    w = np.array(center) * TWO_PI
    X = points.radians()
    vals = np.ones(points.m)
    peak = 1.0
    for j, sj in enumerate(s):
        nj = 1 << sj
        vals *= fejer_values(nj, X[:, j] - w[j])
        peak *= nj
    point_max = float(vals.max()) if points.m else 0.0
    return WitnessResult(
        found=True, s=s, margin=a, u=u, v=v, center=center,
        peak=float(peak), point_max=point_max,
        ratio=float(point_max / peak),
    )


# ---------------------------------------------------------------------------
# de la Vallée Poussin operator checks


def _vp_coeff_tensor(N) -> np.ndarray:
    """Tensor of de la Vallée Poussin coefficients, axis j covering
    k = -(2 N_j - 1) .. 2 N_j - 1."""
    parts = []
    for nj in N:
        ks = np.abs(np.arange(-(2 * nj - 1), 2 * nj, dtype=np.float64))
        parts.append(np.where(ks <= nj - 1, 1.0, 2.0 - ks / nj))
    out = parts[0]
    for p in parts[1:]:
        out = np.multiply.outer(out, p)
    return out


def kernel_sum_check(points: PointSet, N, extra_samples: int = 2048,
                     seed: int = 0, point_cap: int = 4096) -> dict:
    """sup_x (1/(b+ v(N))) sum_nu |V_N(x - xi_nu)| over a sampled x-set.

    The x-set is the point set itself (up to `point_cap`) plus uniform
    random draws; b+ is the maximal cell count of the density profile.
    """
    N = tuple(int(v) for v in N)
    if any(v < 1 for v in N):
        raise ValueError("kernel checks need N_j >= 1")
    pts = points.to_torus()
    P = pts.coords()
    prof = density_profile(pts, N)
    v = int(np.prod([max(nj, 1) for nj in N], dtype=np.int64))
    rng = np.random.default_rng((seed, 0x5EED))
    X = np.vstack([
        P[:point_cap],
        rng.uniform(0.0, TWO_PI, size=(extra_samples, pts.d)),
    ])
    sup = 0.0
    chunk = max(1, (1 << 22) // max(1, pts.m))
    for lo in range(0, X.shape[0], chunk):
        xc = X[lo:lo + chunk]
        vals = np.ones((xc.shape[0], pts.m))
        for j, nj in enumerate(N):
            vals *= vp_values(nj, xc[:, j][:, None] - P[:, j][None, :])
        np.abs(vals, out=vals)
        sup = max(sup, float(vals.sum(axis=1).max()))
    return {
        "sup_normalized": sup / (prof.b_plus * v),
        "b_plus": prof.b_plus,
        "degree_volume": v,
        "m": pts.m,
        "x_count": int(X.shape[0]),
    }


def vp_operator_check(points: PointSet, N, q, trials: int = 8,
                      seed: int = 0) -> dict:
    """Ratio of ||(1/m) sum_nu a_nu V_N(. - xi_nu)||_q to
    (b+ v(N)/m)^(1-1/q) * (mean |a|^q)^(1/q), over random coefficient
    vectors.

    The q = inf norm uses the certified upper bracket, so reported
    ratios never understate the operator.
    """
    N = tuple(int(v) for v in N)
    if any(v < 1 for v in N):
        raise ValueError("kernel checks need N_j >= 1")
    pts = points.to_torus()
    P = pts.coords()
    m = pts.m
    d = pts.d
    prof = density_profile(pts, N)
    v = int(np.prod(N, dtype=np.int64))
    qv = math.inf if q == math.inf else float(q)
    Vhat = _vp_coeff_tensor(N)
    box = FrequencyBox(tuple(2 * nj - 1 for nj in N))
    E = [
        np.exp(-1j * np.outer(P[:, j], box.axis_frequencies(j)))
        for j in range(d)
    ]
    ratios = []
    for trial in range(trials):
        rng = np.random.default_rng((seed, trial))
        a = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) \
            * math.sqrt(0.5)
        if d == 1:
            S = E[0].T @ a
        elif d == 2:
            S = (E[0] * a[:, None]).T @ E[1]
        elif d == 3:
            S = np.einsum("vk,vl,vp->klp", E[0] * a[:, None], E[1], E[2])
        else:
            raise ValueError("operator check supports d <= 3")
        g = TrigPolynomial.from_box(box, Vhat * S / m)
        res = norm(g, qv, delta=0.1)
        lhs = res.upper if qv == math.inf else res.value
        if qv == math.inf:
            anorm = float(np.abs(a).max())
            expo = 1.0
        else:
            anorm = float(np.mean(np.abs(a) ** qv) ** (1.0 / qv))
            expo = 1.0 - 1.0 / qv
        rhs = (prof.b_plus * v / m) ** expo * anorm
        ratios.append(float(lhs / rhs))
    return {
        "max_ratio": max(ratios),
        "ratios": ratios,
        "b_plus": prof.b_plus,
        "degree_volume": v,
        "m": m,
    }


def one_sided_check(points: PointSet, N, q, trials: int = 16,
                    seed: int = 0) -> dict:
    """sup over random f in T(Pi(N)) of discrete/continuous q-norm.

    Reports (does not enforce) whether m >= dim(Pi(N)), the cardinality
    threshold under which the one-sided bound is claimed.
    """
    N = tuple(int(v) for v in N)
    box = FrequencyBox(N)
    pts = points.to_torus()
    X = pts.coords()
    qv = math.inf if q == math.inf else float(q)
    sup = 0.0
    for trial in range(trials):
        rng = np.random.default_rng((seed, trial))
        f = random_poly(box, rng)
        vals = np.abs(eval_tensors_at(f.tensor[None], box, X)[0])
        if qv == math.inf:
            disc = float(vals.max())
            cont = norm_linf_certified(f).value  # lower end: conservative
        else:
            disc = float(np.mean(vals**qv) ** (1.0 / qv))
            cont = norm(f, qv).value
        sup = max(sup, disc / cont)
    prof = density_profile(pts, N)
    return {
        "sup_ratio": sup,
        "b_plus": prof.b_plus,
        "dim": box.dim,
        "m": pts.m,
        "m_ge_dim": pts.m >= box.dim,
        "trials": trials,
    }


# ---------------------------------------------------------------------------
# cell-snap stability


def snap_compare(points: PointSet, s, margin: int, q, trials: int = 8,
                 seed: int = 0, axis: int = 0) -> dict:
    """Move every point to the lower face of its cell along one axis and
    measure the change in the discrete q-norm power sum.

    Cells have per-axis width pi/(2 N_j) with N_j = 2^(s_j + margin - 2);
    the snap distance along `axis` is below that width, and the mean of
    | |f(xi)|^q - |f(gamma)|^q | over random f of per-axis degree
    2^(s_j) is reported normalized by 2^(2 - margin) * ||f||_q^q (the
    cell-width-to-degree factor), which should stay bounded by a fixed
    constant as the margin grows.
    """
    s = tuple(int(v) for v in s)
    if margin < 2:
        raise ValueError("margin must be at least 2")
    qv = float(q)
    if not (qv >= 1.0 and math.isfinite(qv)):
        raise ValueError("snap comparison needs finite q >= 1")
    pts = points.to_torus()
    d = pts.d
    if not (0 <= axis < d):
        raise ValueError(f"axis must lie in [0, {d})")
    N = tuple(1 << (sj + margin - 2) for sj in s)
    prof = density_profile(pts, N)
    X = pts.coords()
    G = X.copy()
    width = math.pi / (2.0 * N[axis])
    G[:, axis] = np.floor(G[:, axis] / width) * width
    box = FrequencyBox(tuple(1 << sj for sj in s))
    factor = 2.0 ** (2 - margin)
    values = []
    for trial in range(trials):
        rng = np.random.default_rng((seed, trial))
        f = random_poly(box, rng)
        v_orig = np.abs(eval_tensors_at(f.tensor[None], box, X)[0]) ** qv
        v_snap = np.abs(eval_tensors_at(f.tensor[None], box, G)[0]) ** qv
        lhs = float(np.mean(np.abs(v_orig - v_snap)))
        denom = norm(f, qv).value ** qv
        values.append(lhs / (factor * denom))
    return {
        "max_normalized": max(values),
        "values": values,
        "factor": factor,
        "b_plus": prof.b_plus,
        "b_minus": prof.b_minus,
        "axis": axis,
        "N": list(N),
    }


# ---------------------------------------------------------------------------
# construction comparison and margin search


def compare_constructions(n: int, d: int, q, samples: int = 40,
                          seed: int = 0, a_dq: int = 4,
                          threads=None) -> dict:
    """Sweep the universal net, the all-compositions grid union, and an
    i.i.d. uniform baseline of the net's cardinality, side by side."""
    qv = math.inf if q == math.inf else float(q)
    res = universal_set(UniversalConstructionParams(n=n, d=d, q=qv,
                                                    a_dq=a_dq))
    rep_net = sweep(res.points, n, d, qv, samples=samples, seed=seed,
                    threads=threads, points_info=res.describe())
    sg = sparse_grid(n, d).to_torus()
    rep_sg = sweep(sg, n, d, qv, samples=samples, seed=seed,
                   threads=threads,
                   points_info={"family": "sparse_grid", "n": n, "d": d})
    iid = random_points(res.m, d, seed=(seed, 0x1D1D), domain="torus2pi")
    rep_iid = sweep(iid, n, d, qv, samples=samples, seed=seed,
                    threads=threads,
                    points_info={"family": "iid_uniform", "seed": seed})
    rows = []
    for name, rep in (("net", rep_net), ("sparse_grid", rep_sg),
                      ("iid_uniform", rep_iid)):
        rows.append({
            "family": name, "m": rep.m,
            "C1_hat": rep.C1_hat, "C2_hat": rep.C2_hat,
        })
    return {
        "n": n, "d": d, "q": "inf" if qv == math.inf else qv,
        "samples": samples, "seed": seed,
        "rows": rows,
        "reports": {"net": rep_net, "sparse_grid": rep_sg,
                    "iid_uniform": rep_iid},
    }


def search_margin(n: int, d: int, q, target: float = 0.5,
                  samples: int = 30, seed: int = 0,
                  candidates=(2, 3, 4, 5, 6), threads=None) -> tuple:
    """Smallest per-axis margin whose universal set reaches
    C1_hat >= target on a sweep; returns (margin or None, rows)."""
    qv = math.inf if q == math.inf else float(q)
    rows = []
    for a in candidates:
        params = UniversalConstructionParams(n=n, d=d, q=qv, a_dq=a)
        try:
            res = universal_set(params)
        except ValueError as exc:
            rows.append({"a": int(a), "error": str(exc)})
            continue
        rep = sweep(res.points, n, d, qv, samples=samples, seed=seed,
                    threads=threads, points_info=res.describe())
        rows.append({
            "a": int(a), "m": res.m, "r": res.r,
            "C1_hat": rep.C1_hat, "C2_hat": rep.C2_hat,
        })
        if rep.C1_hat >= target:
            return int(a), rows
    return None, rows
