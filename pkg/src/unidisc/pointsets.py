"""Point sets on the unit cube and the 2pi torus.

Provides the families used throughout the package:

* digital nets in base 2 built from GF(2) generator matrices, with
  exact verification of the equidistribution parameter t;
* tensor-product grids associated with a degree vector, in the
  odd-denominator ("interpolatory") and dyadic-cell flavours;
* the union of dyadic-cell grids over all level compositions, after
  removing duplicates;
* scaled digital nets whose resolution is chosen so that a single set
  discretizes every subspace of total degree 2^n at once;
* i.i.d. uniform points for baseline comparisons.

Dyadic sets are stored as integer numerators with a shared power-of-two
denominator, so all combinatorial checks (net verification, box
occupancy) are exact integer arithmetic.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .frequency import FrequencyBox, SubspaceIndex, enumerate_compositions
from .trigpoly import TWO_PI

MAX_DIMENSION = 8
MAX_RESOLUTION = 20


# ---------------------------------------------------------------------------
# point-set container


@dataclass(eq=False)
class PointSet:
    """A finite multiset of points, dyadic-rational or floating point.

    Parameters
    ----------
    d : int
        Ambient dimension.
    domain : str
        Either ``"unit"`` for [0, 1)^d or ``"torus2pi"`` for [0, 2pi)^d.
    numerators : ndarray or None
        Shape (m, d) int64; coordinates are numerators / 2**exponent
        (times 2pi on the torus). Exactly one of `numerators` / `floats`
        must be given.
    exponent : int or None
        Shared dyadic exponent for `numerators`.
    floats : ndarray or None
        Shape (m, d) float64 coordinates in the declared domain.
    """

    d: int
    domain: str = "unit"
    numerators: np.ndarray | None = None
    exponent: int | None = None
    floats: np.ndarray | None = None

    def __post_init__(self):
        if self.domain not in ("unit", "torus2pi"):
            raise ValueError(f"unknown domain {self.domain!r}")
        dyadic = self.numerators is not None
        if dyadic == (self.floats is not None):
            raise ValueError("give exactly one of numerators or floats")
        if dyadic:
            if self.exponent is None or not (0 <= self.exponent <= 62):
                raise ValueError("dyadic sets need an exponent in [0, 62]")
            arr = np.ascontiguousarray(self.numerators, dtype=np.int64)
            if arr.ndim != 2 or arr.shape[1] != self.d:
                raise ValueError(f"numerators must have shape (m, {self.d})")
            if arr.size and (arr.min() < 0 or arr.max() >= (1 << self.exponent)):
                raise ValueError("numerators out of range [0, 2^exponent)")
            self.numerators = arr
        else:
            arr = np.ascontiguousarray(self.floats, dtype=np.float64)
            if arr.ndim != 2 or arr.shape[1] != self.d:
                raise ValueError(f"floats must have shape (m, {self.d})")
            width = 1.0 if self.domain == "unit" else TWO_PI
            if arr.size and (arr.min() < 0.0 or arr.max() >= width):
                raise ValueError(f"coordinates must lie in [0, {width})")
            self.floats = arr

    # -- basic queries ------------------------------------------------------

    @property
    def m(self) -> int:
        arr = self.numerators if self.numerators is not None else self.floats
        return int(arr.shape[0])

    @property
    def encoding(self) -> str:
        return "dyadic" if self.numerators is not None else "float"

    def coords(self) -> np.ndarray:
        """Float coordinates in the declared domain, shape (m, d)."""
        if self.floats is not None:
            return self.floats
        scale = (1.0 if self.domain == "unit" else TWO_PI) / float(
            1 << self.exponent
        )
        return self.numerators * scale

    def radians(self) -> np.ndarray:
        """Coordinates on the 2pi torus regardless of declared domain."""
        x = self.coords()
        return x * TWO_PI if self.domain == "unit" else x

    def unit_coords(self) -> np.ndarray:
        """Coordinates in [0, 1)^d regardless of declared domain."""
        x = self.coords()
        return x / TWO_PI if self.domain == "torus2pi" else x

    # -- conversions --------------------------------------------------------

    def to_torus(self) -> "PointSet":
        if self.domain == "torus2pi":
            return self
        if self.numerators is not None:
            return PointSet(d=self.d, domain="torus2pi",
                            numerators=self.numerators,
                            exponent=self.exponent)
        return PointSet(d=self.d, domain="torus2pi",
                        floats=self.floats * TWO_PI)

    def to_unit(self) -> "PointSet":
        if self.domain == "unit":
            return self
        if self.numerators is not None:
            return PointSet(d=self.d, domain="unit",
                            numerators=self.numerators,
                            exponent=self.exponent)
        return PointSet(d=self.d, domain="unit", floats=self.floats / TWO_PI)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        out = {
            "d": self.d,
            "m": self.m,
            "domain": self.domain,
            "encoding": self.encoding,
        }
        if self.numerators is not None:
            out["r"] = self.exponent
            out["points"] = [[int(v) for v in row] for row in self.numerators]
        else:
            out["points"] = [[float(v) for v in row] for row in self.floats]
        return out

    @classmethod
    def from_json_dict(cls, obj: dict) -> "PointSet":
        d = int(obj["d"])
        domain = obj.get("domain", "unit")
        if obj.get("encoding", "float") == "dyadic":
            nums = np.array(obj["points"], dtype=np.int64).reshape(-1, d)
            return cls(d=d, domain=domain, numerators=nums,
                       exponent=int(obj["r"]))
        pts = np.array(obj["points"], dtype=np.float64).reshape(-1, d)
        return cls(d=d, domain=domain, floats=pts)

    def save_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, sort_keys=True, indent=2)
            fh.write("\n")

    def save_csv(self, path) -> None:
        """One point per row, float coordinates in the declared domain."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            for row in self.coords():
                writer.writerow([repr(float(v)) for v in row])


def load_pointset(path) -> PointSet:
    with open(path) as fh:
        return PointSet.from_json_dict(json.load(fh))


def scale_to_torus(points: PointSet) -> PointSet:
    return points.to_torus()


def random_points(m: int, d: int, seed, domain: str = "unit",
                  encoding: str = "float", r: int | None = None) -> PointSet:
    """i.i.d. uniform points; dyadic encoding snaps to resolution r."""
    rng = np.random.default_rng(seed)
    if encoding == "dyadic":
        if r is None:
            raise ValueError("dyadic encoding requires a resolution r")
        nums = rng.integers(0, 1 << r, size=(m, d), dtype=np.int64)
        ps = PointSet(d=d, domain="unit", numerators=nums, exponent=r)
    elif encoding == "float":
        ps = PointSet(d=d, domain="unit",
                      floats=rng.random((m, d), dtype=np.float64))
    else:
        raise ValueError(f"unknown encoding {encoding!r}")
    return ps.to_torus() if domain == "torus2pi" else ps


# ---------------------------------------------------------------------------
# digital nets in base 2


@dataclass(frozen=True)
class DigitalNet:
    """A base-2 digital construction: d generator matrices over GF(2).

    `matrices` has shape (d, r, r) with 0/1 entries; row a of matrix j
    produces output digit a+1 (weight 2^-(a+1)) of coordinate j, column
    c consumes input bit c of the point index.
    """

    d: int
    r: int
    matrices: np.ndarray
    declared_t: int | None = None

    def __post_init__(self):
        M = np.ascontiguousarray(self.matrices, dtype=np.uint8)
        if M.shape != (self.d, self.r, self.r):
            raise ValueError(
                f"matrices must have shape ({self.d}, {self.r}, {self.r})"
            )
        if M.size and M.max() > 1:
            raise ValueError("matrix entries must be 0 or 1")
        object.__setattr__(self, "matrices", M)

    @property
    def m(self) -> int:
        return 1 << self.r


def _sobol_direction_matrix(r: int, s: int, a: int, m_init) -> np.ndarray:
    """Generator matrix from a primitive-polynomial direction recurrence.

    `s` is the polynomial degree, `a` packs its middle coefficients
    (highest first), and `m_init` holds the first s odd direction
    integers m_1..m_s with m_k < 2^k.
    """
    m = list(m_init)
    for k in range(len(m) + 1, r + 1):
        val = m[k - s - 1] ^ (m[k - s - 1] << s)
        for i in range(1, s):
            if (a >> (s - 1 - i)) & 1:
                val ^= m[k - i - 1] << i
        m.append(val)
    M = np.zeros((r, r), dtype=np.uint8)
    for c in range(r):
        mk = m[c]
        for row in range(c + 1):
            M[row, c] = (mk >> (c - row)) & 1
    return M


# (degree, coefficient bits, initial direction integers) per coordinate;
# the first coordinate uses the identity (van der Corput) matrix
_DIRECTION_TABLE = {
    2: (1, 0, [1]),
    3: (2, 1, [1, 3]),
    4: (3, 1, [1, 3, 1]),
    5: (3, 2, [1, 1, 1]),
    6: (4, 1, [1, 1, 3, 3]),
    7: (4, 4, [1, 3, 5, 13]),
}


def default_generator_matrices(d: int, r: int) -> DigitalNet:
    """Built-in generator matrices for 1 <= d <= 8, 1 <= r <= 20.

    Coordinate 0 reverses the index bits; the remaining coordinates use
    a low-discrepancy direction-number recurrence (identity in the
    second coordinate, so d = 2 is the classical bit-reversal pair).
    """
    if not (1 <= d <= MAX_DIMENSION):
        raise ValueError(f"d must lie in [1, {MAX_DIMENSION}], got {d}")
    if not (1 <= r <= MAX_RESOLUTION):
        raise ValueError(f"r must lie in [1, {MAX_RESOLUTION}], got {r}")
    eye = np.eye(r, dtype=np.uint8)
    if d == 1:
        mats = [eye]
    else:
        mats = [eye[::-1].copy()]
        for dim in range(1, d):
            if dim == 1:
                mats.append(eye)
            else:
                s, a, m_init = _DIRECTION_TABLE[dim]
                mats.append(_sobol_direction_matrix(r, s, a, m_init))
    declared = 0 if d <= 3 else None
    return DigitalNet(d=d, r=r, matrices=np.stack(mats),
                      declared_t=declared)


def net_points(net: DigitalNet) -> PointSet:
    """All 2^r points of a digital net, as a dyadic unit-cube set.

    Raises if the matrices generate duplicate points (rank deficiency).
    """
    r, d = net.r, net.d
    # column value tables: v[j, c] = integer numerator contributed by
    # input bit c to coordinate j
    weights = (np.int64(1) << np.arange(r - 1, -1, -1)).reshape(r, 1)
    colvals = (net.matrices.astype(np.int64) * weights).sum(axis=1)  # (d, r)
    idx = np.arange(1 << r, dtype=np.int64)
    nums = np.zeros((1 << r, d), dtype=np.int64)
    for c in range(r):
        bit = (idx >> c) & 1
        nums ^= bit[:, None] * colvals[:, c][None, :]
    if np.unique(nums, axis=0).shape[0] != nums.shape[0]:
        raise ValueError("generator matrices produce duplicate points")
    return PointSet(d=d, domain="unit", numerators=nums, exponent=r)


# ---------------------------------------------------------------------------
# net verification


@dataclass(frozen=True)
class NetCheck:
    ok: bool
    t: int
    r: int
    witness: dict | None = None


def dyadic_box_indices(nums: np.ndarray, exponent: int, s) -> np.ndarray:
    """Flat dyadic-box index per point for per-axis levels s (lex order)."""
    flat = np.zeros(nums.shape[0], dtype=np.int64)
    for j, sj in enumerate(s):
        if sj <= exponent:
            a = nums[:, j] >> (exponent - sj)
        else:
            a = nums[:, j] << (sj - exponent)
        flat = (flat << sj) | a
    return flat


def verify_net(points: PointSet, t: int) -> NetCheck:
    """Exact check that every dyadic box of volume 2^(t-r) holds 2^t points.

    `points` must be dyadic with cardinality a power of two (m = 2^r).
    Runs over all level compositions of r - t; on failure the witness
    records the first offending box in lexicographic order.
    """
    if points.encoding != "dyadic":
        raise ValueError("net verification requires dyadic points")
    m = points.m
    r = m.bit_length() - 1
    if m != (1 << r):
        raise ValueError(f"point count {m} is not a power of two")
    if not (0 <= t <= r):
        raise ValueError(f"t must lie in [0, {r}], got {t}")
    nums = points.numerators
    expected = 1 << t
    L = r - t
    for comp in enumerate_compositions(L, points.d):
        s = comp.s
        flat = dyadic_box_indices(nums, points.exponent, s)
        counts = np.bincount(flat, minlength=1 << L)
        bad = counts != expected
        if bad.any():
            b = int(np.argmax(bad))
            # unpack the flat index back into per-axis box positions
            a = []
            rem = b
            for sj in reversed(s):
                a.append(rem & ((1 << sj) - 1))
                rem >>= sj
            a = a[::-1]
            witness = {
                "s": list(s),
                "box": [int(v) for v in a],
                "count": int(counts[b]),
                "expected": expected,
                "u": [aj / float(1 << sj) for aj, sj in zip(a, s)],
                "v": [(aj + 1) / float(1 << sj) for aj, sj in zip(a, s)],
            }
            return NetCheck(ok=False, t=t, r=r, witness=witness)
    return NetCheck(ok=True, t=t, r=r)


def minimal_t(points: PointSet) -> int:
    """Smallest t for which `verify_net` passes; r for a degenerate set."""
    m = points.m
    r = m.bit_length() - 1
    for t in range(r + 1):
        if verify_net(points, t).ok:
            return t
    return r


# ---------------------------------------------------------------------------
# tensor-product grids


@dataclass(eq=False)
class GridSpec:
    """A tensor grid tied to a degree vector N.

    kind "P":      per-axis nodes 2*pi*i/(2*N_j+1), i < 2*N_j+1
                   (interpolatory: exact L2 identity for degree N_j);
    kind "Pprime": per-axis nodes pi*i/(2*max(N_j,1)), i < 4*max(N_j,1)
                   (dyadic halves of cells of width pi/(2*N_j); axes with
                   N_j = 0 contribute four coincident zero nodes so the
                   count is always prod_j 4*max(N_j, 1)).
    """

    N: tuple
    kind: str
    points: PointSet
    shape: tuple

    @property
    def m(self) -> int:
        return self.points.m


def _mesh_numerators(axis_vals: list[np.ndarray]) -> np.ndarray:
    grids = np.meshgrid(*axis_vals, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def tensor_grid(N, kind: str = "P") -> GridSpec:
    """Tensor grid for a degree vector, on the 2pi torus."""
    N = tuple(int(v) for v in N)
    if any(v < 0 for v in N):
        raise ValueError("degrees must be nonnegative")
    d = len(N)
    if kind == "P":
        shape = tuple(2 * v + 1 for v in N)
        axes = [np.arange(M) * (TWO_PI / M) for M in shape]
        pts = PointSet(d=d, domain="torus2pi",
                       floats=_mesh_numerators(axes))
    elif kind == "Pprime":
        Nbar = [max(v, 1) for v in N]
        shape = tuple(4 * v for v in Nbar)
        ks = [v.bit_length() - 1 if v == (1 << (v.bit_length() - 1)) else None
              for v in Nbar]
        if all(k is not None for k in ks):
            # powers of two: exact dyadic representation
            exp = max(k + 2 for k in ks)
            axes = []
            for k, v, M in zip(ks, N, shape):
                idx = np.arange(M, dtype=np.int64)
                if v == 0:
                    axes.append(np.zeros(M, dtype=np.int64))
                else:
                    axes.append(idx << (exp - (k + 2)))
            pts = PointSet(d=d, domain="torus2pi",
                           numerators=_mesh_numerators(axes), exponent=exp)
        else:
            axes = []
            for v, M, nb in zip(N, shape, Nbar):
                if v == 0:
                    axes.append(np.zeros(M))
                else:
                    axes.append(np.arange(M) * (math.pi / (2 * nb)))
            pts = PointSet(d=d, domain="torus2pi",
                           floats=_mesh_numerators(axes))
    else:
        raise ValueError(f"unknown grid kind {kind!r}")
    return GridSpec(N=N, kind=kind, points=pts, shape=shape)


def sparse_grid(n: int, d: int) -> PointSet:
    """Union of the dyadic-cell grids of all subspaces at total level n.

    For every composition s of n, takes the grid of kind "Pprime" for
    the degrees (2^s_1, ..., 2^s_d) and merges the node sets, removing
    duplicates. Returned as a dyadic unit-cube set at exponent n + 2.
    """
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    exp = n + 2
    blocks = []
    for comp in enumerate_compositions(n, d):
        axes = []
        for sj in comp.s:
            # nodes i / 2^(s_j + 2), lifted to the common exponent
            idx = np.arange(1 << (sj + 2), dtype=np.int64)
            axes.append(idx << (exp - (sj + 2)))
        blocks.append(_mesh_numerators(axes))
    nums = np.unique(np.concatenate(blocks, axis=0), axis=0)
    return PointSet(d=d, domain="unit", numerators=nums, exponent=exp)


# ---------------------------------------------------------------------------
# universal construction


def coverage_level_increment(d: int) -> int:
    """Per-axis extra dyadic levels that make net cells finer than the
    sup-norm comparison radius: 1 + floor(log2(4*pi*d))."""
    return 1 + int(math.floor(math.log2(4.0 * math.pi * d)))


@dataclass(frozen=True)
class UniversalConstructionParams:
    """Inputs for the one-set-fits-all construction.

    n, d : total degree level and dimension of the target collection.
    q : float
        math.inf selects the sup-norm sizing (resolution grows by
        `coverage_level_increment(d)` per dimension); finite q uses the
        margin parameter `a_dq` per dimension instead.
    t : int or None
        Equidistribution quality to require; None starts at 0 and grows
        to whatever the built-in matrices achieve.
    a_dq : int
        Per-axis margin for finite q.
    """

    n: int
    d: int
    q: float = math.inf
    t: int | None = None
    a_dq: int = 4

    def margin(self) -> int:
        if self.q == math.inf:
            return coverage_level_increment(self.d)
        return int(self.a_dq)

    def resolution(self, t: int) -> int:
        return self.n + t + self.margin() * self.d


@dataclass(eq=False)
class UniversalSetResult:
    points: PointSet  # on the 2pi torus
    net: DigitalNet
    n: int
    d: int
    q: float
    r: int
    t: int
    margin: int

    @property
    def m(self) -> int:
        return self.points.m

    def describe(self) -> dict:
        return {
            "family": "universal-linf" if self.q == math.inf
            else "universal-lq",
            "n": self.n, "d": self.d,
            "q": "inf" if self.q == math.inf else self.q,
            "r": self.r, "t": self.t, "m": self.m, "margin": self.margin,
        }


def universal_set(params: UniversalConstructionParams) -> UniversalSetResult:
    """Build the scaled digital net that discretizes every subspace of
    total degree 2^n at once.

    Starting from the requested (or zero) t, builds the net at
    resolution n + t + margin*d, verifies the t property exactly, and
    if the built-in matrices miss it, raises t to the measured value
    and rebuilds at the correspondingly larger resolution.
    """
    if params.n < 0:
        raise ValueError("n must be nonnegative")
    if params.q != math.inf and params.q < 1:
        raise ValueError("q must be >= 1 or math.inf")
    t = 0 if params.t is None else int(params.t)
    for _ in range(MAX_RESOLUTION + 1):
        r = params.resolution(t)
        if r > MAX_RESOLUTION:
            raise ValueError(
                f"resolution {r} exceeds the supported cap "
                f"{MAX_RESOLUTION}; use a smaller n (or d)"
            )
        if r < 1:
            raise ValueError("resolution must be at least 1")
        net = default_generator_matrices(params.d, r)
        pts = net_points(net)
        if verify_net(pts, t).ok:
            return UniversalSetResult(
                points=pts.to_torus(), net=net, n=params.n, d=params.d,
                q=params.q, r=r, t=t, margin=params.margin(),
            )
        measured = minimal_t(pts)
        t = max(measured, t + 1)
    raise RuntimeError("t did not stabilize; generator matrices unusable")
