"""Frequency index sets for multivariate trigonometric subspaces.

Three families are supported: symmetric boxes of per-axis degree N,
dyadic rectangles indexed by an exponent vector s, and hyperbolic
crosses (unions over all dyadic rectangles with a fixed total level).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# 2**level is used as a coordinate scale; keep it inside int64.
MAX_LEVEL = 62


@dataclass(frozen=True)
class FrequencyBox:
    """Frequencies k in Z^d with |k_j| <= N_j for every axis j."""

    N: tuple[int, ...]

    def __post_init__(self):
        if len(self.N) == 0:
            raise ValueError("dimension must be at least 1")
        if any(int(n) < 0 for n in self.N):
            raise ValueError(f"degrees must be nonnegative, got {self.N!r}")
        object.__setattr__(self, "N", tuple(int(n) for n in self.N))

    @property
    def d(self) -> int:
        return len(self.N)

    @property
    def dim(self) -> int:
        """Number of frequencies in the box, prod(2*N_j + 1). Always odd."""
        return math.prod(2 * n + 1 for n in self.N)

    @property
    def degree_volume(self) -> int:
        """prod(max(N_j, 1)); the cardinality scale used by grid counts."""
        return math.prod(max(n, 1) for n in self.N)

    def axis_frequencies(self, j: int) -> np.ndarray:
        return np.arange(-self.N[j], self.N[j] + 1, dtype=np.int64)

    def frequencies(self) -> np.ndarray:
        """All box frequencies as a (dim, d) int array, lexicographic order."""
        grids = np.meshgrid(
            *(self.axis_frequencies(j) for j in range(self.d)), indexing="ij"
        )
        return np.stack([g.ravel() for g in grids], axis=1)

    def shape(self) -> tuple[int, ...]:
        """Per-axis coefficient counts (2*N_j + 1)."""
        return tuple(2 * n + 1 for n in self.N)


@dataclass(frozen=True)
class SubspaceIndex:
    """Exponent vector s of a dyadic rectangle; total level n = sum(s)."""

    s: tuple[int, ...]

    def __post_init__(self):
        if len(self.s) == 0:
            raise ValueError("dimension must be at least 1")
        s = tuple(int(v) for v in self.s)
        if any(v < 0 for v in s):
            raise ValueError(f"levels must be nonnegative, got {s!r}")
        if any(v > MAX_LEVEL for v in s):
            raise ValueError(f"level exceeds {MAX_LEVEL}: {s!r}")
        object.__setattr__(self, "s", s)

    @property
    def d(self) -> int:
        return len(self.s)

    @property
    def n(self) -> int:
        return sum(self.s)

    def box(self) -> FrequencyBox:
        """The dyadic rectangle R(s): |k_j| < 2**s_j, i.e. N_j = 2**s_j - 1."""
        return FrequencyBox(tuple((1 << v) - 1 for v in self.s))


def box_of_s(s) -> FrequencyBox:
    """Frequency box of the dyadic rectangle with exponent vector s."""
    return SubspaceIndex(tuple(s)).box()


def enumerate_compositions(n: int, d: int) -> list[SubspaceIndex]:
    """All s in Z_+^d with sum(s) = n, ascending lexicographic order.

    The list has binomial(n + d - 1, d - 1) entries.
    """
    if n < 0 or d < 1:
        raise ValueError(f"need n >= 0 and d >= 1, got n={n}, d={d}")

    out: list[SubspaceIndex] = []

    def rec(prefix: tuple[int, ...], remaining: int, axes_left: int):
        if axes_left == 1:
            out.append(SubspaceIndex(prefix + (remaining,)))
            return
        for v in range(remaining + 1):
            rec(prefix + (v,), remaining - v, axes_left - 1)

    rec((), n, d)
    return out


def composition_count(n: int, d: int) -> int:
    return math.comb(n + d - 1, d - 1)


@dataclass(frozen=True)
class HyperbolicCross:
    """Union of all dyadic rectangles R(s) with sum(s) = n."""

    n: int
    d: int
    freqs: np.ndarray  # (size, d) int64, lexicographically sorted

    @property
    def size(self) -> int:
        return self.freqs.shape[0]

    def __eq__(self, other):
        if not isinstance(other, HyperbolicCross):
            return NotImplemented
        return (
            self.n == other.n
            and self.d == other.d
            and np.array_equal(self.freqs, other.freqs)
        )


def hyperbolic_cross(n: int, d: int) -> HyperbolicCross:
    """Explicit frequency set of the level-n hyperbolic cross in Z^d."""
    blocks = [s.box().frequencies() for s in enumerate_compositions(n, d)]
    allf = np.concatenate(blocks, axis=0)
    uniq = np.unique(allf, axis=0)  # sorts rows lexicographically
    return HyperbolicCross(n=n, d=d, freqs=uniq)


def to_json_dict(obj) -> dict:
    """JSON payload for a frequency set (box or cross)."""
    if isinstance(obj, FrequencyBox):
        return {"kind": "box", "N": list(obj.N)}
    if isinstance(obj, HyperbolicCross):
        return {
            "kind": "cross",
            "n": obj.n,
            "d": obj.d,
            "freqs": obj.freqs.tolist(),
        }
    raise TypeError(f"unsupported frequency set {type(obj).__name__}")


def from_json_dict(data: dict):
    kind = data.get("kind")
    if kind == "box":
        return FrequencyBox(tuple(data["N"]))
    if kind == "cross":
        freqs = np.asarray(data["freqs"], dtype=np.int64)
        cross = hyperbolic_cross(int(data["n"]), int(data["d"]))
        if not np.array_equal(np.unique(freqs, axis=0), cross.freqs):
            raise ValueError("stored cross frequencies do not match (n, d)")
        return cross
    raise ValueError(f"unknown frequency set kind {kind!r}")
