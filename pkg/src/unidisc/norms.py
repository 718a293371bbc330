"""L_q norms of trigonometric polynomials, exact or certified.

All norms use the normalized measure on [0, 2pi)^d, i.e. means rather
than raw integrals. Even integer q admits exact tensor-grid quadrature;
general q is handled by oversampled quadrature with a reported
refinement error; the sup norm comes with a certified two-sided bracket
driven by the Bernstein-type Lipschitz bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .trigpoly import TWO_PI, TrigPolynomial, eval_tensor_on_grid

_EVEN_Q = (2, 4, 6, 8)


@dataclass(frozen=True)
class NormResult:
    value: float
    q: float
    method: str  # parseval | exact_grid | quadrature | certified_sup | discrete
    error_bound: float

    @property
    def upper(self) -> float:
        """Upper end of the certified bracket [value, value + error_bound]."""
        return self.value + self.error_bound


def norm_l2_exact(f: TrigPolynomial) -> NormResult:
    """Exact L2 norm via the coefficient sum."""
    value = float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))
    return NormResult(value=value, q=2.0, method="parseval", error_bound=0.0)


def _grid_nodes(counts) -> list[np.ndarray]:
    return [np.arange(M) * (TWO_PI / M) for M in counts]


def _power_mean_on_grid(f: TrigPolynomial, counts, q: float) -> float:
    g = f.to_box_form()
    vals = eval_tensor_on_grid(g.tensor, _grid_nodes(counts))
    return float(np.mean(np.abs(vals) ** q))


def norm_lq_even_exact(f: TrigPolynomial, q: int) -> NormResult:
    """Exact L_q norm for even q: |f|^q is itself a trigonometric
    polynomial of per-axis degree q*N_j, so a tensor grid with
    q*N_j + 1 nodes per axis integrates it exactly."""
    if q not in _EVEN_Q:
        raise ValueError(f"q must be one of {_EVEN_Q}, got {q}")
    N = f.degrees()
    counts = [q * n + 1 for n in N]
    mean = _power_mean_on_grid(f, counts, float(q))
    return NormResult(
        value=float(mean ** (1.0 / q)), q=float(q), method="exact_grid",
        error_bound=0.0,
    )


def norm_lq_quadrature(
    f: TrigPolynomial, q: float, oversample: int = 4
) -> NormResult:
    """Tensor-grid quadrature for general q >= 1.

    Nodes per axis: oversample * (2 N_j + 1). The error bound is the
    difference against one refinement with doubled oversampling.
    """
    if not (q >= 1.0 and math.isfinite(q)):
        raise ValueError(f"need finite q >= 1, got {q}")
    if oversample < 2:
        raise ValueError("oversample must be at least 2")
    N = f.degrees()
    value = _power_mean_on_grid(
        f, [oversample * (2 * n + 1) for n in N], q
    ) ** (1.0 / q)
    refined = _power_mean_on_grid(
        f, [2 * oversample * (2 * n + 1) for n in N], q
    ) ** (1.0 / q)
    return NormResult(
        value=float(value), q=float(q), method="quadrature",
        error_bound=float(abs(value - refined)),
    )


def norm_linf_certified(f: TrigPolynomial, delta: float = 0.25) -> NormResult:
    """Certified bracket for the sup norm.

    Uses a tensor grid with per-axis spacings h_j such that
    sum_j N_j h_j / 2 <= delta. The Lipschitz bound
    |f(x) - f(y)| <= sum_j N_j |x_j - y_j| * sup|f| then certifies
    M <= sup|f| <= M / (1 - delta_actual) for the grid maximum M.
    `value` is the lower end M; `error_bound` spans the bracket.
    """
    if not (0.0 < delta <= 0.5):
        raise ValueError(f"delta must lie in (0, 0.5], got {delta}")
    N = f.degrees()
    active = [n for n in N if n > 0]
    if not active:
        v = float(np.abs(f.eval(np.zeros((1, f.d))))[0])
        return NormResult(value=v, q=math.inf, method="certified_sup",
                          error_bound=0.0)
    d_eff = len(active)
    counts = []
    for n in N:
        if n == 0:
            counts.append(1)
        else:
            h_target = 2.0 * delta / (d_eff * n)
            counts.append(int(math.ceil(TWO_PI / h_target)))
    delta_actual = sum(
        n * (TWO_PI / M) / 2.0 for n, M in zip(N, counts) if n > 0
    )
    g = f.to_box_form()
    vals = eval_tensor_on_grid(g.tensor, _grid_nodes(counts))
    M = float(np.abs(vals).max())
    upper = M / (1.0 - delta_actual)
    return NormResult(value=M, q=math.inf, method="certified_sup",
                      error_bound=float(upper - M))


def norm(f: TrigPolynomial, q, delta: float = 0.25,
         oversample: int = 4) -> NormResult:
    """Dispatch to the best method for the requested q."""
    if q == math.inf:
        return norm_linf_certified(f, delta=delta)
    if float(q) == 2.0:
        return norm_l2_exact(f)
    if float(q).is_integer() and int(q) in _EVEN_Q:
        return norm_lq_even_exact(f, int(q))
    return norm_lq_quadrature(f, float(q), oversample=oversample)


def discrete_norm(f: TrigPolynomial, points, q) -> NormResult:
    """Empirical norm over a point set on the 2pi torus.

    For finite q this is the mean of |f|^q over the points (with
    multiplicity), to the power 1/q; for q = inf it is the maximum.
    """
    if points.domain != "torus2pi":
        raise ValueError("points must live on the 2pi torus; scale first")
    vals = np.abs(f.eval(points.coords()))
    if q == math.inf:
        value = float(vals.max())
    else:
        qf = float(q)
        if qf < 1.0:
            raise ValueError(f"need q >= 1, got {q}")
        value = float(np.mean(vals**qf) ** (1.0 / qf))
    return NormResult(value=value, q=float(q), method="discrete",
                      error_bound=0.0)
