"""Trigonometric polynomials on the d-torus and the classical kernels.

Polynomials live on [0, 2pi)^d and are stored either as a dense
coefficient tensor over a frequency box (which enables factorized,
axis-by-axis evaluation) or as a flat coefficient list over an explicit
frequency set such as a hyperbolic cross.
"""

from __future__ import annotations

import math

import numpy as np

from .frequency import FrequencyBox

TWO_PI = 2.0 * math.pi

# Cap on the number of complex entries held by one evaluation buffer.
_BUFFER_ELEMS = 1 << 24


class TrigPolynomial:
    """f(x) = sum_k c_k exp(i <k, x>).

    Parameters
    ----------
    d : int
        Number of torus dimensions.
    box : FrequencyBox, optional
        Present for box-form polynomials; `tensor` then holds the
        coefficients with axis j indexed by k_j = -N_j .. N_j.
    tensor : ndarray, optional
        Dense coefficient tensor of shape ``box.shape()``.
    freqs, coeffs : ndarray, optional
        Explicit frequency rows (K, d) and coefficients (K,) for
        sparse-form polynomials.
    """

    def __init__(self, d, box=None, tensor=None, freqs=None, coeffs=None):
        self.d = int(d)
        self.box = box
        self.tensor = None
        self._freqs = None
        self._coeffs = None
        if box is not None:
            if tensor is None:
                raise ValueError("box form needs a coefficient tensor")
            tensor = np.asarray(tensor, dtype=np.complex128)
            if tensor.shape != box.shape():
                raise ValueError(
                    f"tensor shape {tensor.shape} != box shape {box.shape()}"
                )
            if box.d != self.d:
                raise ValueError("box dimension mismatch")
            self.tensor = tensor
        else:
            if freqs is None or coeffs is None:
                raise ValueError("sparse form needs freqs and coeffs")
            freqs = np.asarray(freqs, dtype=np.int64)
            coeffs = np.asarray(coeffs, dtype=np.complex128)
            if freqs.ndim != 2 or freqs.shape[1] != self.d:
                raise ValueError(f"freqs must be (K, {self.d})")
            if coeffs.shape != (freqs.shape[0],):
                raise ValueError("coeffs length must match freqs")
            self._freqs = freqs
            self._coeffs = coeffs

    @classmethod
    def from_box(cls, box: FrequencyBox, tensor) -> "TrigPolynomial":
        return cls(box.d, box=box, tensor=tensor)

    @classmethod
    def from_freqs(cls, freqs, coeffs) -> "TrigPolynomial":
        freqs = np.asarray(freqs, dtype=np.int64)
        return cls(freqs.shape[1], freqs=freqs, coeffs=coeffs)

    # -- views -------------------------------------------------------------

    @property
    def freqs(self) -> np.ndarray:
        if self._freqs is None:
            self._freqs = self.box.frequencies()
        return self._freqs

    @property
    def coeffs(self) -> np.ndarray:
        if self._coeffs is None:
            self._coeffs = self.tensor.ravel()
        return self._coeffs

    def degrees(self) -> tuple[int, ...]:
        """Per-axis maximal |k_j| over the support."""
        if self.box is not None:
            return self.box.N
        if self.freqs.shape[0] == 0:
            return (0,) * self.d
        return tuple(int(v) for v in np.abs(self.freqs).max(axis=0))

    def to_box_form(self) -> "TrigPolynomial":
        """Embed into the bounding frequency box (dense coefficients)."""
        if self.box is not None:
            return self
        box = FrequencyBox(self.degrees())
        tensor = np.zeros(box.shape(), dtype=np.complex128)
        idx = tuple((self.freqs[:, j] + box.N[j]) for j in range(self.d))
        np.add.at(tensor, idx, self.coeffs)
        return TrigPolynomial.from_box(box, tensor)

    # -- evaluation --------------------------------------------------------

    def eval(self, X) -> np.ndarray:
        """Values at points X (m, d) in radians; returns complex (m,)."""
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.d:
            raise ValueError(f"points have dimension {X.shape[1]}, need {self.d}")
        if self.box is not None:
            return eval_tensors_at(self.tensor[None], self.box, X)[0]
        return eval_sparse_at(self.freqs, self.coeffs, X)

    def eval_grid(self, axis_nodes) -> np.ndarray:
        """Values on a tensor-product grid given per-axis node arrays."""
        f = self.to_box_form()
        return eval_tensor_on_grid(f.tensor, axis_nodes)

    # -- algebra -----------------------------------------------------------

    def scaled(self, lam) -> "TrigPolynomial":
        if self.box is not None:
            return TrigPolynomial.from_box(self.box, self.tensor * lam)
        return TrigPolynomial.from_freqs(self.freqs, self.coeffs * lam)

    def to_json_dict(self) -> dict:
        c = self.coeffs
        return {
            "freqs": self.freqs.tolist(),
            "coeffs": [[float(v.real), float(v.imag)] for v in c],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TrigPolynomial":
        freqs = np.asarray(data["freqs"], dtype=np.int64)
        coeffs = np.asarray(
            [complex(re, im) for re, im in data["coeffs"]], dtype=np.complex128
        )
        return cls.from_freqs(freqs, coeffs)


def translate(f: TrigPolynomial, w) -> TrigPolynomial:
    """The shifted polynomial f(. - w); coefficients pick up exp(-i<k,w>)."""
    w = np.asarray(w, dtype=np.float64).reshape(f.d)
    if f.box is not None:
        phases = [
            np.exp(-1j * f.box.axis_frequencies(j) * w[j]) for j in range(f.d)
        ]
        tensor = f.tensor.copy()
        for j, ph in enumerate(phases):
            shape = [1] * f.d
            shape[j] = ph.size
            tensor = tensor * ph.reshape(shape)
        return TrigPolynomial.from_box(f.box, tensor)
    coeffs = f.coeffs * np.exp(-1j * (f.freqs @ w))
    return TrigPolynomial.from_freqs(f.freqs, coeffs)


# -- batched evaluation kernels -------------------------------------------


def _axis_phase(x: np.ndarray, ks: np.ndarray) -> np.ndarray:
    return np.exp(1j * np.outer(x, ks))


def eval_tensors_at(tensors, box: FrequencyBox, X, chunk: int = 32768):
    """Evaluate a batch of box-form polynomials at scattered points.

    Parameters
    ----------
    tensors : ndarray (B, *box.shape())
        Coefficient tensors sharing one frequency box.
    box : FrequencyBox
    X : ndarray (m, d)
        Points in radians.
    chunk : int
        Point-block size; evaluation streams over blocks to bound memory.

    Returns
    -------
    ndarray (B, m) of complex values.

    The contraction runs one BLAS product over the largest axis followed
    by per-point reductions over the remaining axes, so the cost is
    O(m * dim(box)) with matrix-multiply throughput.
    """
    tensors = np.asarray(tensors, dtype=np.complex128)
    X = np.asarray(X, dtype=np.float64)
    B = tensors.shape[0]
    d = box.d
    m = X.shape[0]
    shape = box.shape()
    out = np.empty((B, m), dtype=np.complex128)

    jbig = int(np.argmax(shape))
    rest = [j for j in range(d) if j != jbig]
    r_rest = int(np.prod([shape[j] for j in rest], dtype=np.int64)) if rest else 1
    # (K_big, B * prod(rest)) view of the batch, big axis leading
    stacked = np.moveaxis(tensors, 1 + jbig, 1)
    stacked = stacked.reshape(B, shape[jbig], r_rest)
    stacked = np.ascontiguousarray(np.swapaxes(stacked, 0, 1)).reshape(
        shape[jbig], B * r_rest
    )

    sub_b = max(1, _BUFFER_ELEMS // max(1, chunk * r_rest))
    for lo in range(0, m, chunk):
        hi = min(lo + chunk, m)
        Xc = X[lo:hi]
        E = [_axis_phase(Xc[:, j], box.axis_frequencies(j)) for j in range(d)]
        if sub_b >= B:
            A = E[jbig] @ stacked  # (c, B * r_rest)
            A = A.reshape(hi - lo, B, *(shape[j] for j in rest))
            for j in reversed(rest):
                A2 = A.reshape(hi - lo, -1, shape[j])
                A = np.einsum("cmk,ck->cm", A2, E[j]).reshape(A.shape[:-1])
            out[:, lo:hi] = A.reshape(hi - lo, B).T
        else:
            for b0 in range(0, B, sub_b):
                b1 = min(b0 + sub_b, B)
                cols = stacked.reshape(shape[jbig], B, r_rest)[:, b0:b1]
                A = E[jbig] @ cols.reshape(shape[jbig], (b1 - b0) * r_rest)
                A = A.reshape(hi - lo, b1 - b0, *(shape[j] for j in rest))
                for j in reversed(rest):
                    A2 = A.reshape(hi - lo, -1, shape[j])
                    A = np.einsum("cmk,ck->cm", A2, E[j]).reshape(A.shape[:-1])
                out[b0:b1, lo:hi] = A.reshape(hi - lo, b1 - b0).T
    return out


def eval_sparse_at(freqs, coeffs, X) -> np.ndarray:
    """Direct summation over an explicit frequency list (m points)."""
    freqs = np.asarray(freqs, dtype=np.float64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    X = np.asarray(X, dtype=np.float64)
    m = X.shape[0]
    K = max(1, freqs.shape[0])
    chunk = max(1, _BUFFER_ELEMS // K)
    out = np.empty(m, dtype=np.complex128)
    for lo in range(0, m, chunk):
        hi = min(lo + chunk, m)
        out[lo:hi] = np.exp(1j * (X[lo:hi] @ freqs.T)) @ coeffs
    return out


def eval_tensor_on_grid(tensor, axis_nodes) -> np.ndarray:
    """Evaluate a box-form coefficient tensor on a tensor-product grid.

    axis_nodes is a list of 1-D radian arrays; the result has shape
    (len(axis_nodes[0]), ..., len(axis_nodes[d-1])).
    """
    T = np.asarray(tensor, dtype=np.complex128)
    d = T.ndim
    if len(axis_nodes) != d:
        raise ValueError("need one node array per axis")
    for j in reversed(range(d)):
        K = T.shape[j]
        ks = np.arange(-((K - 1) // 2), (K - 1) // 2 + 1, dtype=np.float64)
        E = _axis_phase(np.asarray(axis_nodes[j], dtype=np.float64), ks)
        T = np.tensordot(T, E, axes=([j], [1]))
    # axes are now (M_{d-1}, ..., M_0)
    return T.transpose(tuple(reversed(range(d))))


# -- classical kernels -----------------------------------------------------


def dirichlet(n: int) -> TrigPolynomial:
    """Dirichlet kernel of degree n; value 2n + 1 at zero."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    box = FrequencyBox((n,))
    return TrigPolynomial.from_box(box, np.ones(2 * n + 1))


def fejer(n: int) -> TrigPolynomial:
    """Fejér kernel with peak n; degree n - 1, coefficients 1 - |k|/n."""
    if n < 1:
        raise ValueError("order must be at least 1")
    ks = np.arange(-(n - 1), n, dtype=np.float64)
    box = FrequencyBox((n - 1,))
    return TrigPolynomial.from_box(box, 1.0 - np.abs(ks) / n)


def vallee_poussin(n: int) -> TrigPolynomial:
    """de la Vallee Poussin kernel 2*F_{2n} - F_n (F = Fejér with peak n).

    Degree 2n - 1, value 3n at zero, and coefficient exactly 1 for all
    |k| <= n.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    ks = np.arange(-(2 * n - 1), 2 * n, dtype=np.float64)
    a = np.abs(ks)
    coeff = np.where(a <= n - 1, 1.0, 2.0 - a / n)
    box = FrequencyBox((2 * n - 1,))
    return TrigPolynomial.from_box(box, coeff)


_KERNELS = {"dirichlet": dirichlet, "fejer": fejer, "vp": vallee_poussin}


def tensor_kernel(kind: str, N) -> TrigPolynomial:
    """Tensor product of univariate kernels, one order parameter per axis."""
    if kind not in _KERNELS:
        raise ValueError(f"kind must be one of {sorted(_KERNELS)}")
    factors = [_KERNELS[kind](int(n)) for n in N]
    tensor = factors[0].tensor
    for f in factors[1:]:
        tensor = np.multiply.outer(tensor, f.tensor)
    box = FrequencyBox(tuple(f.box.N[0] for f in factors))
    return TrigPolynomial.from_box(box, tensor)


def fejer_values(n: int, x) -> np.ndarray:
    """Closed-form Fejér kernel values sin(n x/2)^2 / (n sin(x/2)^2)."""
    x = np.asarray(x, dtype=np.float64)
    y = 0.5 * x
    sy = np.sin(y)
    small = np.abs(sy) < 1e-8
    safe = np.where(small, 1.0, sy)
    ratio = np.sin(n * y) / safe
    vals = ratio * ratio / n
    if np.any(small):
        # quadratic expansion around the peaks y = m*pi
        u = y - np.round(y / math.pi) * math.pi
        peak = n * (1.0 - (n * n - 1.0) * u * u / 3.0)
        vals = np.where(small, peak, vals)
    return vals


def vp_values(n: int, x) -> np.ndarray:
    """Closed-form de la Vallee Poussin kernel values."""
    return 2.0 * fejer_values(2 * n, x) - fejer_values(n, x)


def tensor_vp_values(N, X) -> np.ndarray:
    """Product of univariate de la Vallee Poussin values along each axis."""
    X = np.asarray(X, dtype=np.float64)
    out = np.ones(X.shape[0], dtype=np.float64)
    for j, n in enumerate(N):
        out *= vp_values(int(n), X[:, j])
    return out


# -- random polynomials ----------------------------------------------------


def random_poly(box: FrequencyBox, rng, kind: str = "gaussian") -> TrigPolynomial:
    """Random polynomial on a frequency box.

    kind "gaussian": i.i.d. standard complex Gaussian coefficients, so
    the expected squared L2 norm equals dim(box). kind "spike": a
    translated Dirichlet kernel with a uniform random center (stored on
    the returned object as ``center``).
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    shape = box.shape()
    if kind == "gaussian":
        tensor = (
            rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        ) * math.sqrt(0.5)
        return TrigPolynomial.from_box(box, tensor)
    if kind == "spike":
        w = rng.uniform(0.0, TWO_PI, size=box.d)
        f = translate(TrigPolynomial.from_box(box, np.ones(shape)), w)
        f.center = w
        return f
    raise ValueError(f"unknown sample kind {kind!r}")
