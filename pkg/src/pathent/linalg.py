"""Exact-dimension complex linear algebra for two-path optics.

Only dimensions 2 (one quanton, two paths) and 4 (two quantons) exist here.

Tensor ordering convention, used by every other module: a two-quanton basis
ket |xy> is |x>_R (x) |y>_L, i.e. the right-side quanton is the *left* Kronecker
factor. Flat index = 2*x + y, so the basis order is |00>, |01>, |10>, |11>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DIMS = (2, 4)
DEFAULT_TOL = 1e-12
ORACLE_TOL = 1e-10


class InvalidDimensionError(ValueError):
    pass


def _as_complex_array(data, ndim: int, what: str) -> np.ndarray:
    arr = np.array(data, dtype=np.complex128)
    if arr.ndim != ndim:
        raise InvalidDimensionError(f"{what} must have {ndim} axes, got shape {arr.shape}")
    if arr.shape[0] not in DIMS or any(n != arr.shape[0] for n in arr.shape):
        raise InvalidDimensionError(f"{what} dimension must be one of {DIMS}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} has non-finite entries")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SquareMatrix:
    """A 2x2 or 4x4 complex matrix, row-major, immutable."""

    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", _as_complex_array(self.data, 2, "matrix"))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def __getitem__(self, idx) -> complex:
        return complex(self.data[idx])

    def __matmul__(self, other):
        if isinstance(other, SquareMatrix):
            return matmul(self, other)
        if isinstance(other, StateVector):
            return apply(self, other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash(self.data.tobytes())

    def __repr__(self):
        return f"SquareMatrix({np.array2string(self.data, precision=6)})"


@dataclass(frozen=True, eq=False)
class StateVector:
    """A 2- or 4-component complex amplitude vector.

    With ``normalized=True`` the constructor insists on unit norm (1e-12).
    """

    amps: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        arr = _as_complex_array(self.amps, 1, "state vector")
        object.__setattr__(self, "amps", arr)
        if self.normalized:
            n2 = float(np.vdot(arr, arr).real)
            if abs(n2 - 1.0) > DEFAULT_TOL:
                raise ValueError(f"state flagged normalized but sum |amp|^2 = {n2!r}")

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    def __getitem__(self, idx) -> complex:
        return complex(self.amps[idx])

    def __len__(self):
        return self.dim

    def __iter__(self):
        return (complex(a) for a in self.amps)

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return np.array_equal(self.amps, other.amps)

    def __hash__(self):
        return hash(self.amps.tobytes())

    def __repr__(self):
        return f"StateVector({np.array2string(self.amps, precision=6)})"

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def identity(dim: int) -> SquareMatrix:
    return SquareMatrix(np.eye(dim))


def dagger(m: SquareMatrix) -> SquareMatrix:
    return SquareMatrix(m.data.conj().T)


def matmul(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    if a.dim != b.dim:
        raise InvalidDimensionError(f"cannot multiply {a.dim}x{a.dim} by {b.dim}x{b.dim}")
    return SquareMatrix(a.data @ b.data)


def kron(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    """Tensor product ``a (x) b`` with ``a`` acting on the right-side quanton.

    Both factors must be 2x2; the result acts on the |xy> = |x>_R |y>_L basis.
    """
    if a.dim != 2 or b.dim != 2:
        raise InvalidDimensionError(f"kron needs two 2x2 factors, got {a.dim} and {b.dim}")
    return SquareMatrix(np.kron(a.data, b.data))


def kron_vec(u: StateVector, v: StateVector) -> StateVector:
    if u.dim != 2 or v.dim != 2:
        raise InvalidDimensionError(f"kron_vec needs two 2-vectors, got {u.dim} and {v.dim}")
    return StateVector(np.kron(u.amps, v.amps))


def apply(m: SquareMatrix, v: StateVector) -> StateVector:
    """Plain matrix-vector product. The result is not re-normalized."""
    if m.dim != v.dim:
        raise InvalidDimensionError(f"cannot apply {m.dim}x{m.dim} matrix to {v.dim}-vector")
    return StateVector(m.data @ v.amps)


def norm(v: StateVector) -> float:
    return float(np.linalg.norm(v.amps))


def normalize(v: StateVector) -> StateVector:
    n = norm(v)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return StateVector(v.amps / n, normalized=True)


def max_abs_diff(a, b) -> float:
    """Entrywise max |a - b| for matrices, vectors or plain arrays."""
    x = getattr(a, "data", getattr(a, "amps", a))
    y = getattr(b, "data", getattr(b, "amps", b))
    x, y = np.asarray(x), np.asarray(y)
    if x.shape != y.shape:
        raise InvalidDimensionError(f"shape mismatch {x.shape} vs {y.shape}")
    return float(np.max(np.abs(x - y)))


def is_unitary(m: SquareMatrix, tol: float = DEFAULT_TOL) -> bool:
    if not tol > 0:
        raise ValueError("tol must be positive")
    dev = m.data.conj().T @ m.data - np.eye(m.dim)
    return float(np.max(np.abs(dev))) <= tol


def equal_up_to_global_phase(u: StateVector, v: StateVector, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``u == lam * v`` for some |lam| = 1, entrywise within ``tol``.

    The phase is read off the largest-magnitude amplitude of ``v`` so we never
    divide by a near-zero component.
    """
    if u.dim != v.dim:
        raise InvalidDimensionError(f"dimension mismatch {u.dim} vs {v.dim}")
    k = int(np.argmax(np.abs(v.amps)))
    if v.amps[k] == 0 or u.amps[k] == 0:
        return float(np.max(np.abs(u.amps - v.amps))) <= tol
    ratio = u.amps[k] / v.amps[k]
    lam = ratio / abs(ratio)
    return float(np.max(np.abs(u.amps - lam * v.amps))) <= tol
