"""Vectors of W + W* (creation/annihilation combinations) and chains of them.

A :class:`CliffordVector` ``x = sum_i u_i c_i^+ + sum_i v_i c_i`` is stored as the
pair ``(u, v)``. Matrices on this 2d-dimensional space always use the basis
order ``(c_0^+, ..., c_{d-1}^+, c_0, ..., c_{d-1})``.

Matrix convention: a group element ``O`` acts on basis operators as
``O e_a O^-1 = sum_b R[a, b] e_b`` (row ``a`` holds the image of ``e_a``).
Coefficient vectors ``(u, v)`` therefore transform by ``R.T``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import DimensionMismatch, FockState, annihilate, create


class IsotropicVector(ValueError):
    """Raised when an operation needs a vector with nonzero self-pairing."""


@dataclass(frozen=True, eq=False)
class CliffordVector:
    d: int
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.array(self.u, dtype=complex).reshape(-1)
        v = np.array(self.v, dtype=complex).reshape(-1)
        if u.shape != (self.d,) or v.shape != (self.d,):
            raise ValueError(f"u and v must have length {self.d}")
        u.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @classmethod
    def creation(cls, d: int, i: int, coeff: complex = 1.0) -> "CliffordVector":
        u = np.zeros(d, dtype=complex)
        u[i] = coeff
        return cls(d, u, np.zeros(d))

    @classmethod
    def annihilation(cls, d: int, i: int, coeff: complex = 1.0) -> "CliffordVector":
        v = np.zeros(d, dtype=complex)
        v[i] = coeff
        return cls(d, np.zeros(d), v)

    @classmethod
    def from_array(cls, coeffs) -> "CliffordVector":
        coeffs = np.asarray(coeffs, dtype=complex)
        d = coeffs.shape[0] // 2
        return cls(d, coeffs[:d], coeffs[d:])

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.u, self.v])

    def __add__(self, other):
        _same_d(self, other)
        return CliffordVector(self.d, self.u + other.u, self.v + other.v)

    def __sub__(self, other):
        _same_d(self, other)
        return CliffordVector(self.d, self.u - other.u, self.v - other.v)

    def __neg__(self):
        return CliffordVector(self.d, -self.u, -self.v)

    def __mul__(self, c):
        return CliffordVector(self.d, c * self.u, c * self.v)

    __rmul__ = __mul__

    def allclose(self, other, atol=1e-12) -> bool:
        _same_d(self, other)
        return bool(np.allclose(self.as_array(), other.as_array(), atol=atol))


def _same_d(x, y):
    if x.d != y.d:
        raise DimensionMismatch(f"d={x.d} vs d={y.d}")


def form(x: CliffordVector, y: CliffordVector) -> complex:
    """Half the anticommutator: ``(x, y) = (u_x . v_y + u_y . v_x) / 2``."""
    _same_d(x, y)
    return complex(0.5 * (x.u @ y.v + y.u @ x.v))


def metric(d: int) -> np.ndarray:
    """The off-diagonal block matrix ``g = [[0, I], [I, 0]]``; ``form`` has Gram matrix ``g/2``."""
    eye = np.eye(d)
    zero = np.zeros((d, d))
    return np.block([[zero, eye], [eye, zero]])


def apply_vector(x: CliffordVector, phi: FockState) -> FockState:
    if x.d != phi.d:
        raise DimensionMismatch(f"vector d={x.d} vs state d={phi.d}")
    out = np.zeros_like(phi.amp)
    for i in range(x.d):
        if x.u[i] != 0:
            out += x.u[i] * create(i, phi).amp
        if x.v[i] != 0:
            out += x.v[i] * annihilate(i, phi).amp
    return FockState(phi.d, out)


def reflect(y: CliffordVector, x: CliffordVector) -> CliffordVector:
    """``y x y^-1 = (2 (x, y) / (y, y)) y - x``."""
    yy = form(y, y)
    if yy == 0:
        raise IsotropicVector("cannot conjugate by an isotropic vector")
    return (2 * form(x, y) / yy) * y - x


@dataclass(frozen=True)
class VectorChain:
    """An ordered product ``O = x_1 x_2 ... x_r`` of Clifford vectors."""

    factors: tuple

    def __init__(self, factors=()):
        object.__setattr__(self, "factors", tuple(factors))

    def __len__(self):
        return len(self.factors)

    def apply(self, phi: FockState) -> FockState:
        """``O phi``: factors act right to left."""
        for x in reversed(self.factors):
            phi = apply_vector(x, phi)
        return phi

    def conjugate(self, x: CliffordVector) -> CliffordVector:
        """``O x O^-1``."""
        for y in reversed(self.factors):
            x = reflect(y, x)
        return x

    def check(self, tol: float = 1e-12) -> None:
        """Raise unless every factor has ``(x, x) = +-1`` and the length is even."""
        if len(self.factors) % 2:
            raise ValueError("a Spin element needs an even number of factors")
        for x in self.factors:
            if abs(abs(form(x, x)) - 1) > tol or abs(form(x, x).imag) > tol:
                raise ValueError("chain factors must satisfy (x, x) = +-1")


def chain_to_vector_matrix(chain: VectorChain, d: int | None = None) -> np.ndarray:
    """Matrix ``R`` with ``O e_a O^-1 = sum_b R[a, b] e_b``."""
    if d is None:
        if not chain.factors:
            raise ValueError("pass d for an empty chain")
        d = chain.factors[0].d
    rows = []
    for a in range(2 * d):
        e = CliffordVector.from_array(np.eye(2 * d)[a])
        rows.append(chain.conjugate(e).as_array())
    return np.array(rows)


def random_vector(d: int, rng, unit: bool = True) -> CliffordVector:
    z = rng.standard_normal((2, d)) + 1j * rng.standard_normal((2, d))
    x = CliffordVector(d, z[0], z[1])
    if unit:
        s = form(x, x)
        if abs(s) < 1e-6:
            return random_vector(d, rng, unit)
        x = x * (1 / np.sqrt(s))
    return x
