"""so(2d, C) generators, their Fock-space (spinor) lift and Bogoliubov transformations.

A generator is the block data ``(A, B, beta)`` of the vector-representation matrix::

    T_vec = [[A,    beta],
             [B,   -A.T ]]      acting as [T, e_a] = sum_b T_vec[a, b] e_b

on the operator basis ``e = (c_0^+, .., c_{d-1}^+, c_0, .., c_{d-1})``. Its lift to
the Fock space is ``T = -Bhat - betahat + Ahat - (1/2) Tr(A)`` with
``Ahat = A[i, j] c_j^+ c_i``, ``Bhat = (1/2) B[i, j] c_i^+ c_j^+`` and
``betahat = (1/2) beta[i, j] c_i c_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
from scipy.linalg import expm
from scipy.sparse.linalg import expm_multiply

from .clifford import metric
from .fock import EVEN, FockState, _ladder_tables, parity_sector
from .tensors import cross, even_d6_coords, even_d6_state, pfaffian


@dataclass(frozen=True, eq=False)
class SpinGenerator:
    d: int
    A: np.ndarray
    B: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        blocks = {}
        for name in ("A", "B", "beta"):
            m = getattr(self, name)
            m = np.zeros((self.d, self.d), dtype=complex) if m is None else np.array(m, dtype=complex)
            if m.shape != (self.d, self.d):
                raise ValueError(f"{name} must be {self.d}x{self.d}, got {m.shape}")
            m.flags.writeable = False
            blocks[name] = m
        for name in ("B", "beta"):
            if np.any(blocks[name] != -blocks[name].T):
                raise ValueError(f"{name} must be antisymmetric")
        for name, m in blocks.items():
            object.__setattr__(self, name, m)

    @classmethod
    def zero(cls, d: int) -> "SpinGenerator":
        return cls(d, None, None, None)

    @classmethod
    def from_matrix(cls, T: np.ndarray, tol: float = 1e-12) -> "SpinGenerator":
        """Read the blocks off a ``2d x 2d`` matrix in so(2d); raises if it is not one."""
        T = np.asarray(T, dtype=complex)
        d = T.shape[0] // 2
        A, beta = T[:d, :d], T[:d, d:]
        B, D = T[d:, :d], T[d:, d:]
        scale = max(1.0, float(np.max(np.abs(T))))
        if (np.max(np.abs(D + A.T)) > tol * scale or np.max(np.abs(B + B.T)) > tol * scale
                or np.max(np.abs(beta + beta.T)) > tol * scale):
            raise ValueError("matrix is not in so(2d) for the metric [[0, I], [I, 0]]")
        return cls(d, A, 0.5 * (B - B.T), 0.5 * (beta - beta.T))

    def __add__(self, other):
        return SpinGenerator(self.d, self.A + other.A, self.B + other.B, self.beta + other.beta)

    def __mul__(self, t):
        return SpinGenerator(self.d, t * self.A, t * self.B, t * self.beta)

    __rmul__ = __mul__

    def block_kind(self) -> str | None:
        """'A', 'B' or 'beta' when exactly one block is nonzero, else None."""
        nonzero = [n for n in ("A", "B", "beta") if np.any(getattr(self, n) != 0)]
        return nonzero[0] if len(nonzero) == 1 else None


def random_generator(d: int, rng, scale: float = 1.0, unitary: bool = False) -> SpinGenerator:
    def cn(*shape):
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)

    X, Y, Z = cn(d, d), cn(d, d), cn(d, d)
    if unitary:
        A = 0.5 * (X - X.conj().T)
        B = 0.5 * (Y - Y.T)
        return SpinGenerator(d, scale * A, scale * B, -scale * B.conj().T)
    return SpinGenerator(d, scale * X, scale * 0.5 * (Y - Y.T), scale * 0.5 * (Z - Z.T))


def bracket(g1: SpinGenerator, g2: SpinGenerator) -> SpinGenerator:
    """Generator whose Fock lift is ``[T1, T2]``.

    The assignment ``T -> T_vec`` reverses products, so this is ``[T2_vec, T1_vec]``.
    """
    M1, M2 = vector_matrix(g1), vector_matrix(g2)
    return SpinGenerator.from_matrix(M2 @ M1 - M1 @ M2, tol=1e-9)


def vector_matrix(gen: SpinGenerator) -> np.ndarray:
    return np.block([[gen.A, gen.beta], [gen.B, -gen.A.T]])


@lru_cache(maxsize=None)
def creation_matrices(d: int) -> tuple:
    mats = []
    for i in range(d):
        src, signs = _ladder_tables(d, i)
        mats.append(sp.csr_matrix((signs.astype(float), (src | (1 << i), src)), shape=(1 << d, 1 << d)))
    return tuple(mats)


def spinor_operator(gen: SpinGenerator) -> sp.csr_matrix:
    """Sparse ``2^d x 2^d`` matrix of ``T = -Bhat - betahat + Ahat - Tr(A)/2``."""
    d = gen.d
    cr = creation_matrices(d)
    an = [c.T.tocsr() for c in cr]
    T = sp.csr_matrix((1 << d, 1 << d), dtype=complex)
    for i in range(d):
        for j in range(d):
            if gen.A[i, j] != 0:
                T = T + gen.A[i, j] * (cr[j] @ an[i])
    for i in range(d):
        for j in range(i + 1, d):
            if gen.B[i, j] != 0:
                T = T - gen.B[i, j] * (cr[i] @ cr[j])
            if gen.beta[i, j] != 0:
                T = T - gen.beta[i, j] * (an[i] @ an[j])
    T = T - 0.5 * np.trace(gen.A) * sp.identity(1 << d, dtype=complex, format="csr")
    return T.tocsr()


def exp_spinor(gen: SpinGenerator) -> np.ndarray:
    return expm(spinor_operator(gen).toarray())


def exp_vector(gen: SpinGenerator) -> np.ndarray:
    return expm(vector_matrix(gen))


def apply_exp(gen: SpinGenerator, phi: FockState, t: float = 1.0) -> FockState:
    """``exp(t T) phi`` without forming the dense exponential."""
    if gen.d != phi.d:
        raise ValueError(f"generator d={gen.d} vs state d={phi.d}")
    out = expm_multiply(t * spinor_operator(gen), phi.amp.astype(complex))
    return FockState(phi.d, out)


@dataclass(frozen=True)
class SpinElement:
    """``O = exp(T_1) exp(T_2) ... exp(T_n)``; the rightmost factor acts first."""

    generators: tuple

    def __init__(self, generators=()):
        object.__setattr__(self, "generators", tuple(generators))

    def apply(self, phi: FockState) -> FockState:
        for g in reversed(self.generators):
            phi = apply_exp(g, phi)
        return phi

    def spinor_matrix(self, d: int) -> np.ndarray:
        out = np.eye(1 << d, dtype=complex)
        for g in self.generators:
            out = out @ exp_spinor(g)
        return out

    def vector_matrix(self, d: int) -> np.ndarray:
        # row convention reverses the order of composition
        out = np.eye(2 * d, dtype=complex)
        for g in self.generators:
            out = exp_vector(g) @ out
        return out

    def inverse(self) -> "SpinElement":
        return SpinElement(-1 * g for g in reversed(self.generators))


def vacuum_orbit_state(gen: SpinGenerator) -> FockState:
    """``exp(-Tr(A)/2) exp(-Bhat) |0>`` for a generator with ``beta = 0``.

    Equals ``exp(T)|0>`` when ``A = 0`` or ``B = 0``; for non-commuting ``A`` and
    ``B`` the exponential of the sum is the defining object, not this formula.
    """
    if np.any(gen.beta != 0):
        raise ValueError("the vacuum closed form needs beta = 0")
    d = gen.d
    Bonly = spinor_operator(SpinGenerator(d, None, gen.B, None))  # = -Bhat
    term = FockState.vacuum(d).amp.copy()
    total = term.copy()
    for k in range(1, d // 2 + 1):
        term = Bonly @ term / k
        total = total + term
    return FockState(d, np.exp(-0.5 * np.trace(gen.A)) * total)


def is_unitary_generator(gen: SpinGenerator, tol: float = 1e-12) -> bool:
    return bool(
        np.max(np.abs(gen.A + gen.A.conj().T)) <= tol
        and np.max(np.abs(gen.B.conj().T + gen.beta)) <= tol
    )


def compact_form_map(d: int) -> np.ndarray:
    """The unitary ``N = [[I, iI], [I, -iI]] / sqrt(2)`` with ``g N = N g0``."""
    eye = np.eye(d)
    return np.block([[eye, 1j * eye], [eye, -1j * eye]]) / np.sqrt(2)


class PremiseError(ValueError):
    pass


def compact_form_image(O: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Real orthogonal image ``N^dagger O N`` of a unitary element of SO(2d, C)."""
    O = np.asarray(O, dtype=complex)
    d = O.shape[0] // 2
    eye = np.eye(2 * d)
    g = metric(d)
    if np.max(np.abs(O @ O.conj().T - eye)) > tol:
        raise PremiseError("matrix is not unitary")
    if np.max(np.abs(O @ g @ O.T - g)) > tol:
        raise PremiseError("matrix does not preserve the metric g")
    N = compact_form_map(d)
    S = N.conj().T @ O @ N
    if np.max(np.abs(S.imag)) > tol or np.max(np.abs(S @ S.T - eye)) > tol:
        raise PremiseError("image is not real orthogonal")
    return S.real


def closed_form_even_d6(gen: SpinGenerator, phi: FockState) -> FockState:
    """Apply a single-block generator to an even six-mode state through closed formulas.

    This path works in the ``(eta, y, x, xi)`` coordinates and never touches the
    Fock-space operators, so it can check :func:`apply_exp`.
    """
    if gen.d != 6 or phi.d != 6:
        raise ValueError("closed forms are for d = 6")
    if parity_sector(phi) != EVEN:
        raise ValueError("closed forms need an even state")
    kind = gen.block_kind()
    if kind is None:
        raise ValueError("closed forms need exactly one nonzero block")
    eta, y, x, xi = even_d6_coords(phi)
    if kind == "B":
        B = gen.B
        BB = cross(B, B)
        return even_d6_state(
            eta,
            y - eta * B,
            x + 0.5 * eta * BB - cross(B, y),
            xi - eta * pfaffian(B) - 0.25 * np.trace(BB @ y) + 0.5 * np.trace(B @ x),
        )
    if kind == "beta":
        b = gen.beta
        bb = cross(b, b)
        return even_d6_state(
            eta + xi * pfaffian(b) - 0.25 * np.trace(bb @ x) - 0.5 * np.trace(b @ y),
            y + 0.5 * xi * bb + cross(b, x),
            x + xi * b,
            xi,
        )
    G = expm(gen.A)
    # exp(-Tr(A)/2) is the branch-free form of det(G)^(-1/2)
    half = np.exp(-0.5 * np.trace(gen.A))
    Ginv = np.linalg.inv(G)
    return even_d6_state(
        half * eta,
        half * G.T @ y @ G,
        (1 / half) * Ginv @ x @ Ginv.T,
        (1 / half) * xi,
    )
