"""Dense states of the fermionic Fock space and exterior-algebra primitives.

Basis convention
----------------
Modes are numbered ``0 .. d-1``. A basis state is an integer bitmask ``S``;
bit ``i`` set means mode ``i`` is occupied. The amplitude stored at ``S``
multiplies the *ascending* monomial ``c_{m1}^+ c_{m2}^+ ... |0>`` with
``m1 < m2 < ...``. Creating a particle in mode ``i`` therefore picks up the
sign ``(-1)^(number of occupied modes below i)``. Every sign in the package
follows from this one rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_MAX_MODES = 12
HARD_MAX_MODES = 16

EVEN = "even"
ODD = "odd"
MIXED = "mixed"


class DimensionMismatch(ValueError):
    pass


def _check_modes(d: int, allow_large: bool = False) -> None:
    cap = HARD_MAX_MODES if allow_large else DEFAULT_MAX_MODES
    if not 1 <= d <= cap:
        raise ValueError(f"mode count d={d} outside 1..{cap}")


@lru_cache(maxsize=None)
def popcounts(d: int) -> np.ndarray:
    """Particle number of every basis bitmask for ``d`` modes."""
    return np.bitwise_count(np.arange(1 << d, dtype=np.uint32)).astype(np.int64)


@lru_cache(maxsize=None)
def _ladder_tables(d: int, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Source bitmasks (mode ``i`` empty) and the creation sign for each."""
    masks = np.arange(1 << d, dtype=np.int64)
    bit = 1 << i
    src = masks[(masks & bit) == 0]
    below = np.bitwise_count((src & (bit - 1)).astype(np.uint32)).astype(np.int64)
    signs = np.where(below % 2 == 0, 1, -1).astype(np.int64)
    src.flags.writeable = False
    signs.flags.writeable = False
    return src, signs


@dataclass(frozen=True, eq=False)
class FockState:
    """A vector in the ``2**d`` dimensional Fock space over ``d`` modes."""

    d: int
    amp: np.ndarray

    def __post_init__(self):
        _check_modes(self.d, allow_large=True)
        amp = np.array(self.amp, dtype=complex)
        if amp.shape != (1 << self.d,):
            raise ValueError(f"amplitude vector must have length 2**{self.d}, got {amp.shape}")
        if not np.all(np.isfinite(amp)):
            raise ValueError("amplitudes must be finite")
        amp.flags.writeable = False
        object.__setattr__(self, "amp", amp)

    # constructors
    @classmethod
    def zero(cls, d: int) -> "FockState":
        return cls(d, np.zeros(1 << d, dtype=complex))

    @classmethod
    def vacuum(cls, d: int) -> "FockState":
        return cls.basis(d, ())

    @classmethod
    def basis(cls, d: int, modes, coeff: complex = 1.0) -> "FockState":
        """``coeff`` times the ascending monomial on ``modes`` (0-based)."""
        modes = tuple(modes)
        if len(set(modes)) != len(modes):
            raise ValueError(f"repeated mode in {modes}")
        for m in modes:
            if not 0 <= m < d:
                raise IndexError(f"mode {m} out of range for d={d}")
        amp = np.zeros(1 << d, dtype=complex)
        amp[sum(1 << m for m in modes)] = coeff
        return cls(d, amp)

    @classmethod
    def from_dict(cls, d: int, terms: dict) -> "FockState":
        """Build from ``{modes_tuple: coefficient}`` (0-based, ascending order assumed)."""
        amp = np.zeros(1 << d, dtype=complex)
        for modes, c in terms.items():
            mask = 0
            for m in modes:
                if not 0 <= m < d:
                    raise IndexError(f"mode {m} out of range for d={d}")
                mask |= 1 << m
            amp[mask] += c
        return cls(d, amp)

    # derived quantities
    @property
    def sector(self) -> str:
        return parity_sector(self)

    def norm(self) -> float:
        return norm(self)

    def is_zero(self, atol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self.amp), initial=0.0) <= atol)

    def support(self, atol: float = 0.0) -> list[tuple[int, ...]]:
        """Occupied-mode tuples carrying a nonzero amplitude."""
        idx = np.flatnonzero(np.abs(self.amp) > atol)
        return [modes_of(int(s)) for s in idx]

    def grade(self, k: int) -> "FockState":
        """Projection onto the ``k``-particle subspace."""
        return FockState(self.d, np.where(popcounts(self.d) == k, self.amp, 0))

    def __getitem__(self, modes) -> complex:
        return complex(self.amp[sum(1 << m for m in modes)])

    # linear structure
    def _like(self, other: "FockState") -> None:
        if not isinstance(other, FockState):
            raise TypeError(f"expected FockState, got {type(other).__name__}")
        if other.d != self.d:
            raise DimensionMismatch(f"d={self.d} vs d={other.d}")

    def __add__(self, other):
        self._like(other)
        return FockState(self.d, self.amp + other.amp)

    def __sub__(self, other):
        self._like(other)
        return FockState(self.d, self.amp - other.amp)

    def __neg__(self):
        return FockState(self.d, -self.amp)

    def __mul__(self, c):
        return FockState(self.d, c * self.amp)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return FockState(self.d, self.amp / c)

    def allclose(self, other: "FockState", rtol: float = 1e-12, atol: float = 1e-12) -> bool:
        self._like(other)
        return bool(np.allclose(self.amp, other.amp, rtol=rtol, atol=atol))

    def __repr__(self):
        terms = [f"{self[m]:.6g}|{','.join(map(str, m))}>" for m in self.support()]
        return f"FockState(d={self.d}, " + (" + ".join(terms) or "0") + ")"


def modes_of(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def parity_sector(phi: FockState, atol: float = 0.0) -> str:
    """'even', 'odd' or 'mixed' from the popcounts of the nonzero amplitudes.

    The zero state is reported as even.
    """
    nz = np.abs(phi.amp) > atol
    odd = popcounts(phi.d) % 2 == 1
    has_odd = bool(np.any(nz & odd))
    has_even = bool(np.any(nz & ~odd))
    if has_odd and has_even:
        return MIXED
    return ODD if has_odd else EVEN


def _check_mode(i: int, d: int) -> None:
    if not 0 <= i < d:
        raise IndexError(f"mode index {i} out of range for d={d}")


def create(i: int, phi: FockState) -> FockState:
    """Apply the creation operator of mode ``i``."""
    _check_mode(i, phi.d)
    src, signs = _ladder_tables(phi.d, i)
    out = np.zeros_like(phi.amp)
    out[src | (1 << i)] = signs * phi.amp[src]
    return FockState(phi.d, out)


def annihilate(i: int, phi: FockState) -> FockState:
    """Apply the annihilation operator of mode ``i`` (adjoint of :func:`create`)."""
    _check_mode(i, phi.d)
    src, signs = _ladder_tables(phi.d, i)
    out = np.zeros_like(phi.amp)
    out[src] = signs * phi.amp[src | (1 << i)]
    return FockState(phi.d, out)


def shuffle_sign(s: int, t: int) -> int:
    """Sign of merging ascending mode lists ``s`` then ``t`` (bitmasks) into one.

    Counts pairs ``(a in s, b in t)`` with ``a > b``; returns 0 if they overlap.
    """
    if s & t:
        return 0
    inversions = 0
    for a in modes_of(s):
        inversions += (t & ((1 << a) - 1)).bit_count()
    return -1 if inversions % 2 else 1


def wedge(phi: FockState, psi: FockState) -> FockState:
    """Exterior product ``phi ^ psi``."""
    phi._like(psi)
    d = phi.d
    masks = np.arange(1 << d, dtype=np.int64)
    out = np.zeros(1 << d, dtype=complex)
    for s in np.flatnonzero(phi.amp):
        s = int(s)
        ok = (masks & s) == 0
        t = masks[ok]
        inv = np.zeros(t.shape, dtype=np.int64)
        for a in modes_of(s):
            inv += np.bitwise_count((t & ((1 << a) - 1)).astype(np.uint32))
        sign = np.where(inv % 2 == 0, 1.0, -1.0)
        out[t | s] += phi.amp[s] * sign * psi.amp[t]
    return FockState(d, out)


def transpose(phi: FockState) -> FockState:
    """Reverse every monomial: the ``k``-particle part gets ``(-1)^(k(k-1)/2)``."""
    k = popcounts(phi.d)
    sign = np.where((k * (k - 1) // 2) % 2 == 0, 1, -1)
    return FockState(phi.d, sign * phi.amp)


def top_coefficient(phi: FockState) -> complex:
    return complex(phi.amp[-1])


def hermitian_inner(phi: FockState, psi: FockState) -> complex:
    """``<phi|psi>``, conjugate-linear in ``phi``."""
    phi._like(psi)
    return complex(np.vdot(phi.amp, psi.amp))


def norm(phi: FockState) -> float:
    return float(np.linalg.norm(phi.amp))


def random_state(d: int, sector: str = EVEN, seed=None) -> FockState:
    """I.i.d. standard complex normal amplitudes on the basis of ``sector``.

    ``sector='mixed'`` fills the whole Fock space.
    """
    _check_modes(d, allow_large=True)
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal(1 << d) + 1j * rng.standard_normal(1 << d)) / np.sqrt(2)
    parity = popcounts(d) % 2
    if sector == EVEN:
        z = np.where(parity == 0, z, 0)
    elif sector == ODD:
        z = np.where(parity == 1, z, 0)
    elif sector != MIXED:
        raise ValueError(f"unknown sector {sector!r}")
    return FockState(d, z)


def slater(d: int, vectors) -> FockState:
    """``v_1^+ v_2^+ ... v_k^+ |0>`` for one-particle vectors given as rows."""
    out = FockState.vacuum(d)
    for v in reversed(list(vectors)):
        out = apply_creation_vector(np.asarray(v, dtype=complex), out)
    return out


def apply_creation_vector(u: np.ndarray, phi: FockState) -> FockState:
    """``sum_i u_i c_i^+ phi``."""
    out = np.zeros_like(phi.amp)
    for i, ui in enumerate(u):
        if ui != 0:
            out = out + ui * create(i, phi).amp
    return FockState(phi.d, out)
