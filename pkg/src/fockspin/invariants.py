"""Spin-invariant pairing, the moment map and the polynomial invariants built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import factorial

import numpy as np

from .clifford import CliffordVector
from .fock import (
    EVEN,
    MIXED,
    FockState,
    annihilate,
    create,
    norm,
    parity_sector,
    popcounts,
)
from .tensors import (
    dual_tensor,
    even_d5_coords,
    grade_tensor,
    levi_civita,
    pfaffian,
)

__all__ = [
    "MomentMap",
    "InvariantReport",
    "mukai_pairing",
    "moment_map",
    "moment_map_explicit",
    "moment_blocks_even_d6",
    "moment_blocks_odd_d6",
    "q_invariants",
    "quartic_even_closed",
    "quartic_odd_closed",
    "k_matrix",
    "kp_rank",
    "matrix_rank",
    "pfaffian",
    "vector_covariant",
    "vector_covariant_closed_d5",
    "invariant_report",
]

RANK_RTOL = 1e-9
ZERO_RTOL = 1e-10


@lru_cache(maxsize=None)
def _pairing_signs(d: int) -> np.ndarray:
    """Sign of ``(|S>^t ^ |S^c>)_top`` for every bitmask ``S``."""
    full = (1 << d) - 1
    k = popcounts(d)
    masks = np.arange(1 << d, dtype=np.int64)
    comp = full ^ masks
    inv = np.zeros(1 << d, dtype=np.int64)
    for a in range(d):
        has_a = (masks >> a) & 1
        below = np.bitwise_count((comp & ((1 << a) - 1)).astype(np.uint32)).astype(np.int64)
        inv += has_a * below
    exponent = k * (k - 1) // 2 + inv
    signs = np.where(exponent % 2 == 0, 1.0, -1.0)
    signs.flags.writeable = False
    return signs


def mukai_pairing(phi: FockState, psi: FockState) -> complex:
    """``(phi, psi)``: top coefficient of ``transpose(phi) ^ psi``."""
    phi._like(psi)
    return complex(np.sum(_pairing_signs(phi.d) * phi.amp * psi.amp[::-1]))


@dataclass(frozen=True, eq=False)
class MomentMap:
    """Unscaled moment-map matrix ``M = [[A, beta], [B, -A.T]]``.

    The normalized element of so(2d) is ``M / (8 (d - 1))``.
    """

    d: int
    A: np.ndarray
    B: np.ndarray
    beta: np.ndarray
    scale: float = 1.0  # |phi|^2 of the source state, for absolute zero tests

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.A, self.beta], [self.B, -self.A.T]])

    @property
    def normalized(self) -> np.ndarray:
        return self.matrix / (8 * (self.d - 1))

    def rank(self, rtol: float = RANK_RTOL) -> int:
        """Numerical rank; a matrix that passes :meth:`is_zero` has rank 0."""
        if self.is_zero():
            return 0
        return matrix_rank(self.matrix, rtol)

    def is_zero(self, scale: float | None = None, rtol: float = ZERO_RTOL) -> bool:
        scale = self.scale if scale is None else scale
        return bool(np.max(np.abs(self.matrix)) <= rtol * scale)


def matrix_rank(M: np.ndarray, rtol: float = RANK_RTOL) -> int:
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def _fixed_sector(phi: FockState) -> str:
    sector = parity_sector(phi)
    if sector == MIXED:
        raise ValueError("moment map needs a state in a fixed parity sector")
    return sector


def moment_map(phi: FockState) -> MomentMap:
    """Blocks ``A[i,k] = (c_i^+ c_k phi, phi) - (1/2) delta_ik (phi, phi)``, ``B[j,k] = (c_j c_k phi, phi)``,
    ``beta[i,l] = (c_i^+ c_l^+ phi, phi)``.

    For ``d`` divisible by four every block vanishes identically; odd ``d`` is
    rejected because the pairing does not pair a sector with itself.
    """
    _fixed_sector(phi)
    d = phi.d
    if d % 2:
        raise ValueError("the moment map needs even d (use vector_covariant for odd d)")
    ann = [annihilate(k, phi) for k in range(d)]
    cre = [create(k, phi) for k in range(d)]
    A = np.zeros((d, d), dtype=complex)
    B = np.zeros((d, d), dtype=complex)
    beta = np.zeros((d, d), dtype=complex)
    for i in range(d):
        for k in range(d):
            A[i, k] = mukai_pairing(create(i, ann[k]), phi)
    # the lift of A carries -Tr(A)/2; it drops out when (phi, phi) = 0, i.e. d = 2 mod 4
    A -= 0.5 * mukai_pairing(phi, phi) * np.eye(d)
    for j, k in combinations(range(d), 2):
        B[j, k] = mukai_pairing(annihilate(j, ann[k]), phi)
        B[k, j] = -B[j, k]
        beta[j, k] = mukai_pairing(create(j, cre[k]), phi)
        beta[k, j] = -beta[j, k]
    return MomentMap(d, A, B, beta, norm(phi) ** 2)


def moment_map_explicit(phi: FockState) -> MomentMap:
    """Moment map from amplitude/dual-amplitude contractions (d in {2, 6}).

    Works only with the antisymmetric coefficient tensors, never with operators,
    and serves as a cross-check of :func:`moment_map`.
    """
    sector = _fixed_sector(phi)
    d = phi.d
    if d % 4 != 2 or d > 6:
        raise ValueError("explicit moment map implemented for d = 2 and d = 6")
    p = 0 if sector == EVEN else 1
    A = np.zeros((d, d), dtype=complex)
    B = np.zeros((d, d), dtype=complex)
    beta = np.zeros((d, d), dtype=complex)

    def contract(t, u, n_free_t, n_free_u):
        # sum over all trailing indices of t against trailing indices of u
        nt, nu = t.ndim, u.ndim
        return np.tensordot(t, u, axes=(list(range(n_free_t, nt)), list(range(n_free_u, nu))))

    for m in range(0, d // 2 + 1):
        n = 2 * m + p  # rank of the dual amplitude
        if n > d:
            continue
        dual = dual_tensor(phi, n)
        sgn = (-1) ** m
        if n >= 1:
            # A^i_k = sgn/(n-1)! phi^(n)_{k j..} dual^{i j..}
            t = grade_tensor(phi, n)
            A += sgn / factorial(n - 1) * contract(dual, t, 1, 1)
        if n + 2 <= d:
            # B_jk = sgn/n! phi^(n+2)_{k j i..} dual^{i..}
            t = grade_tensor(phi, n + 2)
            B += sgn / factorial(n) * np.tensordot(t, dual, axes=(list(range(2, n + 2)), list(range(n)))).T
        if n >= 2:
            # beta^il = sgn/(n-2)! phi^(n-2)_{j..} dual^{i l j..}
            t = grade_tensor(phi, n - 2)
            beta += sgn / factorial(n - 2) * np.tensordot(dual, t, axes=(list(range(2, n)), list(range(n - 2))))
    return MomentMap(d, EXPLICIT_SIGN * A, EXPLICIT_SIGN * B, EXPLICIT_SIGN * beta, norm(phi) ** 2)


# Reconciles the contraction formulas with the operator definition of the blocks;
# checked to agree with sign +1 for d = 2 and 6, both sectors.
EXPLICIT_SIGN = 1.0


def moment_blocks_even_d6(eta, y, x, xi) -> MomentMap:
    """Closed-form blocks for ``eta |0> + y + x + xi`` in six modes."""
    eps = levi_civita(6)
    tr = np.trace(x @ y)
    A = 2 * x @ y - (0.5 * tr + eta * xi) * np.eye(6)
    B = 0.25 * np.einsum("abcd,abcdjk->jk", np.einsum("ab,cd->abcd", x, x), eps) - 2 * xi * y
    beta = 0.25 * np.einsum("abcd,abcdil->il", np.einsum("ab,cd->abcd", y, y), eps) - 2 * eta * x
    return MomentMap(6, A, B, beta)


def k_matrix(P: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """``K[i, k] = (1/(3! 2!)) P_kab P_cde eps^{iabcde}`` for a 6x6x6 three-form."""
    P = np.asarray(P, dtype=complex)
    if P.shape != (6, 6, 6):
        raise ValueError("K_P is defined for a three-form on six modes")
    scale = max(1.0, float(np.max(np.abs(P))))
    for perm in ((1, 0, 2), (0, 2, 1), (2, 1, 0)):
        if np.max(np.abs(P + P.transpose(perm))) > tol * scale:
            raise ValueError("P must be totally antisymmetric")
    return np.einsum("kab,cde,iabcde->ik", P, P, levi_civita(6)) / 12.0


def kp_rank(P: np.ndarray, rtol: float = RANK_RTOL) -> int:
    """Rank of ``K_P``; zero when ``|K_P|`` is below ``rtol |P|^2`` (K_P is quadratic in P)."""
    K = k_matrix(P)
    scale = float(np.max(np.abs(P))) ** 2
    if np.max(np.abs(K)) <= rtol * scale:
        return 0
    return matrix_rank(K, rtol)


def moment_blocks_odd_d6(u, P, w) -> MomentMap:
    K = k_matrix(P)
    A = 2 * np.outer(w, u) - K - (w @ u) * np.eye(6)
    B = 2 * np.einsum("akj,a->jk", P, w)
    beta = (2 / 6) * np.einsum("a,bcd,ilbcda->il", u, P, levi_civita(6))
    return MomentMap(6, A, B, beta)


def q_invariants(phi: FockState, k_max: int = 4) -> list[complex]:
    """``q_k = (8(d-1))^2 / 2 * Tr(T_phi^k)`` for ``k = 1..k_max``, ``T_phi = M / (8(d-1))``."""
    d = phi.d
    if d % 4 != 2:
        raise ValueError("q_k invariants need d = 2 mod 4")
    M = moment_map(phi).matrix
    c = 8 * (d - 1)
    out = []
    P = np.eye(2 * d, dtype=complex)
    for k in range(1, k_max + 1):
        P = P @ M
        out.append(complex(0.5 * c ** (2 - k) * np.trace(P)))
    return out


def quartic_even_closed(eta, y, x, xi) -> complex:
    """Quartic invariant (``q_2 / 6``) of an even six-mode state in closed form."""
    y = np.asarray(y, dtype=complex)
    x = np.asarray(x, dtype=complex)
    tyx = np.trace(y @ x)
    return complex(
        (eta * xi + 0.5 * tyx) ** 2
        + 4 * eta * pfaffian(x)
        + 4 * xi * pfaffian(y)
        - 0.5 * (tyx ** 2 - 2 * np.trace(y @ x @ y @ x))
    )


def quartic_odd_closed(u, P, w, cross: float = -12.0) -> complex:
    """``q_2`` of an odd six-mode state: ``6 (w.u)^2 + cross * w^i u_j K^j_i + Tr K^2``.

    ``cross = -12`` collects ``Tr(A^2)`` (contributing -4) and ``Tr(beta B)``
    (contributing -8); any other value breaks invariance when ``u, w != 0``.
    """
    u = np.asarray(u, dtype=complex)
    w = np.asarray(w, dtype=complex)
    K = k_matrix(P)
    return complex(6 * (w @ u) ** 2 + cross * (w @ K.T @ u) + np.trace(K @ K))


def vector_covariant(phi: FockState) -> CliffordVector:
    """The vector ``v`` with ``form(x, v) = (x phi, phi)`` for every ``x`` (odd ``d``)."""
    _fixed_sector(phi)
    d = phi.d
    if d % 2 == 0:
        raise ValueError("the vector covariant is defined for odd d")
    lower = np.array([mukai_pairing(annihilate(i, phi), phi) for i in range(d)])
    upper = np.array([mukai_pairing(create(i, phi), phi) for i in range(d)])
    # form(x, v) = (x.u . v.v + v.u . x.v) / 2
    return CliffordVector(d, 2 * lower, 2 * upper)


def vector_covariant_closed_d5(eta, xi, chi):
    """Closed forms of ``((c_i phi, phi), (c_i^+ phi, phi))`` for an even five-mode state."""
    xi = np.asarray(xi, dtype=complex)
    chi = np.asarray(chi, dtype=complex)
    lower = 2 * xi @ chi
    upper = VCOV_ETA_COEFF * eta * chi - 0.25 * np.einsum("jk,lm,ijklm->i", xi, xi, levi_civita(5))
    return lower, upper


# Coefficient of eta*chi in the upper components, fixed by the defining relation
# (u, v) = (u phi, phi) with the amplitude normalization of even_d5_state.
VCOV_ETA_COEFF = 2.0


@dataclass
class InvariantReport:
    d: int
    sector: str
    pairing_self: complex
    qk: list = field(default_factory=list)
    moment_rank: int | None = None
    moment_zero: bool | None = None
    vphi: np.ndarray | None = None


def invariant_report(phi: FockState, k_max: int = 4) -> InvariantReport:
    sector = _fixed_sector(phi)
    d = phi.d
    rep = InvariantReport(d, sector, mukai_pairing(phi, phi))
    if d % 2 == 0:
        M = moment_map(phi)
        rep.moment_rank = M.rank()
        rep.moment_zero = M.is_zero()
        if d % 4 == 2:
            rep.qk = q_invariants(phi, k_max)
    else:
        rep.vphi = vector_covariant(phi).as_array()
    return rep


def d5_closed_from_state(phi: FockState):
    return vector_covariant_closed_d5(*even_d5_coords(phi))
