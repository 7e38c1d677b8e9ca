"""Antisymmetric tensors, Levi-Civita contractions and the standard state parametrizations.

A ``k``-particle component is described by the totally antisymmetric tensor
``phi_{i1..ik}`` normalized so that ``|phi_k> = (1/k!) phi_{i1..ik} c_{i1}^+ ... c_{ik}^+ |0>``;
its entry on an ascending index tuple is exactly the stored amplitude.
The dual tensor of rank ``n`` is defined by
``phi_{I} = (1/n!) dual^{J} eps_{J I}`` for the ``d - n`` particle component.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

import numpy as np

from .fock import FockState


def perm_sign(p) -> int:
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def levi_civita(d: int) -> np.ndarray:
    eps = np.zeros((d,) * d)
    for p in permutations(range(d)):
        eps[p] = perm_sign(p)
    eps.flags.writeable = False
    return eps


def antisymmetric_from_ascending(d: int, k: int, values: dict) -> np.ndarray:
    """Full rank-``k`` antisymmetric tensor from ``{ascending tuple: value}``."""
    t = np.zeros((d,) * k, dtype=complex)
    if k == 0:
        t[()] = values.get((), 0)
        return t
    for s, val in values.items():
        if val == 0:
            continue
        for p in permutations(range(k)):
            t[tuple(s[j] for j in p)] = perm_sign(p) * val
    return t


def grade_tensor(phi: FockState, k: int) -> np.ndarray:
    d = phi.d
    values = {}
    for s in combinations(range(d), k):
        values[s] = phi.amp[sum(1 << m for m in s)]
    return antisymmetric_from_ascending(d, k, values)


def tensor_to_state(d: int, k: int, t: np.ndarray) -> FockState:
    """Inverse of :func:`grade_tensor` (reads the ascending entries)."""
    amp = np.zeros(1 << d, dtype=complex)
    for s in combinations(range(d), k):
        amp[sum(1 << m for m in s)] = t[s] if k else t[()]
    return FockState(d, amp)


def dual_tensor(phi: FockState, n: int) -> np.ndarray:
    """Rank-``n`` dual of the ``d - n`` particle component."""
    d = phi.d
    t = grade_tensor(phi, d - n)
    eps = levi_civita(d)
    return np.tensordot(eps, t, axes=(list(range(n, d)), list(range(d - n)))) / factorial(d - n)


def state_from_dual(d: int, n: int, dual: np.ndarray) -> FockState:
    """The ``d - n`` particle state whose rank-``n`` dual is ``dual``."""
    eps = levi_civita(d)
    t = np.tensordot(dual, eps, axes=(list(range(n)), list(range(n)))) / factorial(n)
    return tensor_to_state(d, d - n, t)


def cross(C: np.ndarray, D: np.ndarray) -> np.ndarray:
    """``(C x D)^{ab} = (1/4) eps^{abcdef} C_cd D_ef`` for 6x6 antisymmetric matrices."""
    return 0.25 * np.einsum("abcdef,cd,ef->ab", levi_civita(6), C, D)


# --- d = 6 even: eta |0> + (1/2) y_ab c^a c^b |0> + x (dual, 4 particles) + xi (dual, 6 particles)

def even_d6_coords(phi: FockState):
    """``(eta, y, x, xi)`` of a six-mode state (odd components are ignored)."""
    _need_d(phi, 6)
    eta = phi.amp[0]
    y = grade_tensor(phi, 2)
    x = dual_tensor(phi, 2)
    xi = complex(dual_tensor(phi, 0))
    return complex(eta), y, x, xi


def even_d6_state(eta, y, x, xi) -> FockState:
    y = np.asarray(y, dtype=complex)
    x = np.asarray(x, dtype=complex)
    amp = (
        tensor_to_state(6, 2, y).amp
        + state_from_dual(6, 2, x).amp
        + state_from_dual(6, 0, np.asarray(xi, dtype=complex)).amp
    )
    amp[0] += eta
    return FockState(6, amp)


# --- d = 6 odd: u_a c^a |0> + (1/3!) P_abc ... + (1/5!) w^l eps_{l abcde} ...

def odd_d6_coords(psi: FockState):
    _need_d(psi, 6)
    return grade_tensor(psi, 1), grade_tensor(psi, 3), dual_tensor(psi, 1)


def odd_d6_state(u, P, w) -> FockState:
    amp = (
        tensor_to_state(6, 1, np.asarray(u, dtype=complex)).amp
        + tensor_to_state(6, 3, np.asarray(P, dtype=complex)).amp
        + state_from_dual(6, 1, np.asarray(w, dtype=complex)).amp
    )
    return FockState(6, amp)


# --- d = 4: even (eta, xi_ij, rho), odd (v_i, P_ijk)

def even_d4_coords(phi: FockState):
    _need_d(phi, 4)
    return complex(phi.amp[0]), grade_tensor(phi, 2), complex(phi.amp[-1])


def even_d4_state(eta, xi, rho) -> FockState:
    amp = tensor_to_state(4, 2, np.asarray(xi, dtype=complex)).amp
    amp[0] += eta
    amp[-1] += rho
    return FockState(4, amp)


def odd_d4_coords(psi: FockState):
    _need_d(psi, 4)
    return grade_tensor(psi, 1), grade_tensor(psi, 3)


# --- d = 5 even: eta, xi_ij, chi^n (dual of the 4-particle part)

def even_d5_coords(phi: FockState):
    _need_d(phi, 5)
    return complex(phi.amp[0]), grade_tensor(phi, 2), dual_tensor(phi, 1)


def even_d5_state(eta, xi, chi) -> FockState:
    amp = (
        tensor_to_state(5, 2, np.asarray(xi, dtype=complex)).amp
        + state_from_dual(5, 1, np.asarray(chi, dtype=complex)).amp
    )
    amp[0] += eta
    return FockState(5, amp)


def pfaffian(M: np.ndarray, tol: float = 1e-12) -> complex:
    """Pfaffian by recursive expansion along the first row (sum over perfect matchings)."""
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("pfaffian needs a square matrix")
    if n % 2:
        raise ValueError("pfaffian needs an even dimension")
    scale = max(1.0, float(np.max(np.abs(M), initial=0.0)))
    if np.max(np.abs(M + M.T), initial=0.0) > tol * scale:
        raise ValueError("pfaffian needs an antisymmetric matrix")
    return _pf(M, tuple(range(n)))


def _pf(M, idx) -> complex:
    if not idx:
        return 1.0
    first, rest = idx[0], idx[1:]
    total = 0.0
    for j, k in enumerate(rest):
        if M[first, k] == 0:
            continue
        sub = rest[:j] + rest[j + 1:]
        total += (-1) ** j * M[first, k] * _pf(M, sub)
    return complex(total)


def _need_d(phi, d):
    if phi.d != d:
        raise ValueError(f"expected a {d}-mode state, got d={phi.d}")
