"""Two- and three-qubit states inside the fermionic Fock space.

Three qubits fit into six modes in two ways: as single-occupancy three-fermion
states (odd sector) and as paired, double-occupancy states (even sector).
Local SLOCC gates become Spin transformations in both pictures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import logm

from .fock import FockState
from .invariants import kp_rank, matrix_rank, q_invariants
from .spin import SpinGenerator, apply_exp
from .tensors import even_d6_state, odd_d6_coords, pfaffian

GHZ = "GHZ"
W = "W"
BISEP = "bisep"
SEP = "sep"
NULL = "null"

KP_RANK_LABEL = {6: GHZ, 3: W, 1: BISEP, 0: SEP}


def _phi(Phi) -> np.ndarray:
    Phi = np.asarray(Phi, dtype=complex)
    if Phi.shape != (2, 2, 2):
        raise ValueError(f"three-qubit amplitudes must have shape (2, 2, 2), got {Phi.shape}")
    return Phi


def embed_two_qubit_d4(x) -> FockState:
    """``sum_ij x_ij c_i^+ c_{j+2}^+ |0>`` on four modes."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (2, 2):
        raise ValueError("two-qubit amplitudes must have shape (2, 2)")
    return FockState.from_dict(4, {(i, j + 2): x[i, j] for i in range(2) for j in range(2)})


def embed_three_qubit_odd(Phi) -> FockState:
    """``sum Phi_ijk c_i^+ c_{j+2}^+ c_{k+4}^+ |0>``: one fermion per qubit pair of modes."""
    Phi = _phi(Phi)
    terms = {}
    for i in range(2):
        for j in range(2):
            for k in range(2):
                terms[(i, j + 2, k + 4)] = Phi[i, j, k]
    return FockState.from_dict(6, terms)


def embed_three_qubit_even(Phi) -> FockState:
    """Paired embedding: qubit ``n`` flipped to 1 occupies the mode pair ``(n, n+3)``."""
    Phi = _phi(Phi)
    y = np.zeros((6, 6), dtype=complex)
    x = np.zeros((6, 6), dtype=complex)
    for n, (ya, xa) in enumerate([((1, 0, 0), (0, 1, 1)), ((0, 1, 0), (1, 0, 1)), ((0, 0, 1), (1, 1, 0))]):
        y[n, n + 3] = Phi[ya]
        x[n, n + 3] = -Phi[xa]
    y = y - y.T
    x = x - x.T
    return even_d6_state(Phi[0, 0, 0], y, x, -Phi[1, 1, 1])


def apply_local(G1, G2, G3, Phi) -> np.ndarray:
    """Local transformation of the basis kets, ``|i> -> sum_k G1[i, k] |k>`` per qubit.

    This is the convention used for creation operators throughout the package
    (``c_i^+ -> sum_k G[i, k] c_k^+``); amplitudes transform with the transposes,
    ``Phi'_{ijk} = G1[a, i] G2[b, j] G3[c, k] Phi_{abc}``.
    """
    return np.einsum("ai,bj,ck,abc->ijk", G1, G2, G3, _phi(Phi))


def slocc_gate_generator(kind: str, a: complex, b: complex, c: complex) -> SpinGenerator:
    """Generator whose exponential realizes a local gate on the even embedding.

    ``'B'`` gives upper unitriangular factors ``[[1, a], [0, 1]]``, ``'beta'`` lower
    unitriangular ``[[1, 0], [a, 1]]`` and ``'A'`` the diagonal ``diag(a, 1/a)``.
    """
    p = np.array([a, b, c], dtype=complex)
    M = np.zeros((6, 6), dtype=complex)
    if kind == "B":
        M[:3, 3:] = -np.diag(p)
        return SpinGenerator(6, None, M - M.T, None)
    if kind == "beta":
        M[:3, 3:] = np.diag(p)
        return SpinGenerator(6, None, None, M - M.T)
    if kind == "A":
        if np.any(p == 0):
            raise ValueError("diagonal gate parameters must be nonzero")
        logs = -np.log(p)
        return SpinGenerator(6, np.diag(np.concatenate([logs, logs])), None, None)
    raise ValueError(f"unknown gate kind {kind!r}")


def slocc_gate(kind: str, a, b, c):
    """The three 2x2 local factors implemented by :func:`slocc_gate_generator`."""
    out = []
    for t in (a, b, c):
        if kind == "B":
            out.append(np.array([[1, t], [0, 1]], dtype=complex))
        elif kind == "beta":
            out.append(np.array([[1, 0], [t, 1]], dtype=complex))
        elif kind == "A":
            out.append(np.diag([t, 1 / t]).astype(complex))
        else:
            raise ValueError(f"unknown gate kind {kind!r}")
    return out


def block_gl_generator(G1, G2, G3) -> SpinGenerator:
    """Particle-number preserving generator with ``exp(A) = diag(G1, G2, G3)`` on the
    mode pairs ``(0,1), (2,3), (4,5)``.

    On the odd embedding it acts as :func:`apply_local` times the scalar
    :func:`block_gl_scalar`.
    """
    blocks = []
    for G in (G1, G2, G3):
        G = np.asarray(G, dtype=complex)
        if abs(np.linalg.det(G)) < 1e-14:
            raise ValueError("local factors must be invertible")
        blocks.append(logm(G))
    A = np.zeros((6, 6), dtype=complex)
    for n, L in enumerate(blocks):
        A[2 * n:2 * n + 2, 2 * n:2 * n + 2] = L
    return SpinGenerator(6, A, None, None)


def block_gl_scalar(gen: SpinGenerator) -> complex:
    """``exp(-Tr(A)/2)``, the branch-fixed ``det(G)^(-1/2)`` picked up by the embedding."""
    return complex(np.exp(-0.5 * np.trace(gen.A)))


def transport_odd(G1, G2, G3, Phi) -> tuple[FockState, complex]:
    gen = block_gl_generator(G1, G2, G3)
    return apply_exp(gen, embed_three_qubit_odd(Phi)), block_gl_scalar(gen)


def cayley_hyperdeterminant(Phi) -> complex:
    """Cayley's degree-4 hyperdeterminant of a 2x2x2 array."""
    p = _phi(Phi)
    a000, a001, a010, a011 = p[0, 0, 0], p[0, 0, 1], p[0, 1, 0], p[0, 1, 1]
    a100, a101, a110, a111 = p[1, 0, 0], p[1, 0, 1], p[1, 1, 0], p[1, 1, 1]
    return complex(
        a000**2 * a111**2 + a001**2 * a110**2 + a010**2 * a101**2 + a100**2 * a011**2
        - 2 * (a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111 + a000 * a100 * a011 * a111
               + a001 * a010 * a101 * a110 + a001 * a100 * a011 * a110 + a010 * a100 * a011 * a101)
        + 4 * (a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111)
    )


def three_tangle(Phi) -> float:
    """``4 |Det|`` of the normalized state."""
    p = _phi(Phi)
    n2 = np.sum(np.abs(p) ** 2)
    if n2 == 0:
        return 0.0
    return float(4 * abs(cayley_hyperdeterminant(p / np.sqrt(n2))))


def flattening_ranks(Phi, rtol: float = 1e-9) -> tuple[int, int, int]:
    p = _phi(Phi)
    return tuple(matrix_rank(np.moveaxis(p, n, 0).reshape(2, 4), rtol) for n in range(3))


def three_qubit_class(Phi, rtol: float = 1e-8) -> str:
    """GHZ / W / bisep / sep / null from the hyperdeterminant and the flattening ranks."""
    p = _phi(Phi)
    n2 = float(np.sum(np.abs(p) ** 2))
    if n2 == 0 or np.sqrt(n2) <= 1e-300:
        return NULL
    if abs(cayley_hyperdeterminant(p)) > rtol * n2**2:
        return GHZ
    ranks = flattening_ranks(p)
    if ranks == (2, 2, 2):
        return W
    if ranks == (1, 1, 1):
        return SEP
    return BISEP


def hyperdeterminant_kappa() -> complex:
    """Ratio ``q_2(embed_even(Phi)) / 6 / Det(Phi)`` fixed at the GHZ state."""
    ghz = np.zeros((2, 2, 2))
    ghz[0, 0, 0] = ghz[1, 1, 1] = 1
    return q_invariants(embed_three_qubit_even(ghz), 2)[1] / 6 / cayley_hyperdeterminant(ghz)


@dataclass
class DualityReport:
    qubit_class: str
    odd_class: str
    kp_rank: int | None
    even_label: str
    even_moment_rank: int
    q2_over_6: complex
    hyperdet: complex
    consistent: bool


EXPECTED_EVEN_LABEL = {GHZ: "rank4", W: "rank3", BISEP: "rank2", SEP: "rank1", NULL: "rank0"}


def duality_check(Phi) -> DualityReport:
    from .classify import classify_d6_even  # classify imports embed for canonical states

    Phi = _phi(Phi)
    qc = three_qubit_class(Phi)
    if qc == NULL:
        rank, odd_class = None, NULL
    else:
        _, P, _ = odd_d6_coords(embed_three_qubit_odd(Phi))
        rank = kp_rank(P)
        odd_class = KP_RANK_LABEL.get(rank, f"kp_rank{rank}")
    rep = classify_d6_even(embed_three_qubit_even(Phi))
    consistent = odd_class == qc and rep.orbit_label == EXPECTED_EVEN_LABEL[qc]
    return DualityReport(qc, odd_class, rank, rep.orbit_label, rep.moment_rank, rep.q2 / 6,
                         cayley_hyperdeterminant(Phi), consistent)


def two_qubit_measure(x) -> float:
    """``2 |Pf(xi)|`` of the embedded normalized state (equals the concurrence)."""
    from .tensors import even_d4_coords

    x = np.asarray(x, dtype=complex)
    n = np.linalg.norm(x)
    if n == 0:
        return 0.0
    _, xi, _ = even_d4_coords(embed_two_qubit_d4(x / n))
    return float(2 * abs(pfaffian(xi)))
