"""Pure-spinor detection and Spin-orbit classification for up to six modes."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field

import numpy as np

from . import embed
from .clifford import CliffordVector
from .fock import EVEN, MIXED, ODD, FockState, annihilate, create, norm, parity_sector
from .invariants import (
    RANK_RTOL,
    kp_rank,
    moment_map,
    mukai_pairing,
    q_invariants,
    vector_covariant,
)
from .spin import SpinGenerator, apply_exp, random_generator, spinor_operator
from .tensors import even_d6_state, odd_d6_coords

TOL_ENV = "FOCKSPIN_TOL"
KERNEL_RTOL = 1e-9


def default_tol() -> float:
    """Relative zero-test tolerance; ``FOCKSPIN_TOL`` overrides the default 1e-8."""
    return float(os.environ.get(TOL_ENV, "1e-8"))


class UnsupportedCase(ValueError):
    """No classifier exists for this (d, sector) combination."""


@dataclass
class ClassificationReport:
    d: int
    sector: str
    is_pure: bool
    kernel_dim: int
    moment_rank: int | None
    q2: complex | None
    orbit_label: str
    invariants: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("q2",):
            if out[key] is not None:
                out[key] = [out[key].real, out[key].imag]
        return out


def annihilator_kernel(phi: FockState, rtol: float = KERNEL_RTOL) -> tuple[int, list[CliffordVector]]:
    """Dimension and an orthonormal basis of ``{x : x phi = 0}``."""
    if phi.is_zero():
        raise ValueError("the annihilator of the zero state is everything")
    d = phi.d
    cols = [create(i, phi).amp for i in range(d)] + [annihilate(i, phi).amp for i in range(d)]
    L = np.stack(cols, axis=1)
    _, s, vh = np.linalg.svd(L)
    rank = int(np.sum(s > rtol * s[0]))
    basis = [CliffordVector.from_array(row.conj()) for row in vh[rank:]]
    return 2 * d - rank, basis


def is_pure_spinor(phi: FockState, rtol: float = KERNEL_RTOL) -> bool:
    return annihilator_kernel(phi, rtol)[0] == phi.d


def pure_spinor_generate(lam: complex, B, vectors, d: int | None = None) -> FockState:
    """``lam * exp(Bhat) v_1^+ ... v_k^+ |0>`` with ``Bhat = (1/2) B_ij c_i^+ c_j^+``."""
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    B = np.asarray(B, dtype=complex)
    d = B.shape[0] if d is None else d
    vecs = np.asarray(vectors, dtype=complex).reshape(-1, d)
    if len(vecs) and np.linalg.matrix_rank(vecs) < len(vecs):
        raise ValueError("the one-particle vectors must be linearly independent")
    phi = FockState.vacuum(d)
    for v in vecs[::-1]:
        phi = FockState(d, sum(v[i] * create(i, phi).amp for i in range(d)))
    # exp(T) with T = -Bhat for generator block -B
    return lam * apply_exp(SpinGenerator(d, None, -B, None), phi)


def _scale(phi: FockState) -> float:
    return norm(phi)


def freudenthal_dual(phi: FockState) -> FockState:
    """``T_phi phi``, with the moment-map blocks lifted through the spinor representation."""
    M = moment_map(phi)
    gen = SpinGenerator(phi.d, M.A, M.B, M.beta)
    return FockState(phi.d, spinor_operator(gen) @ phi.amp)


def _freudenthal_chain(phi: FockState, tol: float):
    s = _scale(phi)
    kernel_dim = annihilator_kernel(phi)[0] if s > 0 else 2 * phi.d
    if s == 0:
        return "rank0", kernel_dim, 0, 0j, {}
    M = moment_map(phi)
    q2 = q_invariants(phi, 2)[1]
    dual = freudenthal_dual(phi)
    inv = {
        "q2_over_6": [float((q2 / 6).real), float((q2 / 6).imag)],
        "dual_norm": norm(dual) / s**3,
        "moment_max": float(np.max(np.abs(M.matrix))) / s**2,
    }
    if abs(q2) > tol * s**4:
        label = "rank4"
    elif norm(dual) > tol * s**3:
        label = "rank3"
    elif not M.is_zero(s**2, tol):
        label = "rank2"
    else:
        label = "rank1"
    return label, kernel_dim, M.rank(), q2, inv


def classify_d6_even(phi: FockState, tol: float | None = None) -> ClassificationReport:
    tol = default_tol() if tol is None else tol
    if phi.d != 6 or parity_sector(phi) != EVEN:
        raise UnsupportedCase("classify_d6_even needs an even six-mode state")
    label, kdim, mrank, q2, inv = _freudenthal_chain(phi, tol)
    return ClassificationReport(6, EVEN, kdim == 6, kdim, mrank, q2, label, inv,
                                {"zero_rtol": tol, "rank_rtol": RANK_RTOL, "kernel_rtol": KERNEL_RTOL})


def classify_d6_odd_threefermion(P, rtol: float = RANK_RTOL) -> str:
    """GHZ / W / bisep / sep from the rank of ``K_P`` (6 / 3 / 1 / 0)."""
    P = np.asarray(P)
    if not np.any(P != 0):
        return embed.NULL
    rank = kp_rank(P, rtol)
    try:
        return embed.KP_RANK_LABEL[rank]
    except KeyError:
        raise ValueError(f"rank K_P = {rank} does not occur for a three-form") from None


def classify_d6_odd(phi: FockState, tol: float | None = None) -> ClassificationReport:
    """Same five-orbit chain as the even sector; three-fermion states also get a K_P label."""
    tol = default_tol() if tol is None else tol
    if phi.d != 6 or parity_sector(phi) != ODD:
        raise UnsupportedCase("classify_d6_odd needs an odd six-mode state")
    label, kdim, mrank, q2, inv = _freudenthal_chain(phi, tol)
    u, P, w = odd_d6_coords(phi)
    s = _scale(phi)
    if s > 0 and np.max(np.abs(u)) <= tol * s and np.max(np.abs(w)) <= tol * s:
        inv["kp_rank"] = kp_rank(P)
        inv["three_fermion_class"] = classify_d6_odd_threefermion(P)
    return ClassificationReport(6, ODD, kdim == 6, kdim, mrank, q2, label, inv,
                                {"zero_rtol": tol, "rank_rtol": RANK_RTOL, "kernel_rtol": KERNEL_RTOL})


def classify_small(phi: FockState, tol: float | None = None) -> ClassificationReport:
    """Two nonzero orbits at most: 'null', 'pure' and (d = 4, 5) 'generic'."""
    tol = default_tol() if tol is None else tol
    d = phi.d
    if d > 5:
        raise UnsupportedCase("classify_small handles d <= 5")
    sector = parity_sector(phi)
    if sector == MIXED:
        raise UnsupportedCase("mixed-parity states are not classified")
    tols = {"zero_rtol": tol, "kernel_rtol": KERNEL_RTOL}
    s = _scale(phi)
    if s == 0:
        return ClassificationReport(d, sector, False, 2 * d, None, None, "null", {}, tols)
    kdim = annihilator_kernel(phi)[0]
    inv = {}
    if d <= 3:
        generic = False
    elif d == 4:
        p = mukai_pairing(phi, phi)
        inv["pairing_self"] = [p.real, p.imag]
        generic = abs(p) > tol * s**2
    else:
        v = vector_covariant(phi).as_array()
        inv["vphi_norm"] = float(np.linalg.norm(v)) / s**2
        generic = np.linalg.norm(v) > tol * s**2
    label = "generic" if generic else "pure"
    return ClassificationReport(d, sector, kdim == d, kdim, None, None, label, inv, tols)


def classify(phi: FockState, tol: float | None = None) -> ClassificationReport:
    sector = parity_sector(phi)
    if sector == MIXED:
        raise UnsupportedCase("mixed-parity states are not classified")
    if phi.d <= 5:
        return classify_small(phi, tol)
    if phi.d == 6:
        return classify_d6_even(phi, tol) if sector == EVEN else classify_d6_odd(phi, tol)
    raise UnsupportedCase(f"no orbit classification for d = {phi.d}")


# --- canonical representatives

TABLE_D6_EVEN = {
    "rank4": (1, 1, 1, 1),
    "rank3": (1, 1, 1, 0),
    "rank2": (1, 1, 0, 0),
    "rank1": (1, 0, 0, 0),
    "rank0": (0, 0, 0, 0),
}

QUBIT_CANONICAL = {
    embed.GHZ: {(0, 0, 0): 1, (1, 1, 1): 1},
    embed.W: {(0, 0, 1): 1, (0, 1, 0): 1, (1, 0, 0): 1},
    embed.BISEP: {(0, 0, 0): 1, (0, 1, 1): 1},
    embed.SEP: {(0, 0, 0): 1},
    embed.NULL: {},
}

_ODD_RANK_TO_QUBIT = {"rank4": embed.GHZ, "rank3": embed.W, "rank2": embed.BISEP,
                      "rank1": embed.SEP, "rank0": embed.NULL}


def qubit_state(label: str) -> np.ndarray:
    Phi = np.zeros((2, 2, 2), dtype=complex)
    for idx, val in QUBIT_CANONICAL[label].items():
        Phi[idx] = val
    return Phi


def even_d6_family(a, b, c, dd) -> FockState:
    """``eta = 0``, ``y`` block diagonal with ``a, b, c``, ``x = 0``, ``xi = dd``."""
    y = np.zeros((6, 6), dtype=complex)
    for n, t in enumerate((a, b, c)):
        y[2 * n, 2 * n + 1] = t
        y[2 * n + 1, 2 * n] = -t
    return even_d6_state(0, y, np.zeros((6, 6)), dd)


@dataclass
class CanonicalForm:
    d: int
    sector: str
    label: str
    parameters: tuple
    state: FockState


def canonical_state(d: int, sector: str, label: str) -> CanonicalForm:
    key = (d, sector, label)
    if label in ("null", "rank0"):
        return CanonicalForm(d, sector, label, (), FockState.zero(d))
    if d == 6 and sector == EVEN:
        if label in TABLE_D6_EVEN:
            params = TABLE_D6_EVEN[label]
            return CanonicalForm(d, sector, label, params, even_d6_family(*params))
        if label == "ghz_like":
            return CanonicalForm(d, sector, label, (), FockState.from_dict(6, {(): 1, tuple(range(6)): 1}))
    if d == 6 and sector == ODD:
        qlabel = _ODD_RANK_TO_QUBIT.get(label, label)
        if qlabel in QUBIT_CANONICAL:
            return CanonicalForm(d, sector, label, (qlabel,), embed.embed_three_qubit_odd(qubit_state(qlabel)))
    if d <= 5 and label == "pure":
        state = FockState.vacuum(d) if sector == EVEN else FockState.basis(d, (0,))
        return CanonicalForm(d, sector, label, (), state)
    if d in (4, 5) and label == "generic":
        top = tuple(range(d))
        if d == 4 and sector == EVEN:
            state = FockState.from_dict(4, {(): 1, top: 1})
        elif d == 4:
            state = FockState.from_dict(4, {(0,): 1, (1, 2, 3): 1})
        elif sector == EVEN:
            state = FockState.from_dict(5, {(): 1, (1, 2, 3, 4): 1})
        else:
            state = FockState.from_dict(5, {(0,): 1, top: 1})
        return CanonicalForm(d, sector, label, (), state)
    raise UnsupportedCase(f"no canonical representative for {key}")


def orbit_sample(canonical: CanonicalForm | FockState, seed: int, count: int,
                 scale: float = 0.3, factors: int = 2) -> list[FockState]:
    """Images of ``canonical`` under random identity-component Spin elements.

    Each sample ``n`` uses its own generator stream ``(seed, n)`` so the result does
    not depend on evaluation order.
    """
    phi = canonical.state if isinstance(canonical, CanonicalForm) else canonical
    out = []
    for n in range(count):
        rng = np.random.default_rng([seed, n])
        psi = phi
        for _ in range(factors):
            psi = apply_exp(random_generator(phi.d, rng, scale), psi)
        out.append(psi)
    return out
