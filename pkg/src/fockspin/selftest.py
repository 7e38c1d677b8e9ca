"""Fast property checks run by ``fockspin selftest``.

Each check returns ``(name, passed, detail)``; the CLI exits nonzero if any fails.
The checks call the library through module attributes, so a fault injected into
a helper (for example the pairing sign table) is seen by every check that uses it.
"""

from __future__ import annotations

import numpy as np

from . import classify, embed, fock, invariants, spin


def _car(rng):
    d = 4
    worst = 0.0
    for s in range(1 << d):
        e = fock.FockState.basis(d, fock.modes_of(s))
        for i in range(d):
            for j in range(d):
                ac = fock.annihilate(i, fock.create(j, e)) + fock.create(j, fock.annihilate(i, e))
                target = e if i == j else fock.FockState.zero(d)
                worst = max(worst, float(np.max(np.abs((ac - target).amp))))
    return worst == 0.0, f"max CAR residual {worst:g}"


def _pairing_invariance(rng):
    d = 6
    phi = fock.random_state(d, fock.EVEN, rng)
    psi = fock.random_state(d, fock.EVEN, rng)
    g = spin.random_generator(d, rng, 0.4)
    before = invariants.mukai_pairing(phi, psi)
    after = invariants.mukai_pairing(spin.apply_exp(g, phi), spin.apply_exp(g, psi))
    err = abs(after - before) / max(1.0, abs(before))
    return err < 1e-9, f"relative change {err:.2e}"


def _pairing_symmetry(rng):
    worst = 0.0
    for d in (4, 6):
        phi = fock.random_state(d, fock.EVEN, rng)
        psi = fock.random_state(d, fock.EVEN, rng)
        sgn = 1 if d % 4 == 0 else -1
        worst = max(worst, abs(invariants.mukai_pairing(phi, psi) - sgn * invariants.mukai_pairing(psi, phi)))
    return worst < 1e-12, f"max residual {worst:.2e}"


def _d4_vanishing(rng):
    worst = 0.0
    for sector in (fock.EVEN, fock.ODD):
        phi = fock.random_state(4, sector, rng)
        worst = max(worst, float(np.max(np.abs(invariants.moment_map(phi).matrix))) / fock.norm(phi) ** 2)
    return worst < 1e-10, f"max |M| / |phi|^2 = {worst:.2e}"


def _equivariance(rng):
    d = 6
    phi = fock.random_state(d, fock.EVEN, rng)
    g = spin.random_generator(d, rng, 0.4)
    R = spin.exp_vector(g)
    lhs = invariants.moment_map(spin.apply_exp(g, phi)).matrix
    rhs = np.linalg.inv(R) @ invariants.moment_map(phi).matrix @ R
    err = float(np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs))))
    return err < 1e-8, f"relative residual {err:.2e}"


def _lie_homomorphism(rng):
    d = 4
    g1, g2 = spin.random_generator(d, rng), spin.random_generator(d, rng)
    T1, T2 = spin.spinor_operator(g1).toarray(), spin.spinor_operator(g2).toarray()
    T12 = spin.spinor_operator(spin.bracket(g1, g2)).toarray()
    err = float(np.max(np.abs(T1 @ T2 - T2 @ T1 - T12)))
    return err < 1e-10, f"max residual {err:.2e}"


def _table_ranks(rng):
    got = {}
    for label in ("rank4", "rank3", "rank2", "rank1"):
        rep = classify.classify_d6_even(classify.canonical_state(6, fock.EVEN, label).state)
        got[label] = (rep.moment_rank, rep.orbit_label)
    want = {"rank4": (12, "rank4"), "rank3": (6, "rank3"), "rank2": (2, "rank2"), "rank1": (0, "rank1")}
    return got == want, str(got)


def _hyperdeterminant(rng):
    Phi = rng.standard_normal((2, 2, 2)) + 1j * rng.standard_normal((2, 2, 2))
    q2 = invariants.q_invariants(embed.embed_three_qubit_even(Phi), 2)[1]
    det = embed.cayley_hyperdeterminant(Phi)
    err = abs(q2 / 6 - embed.hyperdeterminant_kappa() * det) / abs(det)
    return err < 1e-8, f"relative residual {err:.2e}"


def _unitarity(rng):
    g = spin.random_generator(4, rng, unitary=True)
    U = spin.exp_spinor(g)
    err = float(np.max(np.abs(U @ U.conj().T - np.eye(U.shape[0]))))
    return err < 1e-9 and spin.is_unitary_generator(g), f"max |U U^+ - 1| = {err:.2e}"


def _duality(rng):
    bad = [lab for lab in classify.QUBIT_CANONICAL if not embed.duality_check(classify.qubit_state(lab)).consistent]
    return not bad, f"inconsistent: {bad}" if bad else "all five classes consistent"


def _purity(rng):
    B = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    pure = spin.vacuum_orbit_state(spin.SpinGenerator(6, None, B - B.T, None))
    ghz = classify.canonical_state(6, fock.EVEN, "ghz_like").state
    ok = classify.is_pure_spinor(pure) and not classify.is_pure_spinor(ghz)
    return ok, "exp(-B)|0> pure, GHZ-like not pure" if ok else "purity test disagrees"


CHECKS = [
    ("car", _car),
    ("pairing_symmetry", _pairing_symmetry),
    ("pairing_invariance", _pairing_invariance),
    ("d4_moment_vanishes", _d4_vanishing),
    ("moment_equivariance", _equivariance),
    ("lie_homomorphism", _lie_homomorphism),
    ("table_ranks", _table_ranks),
    ("hyperdeterminant", _hyperdeterminant),
    ("unitarity", _unitarity),
    ("three_qubit_duality", _duality),
    ("purity", _purity),
]


def run_selftest(seed: int = 0) -> list[tuple[str, bool, str]]:
    results = []
    for n, (name, check) in enumerate(CHECKS):
        rng = np.random.default_rng([seed, n])
        try:
            ok, detail = check(rng)
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, bool(ok), detail))
    return results
