import numpy as np
import pytest

from fockspin.fock import EVEN, MIXED, ODD, FockState, random_state, slater
from fockspin.embed import embed_three_qubit_odd
from fockspin.invariants import (
    d5_closed_from_state,
    invariant_report,
    k_matrix,
    matrix_rank,
    moment_blocks_even_d6,
    moment_blocks_odd_d6,
    moment_map,
    moment_map_explicit,
    mukai_pairing,
    q_invariants,
    quartic_even_closed,
    quartic_odd_closed,
    vector_covariant,
)
from fockspin.clifford import form, metric
from fockspin.spin import apply_exp, exp_vector, random_generator
from fockspin.tensors import (
    even_d4_coords,
    even_d6_coords,
    levi_civita,
    odd_d4_coords,
    odd_d6_coords,
    odd_d6_state,
    pfaffian,
)
from fockspin.classify import even_d6_family, qubit_state


def antisym(rng, n):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return X - X.T


def three_form(rng):
    P = np.zeros((6, 6, 6), dtype=complex)
    X = rng.standard_normal((6, 6, 6)) + 1j * rng.standard_normal((6, 6, 6))
    for perm, s in [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1), ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1)]:
        P += s * X.transpose(perm)
    return P / 6


# pairing

def test_pairing_d2():
    p0, pt, q0, qt = 1.5, -0.3j, 0.2 + 1j, 2.0
    phi = FockState.from_dict(2, {(): p0, (0, 1): pt})
    psi = FockState.from_dict(2, {(): q0, (0, 1): qt})
    assert np.isclose(mukai_pairing(phi, psi), p0 * qt - pt * q0)


def test_pairing_d4_even_closed_form():
    phi = random_state(4, EVEN, 0)
    eta, xi, rho = even_d4_coords(phi)
    assert np.isclose(mukai_pairing(phi, phi), 2 * eta * rho - 2 * pfaffian(xi))


def test_pairing_d4_odd_closed_form():
    psi = random_state(4, ODD, 1)
    v, P = odd_d4_coords(psi)
    want = np.einsum("i,jkl,ijkl->", v, P, levi_civita(4)) / 3
    assert np.isclose(mukai_pairing(psi, psi), want)


@pytest.mark.parametrize("d", [2, 6])
def test_pairing_self_vanishes_d2_mod_4(d):
    for sector in (EVEN, ODD):
        assert abs(mukai_pairing(random_state(d, sector, d), random_state(d, sector, d))) < 1e-12


def test_pairing_symmetry_type():
    rng = np.random.default_rng(2)
    for d in (2, 3, 4, 5, 6):
        phi, psi = random_state(d, MIXED, rng), random_state(d, MIXED, rng)
        ab, ba = mukai_pairing(phi, psi), mukai_pairing(psi, phi)
        if d % 4 == 0:
            assert np.isclose(ab, ba)
        elif d % 4 == 2:
            assert np.isclose(ab, -ba)


def test_pairing_invariance_identity_component():
    rng = np.random.default_rng(3)
    for d in (4, 5, 6):
        phi, psi = random_state(d, MIXED, rng), random_state(d, MIXED, rng)
        g = random_generator(d, rng, 0.5)
        after = mukai_pairing(apply_exp(g, phi), apply_exp(g, psi))
        assert np.isclose(after, mukai_pairing(phi, psi), rtol=1e-9)


# moment map

def test_moment_map_d2_even_matches_printed():
    p0, pt = 0.8 - 0.1j, 1.2 + 0.4j
    M = moment_map(FockState.from_dict(2, {(): p0, (0, 1): pt}))
    assert np.allclose(M.A, -p0 * pt * np.eye(2))
    assert np.allclose(M.beta, [[0, -p0**2], [p0**2, 0]])
    assert np.allclose(M.B, [[0, -pt**2], [pt**2, 0]])
    assert np.allclose(M.matrix @ M.matrix, 0)


def test_moment_map_d2_vacuum_only_beta():
    M = moment_map(FockState.vacuum(2))
    assert not np.any(M.A) and not np.any(M.B) and np.any(M.beta)


def test_moment_map_d4_vanishes():
    for seed in range(5):
        for sector in (EVEN, ODD):
            phi = random_state(4, sector, seed)
            assert np.max(np.abs(moment_map(phi).matrix)) < 1e-10 * phi.norm() ** 2


def test_moment_map_is_in_so():
    M = moment_map(random_state(6, EVEN, 4)).matrix
    g = metric(6)
    assert np.allclose(M.T @ g + g @ M, 0)


def test_moment_map_errors():
    with pytest.raises(ValueError):
        moment_map(random_state(4, MIXED, 0))
    with pytest.raises(ValueError):
        moment_map(random_state(5, EVEN, 0))


@pytest.mark.parametrize("d,sector", [(2, EVEN), (2, ODD), (6, EVEN), (6, ODD)])
def test_explicit_matches_operator(d, sector):
    for seed in range(10):
        phi = random_state(d, sector, seed)
        M, E = moment_map(phi).matrix, moment_map_explicit(phi).matrix
        assert np.max(np.abs(M - E)) < 1e-10 * np.max(np.abs(M))


def test_closed_blocks_even_d6():
    phi = random_state(6, EVEN, 5)
    M = moment_map(phi)
    C = moment_blocks_even_d6(*even_d6_coords(phi))
    for name in ("A", "B", "beta"):
        assert np.allclose(getattr(M, name), getattr(C, name))


def test_closed_blocks_odd_d6():
    psi = random_state(6, ODD, 6)
    M = moment_map(psi)
    C = moment_blocks_odd_d6(*odd_d6_coords(psi))
    for name in ("A", "B", "beta"):
        assert np.allclose(getattr(M, name), getattr(C, name))


def test_equivariance():
    rng = np.random.default_rng(7)
    phi = random_state(6, EVEN, rng)
    g = random_generator(6, rng, 0.5)
    R = exp_vector(g)
    lhs = moment_map(apply_exp(g, phi)).matrix
    rhs = np.linalg.inv(R) @ moment_map(phi).matrix @ R
    assert np.allclose(lhs, rhs, atol=1e-9 * np.max(np.abs(rhs)))


# q_k and the quartic invariants

def test_q2_ghz_like():
    ghz = FockState.from_dict(6, {(): 1, tuple(range(6)): 1})
    assert np.isclose(q_invariants(ghz, 2)[1] / 6, 1)


def test_q2_on_canonical_family():
    a, b, c, dd = 1.3, -0.4 + 0.2j, 0.7j, 2.1
    q2 = q_invariants(even_d6_family(a, b, c, dd), 2)[1]
    assert np.isclose(q2 / 6, 4 * a * b * c * dd)


def test_odd_k_vanish():
    q = q_invariants(random_state(6, EVEN, 8), 5)
    assert max(abs(q[0]), abs(q[2]), abs(q[4])) < 1e-9 * abs(q[1])


def test_qk_invariance_and_homogeneity():
    rng = np.random.default_rng(9)
    phi = random_state(6, ODD, rng)
    q = np.array(q_invariants(phi, 4))
    qO = np.array(q_invariants(apply_exp(random_generator(6, rng, 0.4), phi), 4))
    assert np.allclose(qO[1::2], q[1::2], rtol=1e-8)
    lam = 0.7 + 0.3j
    ql = np.array(q_invariants(lam * phi, 4))
    assert np.allclose(ql[1::2], [lam**4 * q[1], lam**8 * q[3]], rtol=1e-10)


def test_quartic_even_examples():
    Z = np.zeros((6, 6))
    assert quartic_even_closed(1, Z, Z, 1) == 1
    assert quartic_even_closed(1, Z, Z, 0) == 0


def test_quartic_even_equals_trace():
    for seed in range(5):
        phi = random_state(6, EVEN, seed)
        assert np.isclose(q_invariants(phi, 2)[1] / 6, quartic_even_closed(*even_d6_coords(phi)), rtol=1e-10)


def test_quartic_odd_examples():
    ghz = odd_d6_coords(embed_three_qubit_odd(qubit_state("GHZ")))[1]
    assert abs(quartic_odd_closed(np.zeros(6), ghz, np.zeros(6))) > 0.1
    u = np.zeros(6, dtype=complex)
    u[2] = 1
    assert quartic_odd_closed(u, np.zeros((6, 6, 6)), u) == 6


def test_quartic_odd_corrected_cross_term_equals_trace():
    # the odd formula is q_2 itself (no factor 6, unlike the even one)
    for seed in range(5):
        psi = random_state(6, ODD, 10 + seed)
        assert np.isclose(q_invariants(psi, 2)[1], quartic_odd_closed(*odd_d6_coords(psi)), rtol=1e-10)


def test_quartic_odd_needs_cross_term_minus_12():
    # a cross coefficient of -4 breaks proportionality once u and w are both nonzero
    ratios = []
    for seed in range(3):
        psi = random_state(6, ODD, 20 + seed)
        ratios.append(q_invariants(psi, 2)[1] / quartic_odd_closed(*odd_d6_coords(psi), cross=-4.0))
    assert np.ptp(np.abs(ratios)) > 1e-3


# K_P

def test_k_matrix_ranks():
    def P_of(label):
        return odd_d6_coords(embed_three_qubit_odd(qubit_state(label)))[1]

    slater_P = np.zeros((6, 6, 6))
    for p, s in [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1), ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1)]:
        slater_P[p] = s
    assert matrix_rank(k_matrix(slater_P)) == 0
    assert matrix_rank(k_matrix(P_of("GHZ"))) == 6
    assert matrix_rank(k_matrix(P_of("W"))) == 3
    assert matrix_rank(k_matrix(P_of("bisep"))) == 1


def test_k_matrix_rejects_non_antisymmetric():
    with pytest.raises(ValueError):
        k_matrix(np.ones((6, 6, 6)))


def test_trace_k_squared_is_odd_quartic_for_three_forms():
    rng = np.random.default_rng(11)
    P = three_form(rng)
    K = k_matrix(P)
    psi = odd_d6_state(np.zeros(6), P, np.zeros(6))
    assert np.isclose(q_invariants(psi, 2)[1], np.trace(K @ K))


# Pfaffian

def test_pfaffian_examples():
    a = 2.5 - 1j
    assert pfaffian(np.array([[0, a], [-a, 0]])) == a
    y = np.zeros((6, 6), dtype=complex)
    for n, t in enumerate((1.5, -2.0, 0.5j)):
        y[2 * n, 2 * n + 1], y[2 * n + 1, 2 * n] = t, -t
    assert np.isclose(pfaffian(y), 1.5 * -2.0 * 0.5j)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_pfaffian_squared_is_determinant(n):
    M = antisym(np.random.default_rng(n), n)
    assert np.isclose(pfaffian(M) ** 2, np.linalg.det(M), rtol=1e-10)


def test_pfaffian_errors():
    with pytest.raises(ValueError):
        pfaffian(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        pfaffian(np.eye(4))


# odd d: the vector covariant

def test_vector_covariant_examples():
    assert not np.any(vector_covariant(FockState.vacuum(5)).as_array())
    generic = FockState.from_dict(5, {(): 1, (0, 1): 1, (2, 3): 0.5, (1, 2, 3, 4): 1})
    assert np.linalg.norm(vector_covariant(generic).as_array()) > 0.1
    with pytest.raises(ValueError):
        vector_covariant(FockState.vacuum(4))


def test_vector_covariant_is_null():
    for seed in range(10):
        phi = random_state(5, EVEN, seed)
        v = vector_covariant(phi)
        assert abs(form(v, v)) < 1e-10 * phi.norm() ** 4


def test_vector_covariant_closed_form_d5():
    for seed in range(5):
        phi = random_state(5, EVEN, seed)
        v = vector_covariant(phi)
        lower, upper = d5_closed_from_state(phi)
        assert np.allclose(v.u / 2, lower)
        assert np.allclose(v.v / 2, upper)


def test_vector_covariant_transforms_like_a_conjugated_vector():
    # with rows O e_a O^-1 = sum_b R[a, b] e_b, coefficient vectors map by R^T
    rng = np.random.default_rng(12)
    phi = random_state(5, EVEN, rng)
    g = random_generator(5, rng, 0.4)
    v = vector_covariant(phi).as_array()
    vO = vector_covariant(apply_exp(g, phi)).as_array()
    assert np.allclose(vO, exp_vector(g).T @ v, atol=1e-10)


def test_slater_states_have_zero_vector_covariant():
    rng = np.random.default_rng(13)
    V = rng.standard_normal((2, 5))
    assert np.allclose(vector_covariant(slater(5, V)).as_array(), 0)


def test_invariant_report():
    rep = invariant_report(random_state(4, EVEN, 0))
    assert rep.moment_zero and rep.moment_rank == 0 and rep.qk == []
    rep = invariant_report(random_state(6, EVEN, 0), 3)
    assert len(rep.qk) == 3 and rep.moment_rank == 12
    rep = invariant_report(random_state(5, EVEN, 0))
    assert rep.vphi.shape == (10,)
