import numpy as np
import pytest

from fockspin.classify import (
    TABLE_D6_EVEN,
    UnsupportedCase,
    annihilator_kernel,
    canonical_state,
    classify,
    classify_d6_even,
    classify_d6_odd,
    classify_d6_odd_threefermion,
    classify_small,
    default_tol,
    even_d6_family,
    is_pure_spinor,
    orbit_sample,
    pure_spinor_generate,
    qubit_state,
)
from fockspin.clifford import apply_vector
from fockspin.embed import embed_three_qubit_odd
from fockspin.fock import EVEN, MIXED, ODD, FockState, random_state, slater
from fockspin.spin import SpinGenerator, apply_exp, random_generator
from fockspin.tensors import odd_d6_coords, pfaffian


def antisym(rng, n):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return X - X.T


# annihilator kernel and purity

def test_kernel_of_vacuum_is_all_annihilators():
    d = 4
    dim, basis = annihilator_kernel(FockState.vacuum(d))
    assert dim == d
    for x in basis:
        assert np.allclose(x.u, 0)


def test_kernel_of_slater_state():
    d, k = 5, 2
    phi = FockState.basis(d, range(k))
    dim, basis = annihilator_kernel(phi)
    assert dim == d
    for x in basis:
        assert apply_vector(x, phi).is_zero(1e-12)
        assert np.allclose(x.u[k:], 0) and np.allclose(x.v[:k], 0)


def test_kernel_of_ghz_like_is_trivial():
    ghz = FockState.from_dict(6, {(): 1, tuple(range(6)): 1})
    assert annihilator_kernel(ghz)[0] == 0
    assert not is_pure_spinor(ghz)


def test_kernel_rejects_zero_state():
    with pytest.raises(ValueError):
        annihilator_kernel(FockState.zero(3))


def test_exp_b_vacuum_is_pure():
    rng = np.random.default_rng(0)
    for d in (4, 5, 6):
        gen = SpinGenerator(d, None, antisym(rng, d), None)
        assert is_pure_spinor(apply_exp(gen, FockState.vacuum(d)))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_small_dimensions_only_pure(d):
    for sector in (EVEN, ODD):
        assert is_pure_spinor(random_state(d, sector, d))


def test_d4_nonzero_pairing_not_pure():
    phi = FockState.from_dict(4, {(): 1, (0, 1, 2, 3): 1})
    assert not is_pure_spinor(phi)


def test_pure_spinor_generate():
    d = 5
    assert pure_spinor_generate(1, np.zeros((d, d)), []).allclose(FockState.vacuum(d))
    top = pure_spinor_generate(1, np.zeros((d, d)), np.eye(d))
    assert top.allclose(FockState.basis(d, range(d)))
    rng = np.random.default_rng(1)
    for k in range(d + 1):
        phi = pure_spinor_generate(0.4 - 2j, antisym(rng, d), rng.standard_normal((k, d)), d)
        assert is_pure_spinor(phi)
    with pytest.raises(ValueError):
        pure_spinor_generate(0, np.zeros((d, d)), [])
    with pytest.raises(ValueError):
        pure_spinor_generate(1, np.zeros((d, d)), [[1, 0, 0, 0, 0], [2, 0, 0, 0, 0]])


# d = 6 even

@pytest.mark.parametrize("label,rank", [("rank4", 12), ("rank3", 6), ("rank2", 2), ("rank1", 0)])
def test_table_canonical_states(label, rank):
    rep = classify_d6_even(even_d6_family(*TABLE_D6_EVEN[label]))
    assert rep.orbit_label == label
    assert rep.moment_rank == rank
    assert rep.is_pure == (label == "rank1")


def test_zero_state_rank0():
    assert classify_d6_even(FockState.zero(6)).orbit_label == "rank0"


def test_classify_d6_even_rejects_other_inputs():
    with pytest.raises(UnsupportedCase):
        classify_d6_even(random_state(6, MIXED, 0))
    with pytest.raises(UnsupportedCase):
        classify_d6_even(random_state(4, EVEN, 0))


def test_random_states_are_generic():
    assert classify_d6_even(random_state(6, EVEN, 2)).orbit_label == "rank4"
    assert classify_d6_odd(random_state(6, ODD, 2)).orbit_label == "rank4"


def test_rank1_iff_pure_on_samples():
    rng = np.random.default_rng(3)
    pure = pure_spinor_generate(1.0, antisym(rng, 6), rng.standard_normal((2, 6)))
    for phi in (pure, random_state(6, EVEN, 4), even_d6_family(1, 1, 0, 0)):
        rep = classify_d6_even(phi)
        assert (rep.orbit_label == "rank1") == is_pure_spinor(phi)


def test_scale_invariance():
    phi = even_d6_family(1, 1, 1, 0)
    for lam in (1e-3, 1.0, 1e3):
        assert classify_d6_even(lam * phi).orbit_label == "rank3"


def test_tolerance_env_override(monkeypatch):
    monkeypatch.setenv("FOCKSPIN_TOL", "1e-4")
    assert default_tol() == 1e-4
    monkeypatch.delenv("FOCKSPIN_TOL")
    assert default_tol() == 1e-8


# d = 6 odd

@pytest.mark.parametrize("label,expected", [("GHZ", "GHZ"), ("W", "W"), ("bisep", "bisep"), ("sep", "sep")])
def test_threefermion_classes(label, expected):
    P = odd_d6_coords(embed_three_qubit_odd(qubit_state(label)))[1]
    assert classify_d6_odd_threefermion(P) == expected


def test_single_slater_three_form_is_separable():
    phi = FockState.basis(6, (0, 1, 2))
    assert classify_d6_odd_threefermion(odd_d6_coords(phi)[1]) == "sep"


def test_odd_report_carries_kp_label():
    rep = classify_d6_odd(embed_three_qubit_odd(qubit_state("W")))
    assert rep.invariants["kp_rank"] == 3
    assert rep.invariants["three_fermion_class"] == "W"
    assert rep.orbit_label == "rank3"


# d <= 5

def test_classify_small_d4():
    slater_state = FockState.basis(4, (0, 1))
    assert np.isclose(pfaffian(np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])), 0)
    assert classify_small(slater_state).orbit_label == "pure"
    generic = FockState.from_dict(4, {(0, 1): 1, (2, 3): 1})
    assert classify_small(generic).orbit_label == "generic"


def test_classify_small_d5_and_null():
    rep = classify_small(FockState.vacuum(5))
    assert rep.orbit_label == "pure" and rep.is_pure and rep.kernel_dim == 5
    assert classify_small(FockState.zero(3)).orbit_label == "null"
    generic = canonical_state(5, EVEN, "generic").state
    rep = classify_small(generic)
    assert rep.orbit_label == "generic" and not rep.is_pure


def test_classify_small_errors():
    with pytest.raises(UnsupportedCase):
        classify_small(random_state(6, EVEN, 0))
    with pytest.raises(UnsupportedCase):
        classify_small(random_state(3, MIXED, 0))


def test_classify_dispatch():
    assert classify(FockState.vacuum(2)).orbit_label == "pure"
    assert classify(even_d6_family(1, 1, 0, 0)).orbit_label == "rank2"
    with pytest.raises(UnsupportedCase):
        classify(random_state(7, EVEN, 0))


# canonical forms and orbit samples

def test_canonical_examples():
    cf = canonical_state(6, EVEN, "rank4")
    assert cf.state.allclose(even_d6_family(1, 1, 1, 1))
    ghz = canonical_state(6, EVEN, "ghz_like").state
    assert ghz.allclose(FockState.from_dict(6, {(): 1, tuple(range(6)): 1}))
    assert canonical_state(4, EVEN, "pure").state.allclose(FockState.vacuum(4))
    with pytest.raises(UnsupportedCase):
        canonical_state(7, EVEN, "rank4")


@pytest.mark.parametrize("d,sector,label", [
    (6, EVEN, "rank4"), (6, EVEN, "rank3"), (6, EVEN, "rank2"), (6, EVEN, "rank1"), (6, EVEN, "ghz_like"),
    (6, ODD, "GHZ"), (6, ODD, "W"), (6, ODD, "bisep"), (6, ODD, "sep"),
    (4, EVEN, "pure"), (4, EVEN, "generic"), (4, ODD, "generic"), (5, EVEN, "generic"), (5, ODD, "pure"),
])
def test_canonical_round_trip(d, sector, label):
    rep = classify(canonical_state(d, sector, label).state)
    if label == "ghz_like":
        assert rep.orbit_label == "rank4"
    elif sector == ODD and d == 6:
        assert rep.invariants["three_fermion_class"] == label
    else:
        assert rep.orbit_label == label


def test_orbit_sample_rank4_invariance():
    samples = orbit_sample(canonical_state(6, EVEN, "rank4"), seed=5, count=10)
    assert all(classify_d6_even(s).orbit_label == "rank4" for s in samples)


def test_orbit_sample_rank1_all_pure():
    samples = orbit_sample(canonical_state(6, EVEN, "rank1"), seed=6, count=5)
    assert all(is_pure_spinor(s) for s in samples)
    assert all(classify_d6_even(s).orbit_label == "rank1" for s in samples)


def test_orbit_sample_deterministic_and_order_free():
    cf = canonical_state(6, EVEN, "rank2")
    a = orbit_sample(cf, seed=7, count=3)
    b = orbit_sample(cf, seed=7, count=3)
    assert all(np.array_equal(x.amp, y.amp) for x, y in zip(a, b))
    # sample n does not depend on how many samples were requested
    assert np.array_equal(orbit_sample(cf, seed=7, count=1)[0].amp, a[0].amp)


def test_kernel_dimension_orbit_invariant():
    rng = np.random.default_rng(8)
    for phi in (slater(6, rng.standard_normal((3, 6))), random_state(6, EVEN, rng)):
        g = random_generator(6, rng, 0.4)
        assert annihilator_kernel(apply_exp(g, phi))[0] == annihilator_kernel(phi)[0]


def test_report_to_dict():
    d = classify_d6_even(even_d6_family(1, 1, 1, 1)).to_dict()
    assert d["orbit_label"] == "rank4" and d["q2"] == [24.0, 0.0]
    assert d["tolerances"]["zero_rtol"] == 1e-8
