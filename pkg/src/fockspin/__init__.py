"""Spin-group geometry of fermionic Fock spaces.

Fock states on ``d`` modes, the Clifford action of creation and annihilation
operators, Bogoliubov (Spin) transformations, the invariant pairing and moment
map, orbit classification up to six modes, and qubit embeddings.

The orbit classifier lives at ``fockspin.classify.classify`` (the submodule
name is kept free at package level).
"""

__version__ = "0.1.0"

from .fock import (  # noqa: E402
    EVEN,
    MIXED,
    ODD,
    DimensionMismatch,
    FockState,
    annihilate,
    create,
    hermitian_inner,
    norm,
    parity_sector,
    random_state,
    shuffle_sign,
    slater,
    top_coefficient,
    transpose,
    wedge,
)
from .clifford import CliffordVector, IsotropicVector, VectorChain, apply_vector, form, metric, reflect  # noqa: E402
from .spin import (  # noqa: E402
    SpinElement,
    SpinGenerator,
    apply_exp,
    compact_form_image,
    exp_spinor,
    exp_vector,
    is_unitary_generator,
    spinor_operator,
)
from .invariants import (  # noqa: E402
    invariant_report,
    moment_map,
    mukai_pairing,
    q_invariants,
    vector_covariant,
)
from .classify import (  # noqa: E402
    ClassificationReport,
    UnsupportedCase,
    canonical_state,
    is_pure_spinor,
    orbit_sample,
)
from .embed import (  # noqa: E402
    cayley_hyperdeterminant,
    duality_check,
    embed_three_qubit_even,
    embed_three_qubit_odd,
    embed_two_qubit_d4,
)
