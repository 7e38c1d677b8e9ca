# %% [markdown]
# # Three-qubit states inside the d = 6 Fock space
# Each of the five entanglement classes lands in the matching Fock orbit, and
# q2/6 reproduces the Cayley hyperdeterminant.

# %%
import numpy as np

from fockspin.classify import qubit_state
from fockspin.embed import cayley_hyperdeterminant, duality_check, embed_three_qubit_even
from fockspin.invariants import q_invariants

for label in ("GHZ", "W", "bisep", "sep", "null"):
    rep = duality_check(qubit_state(label))
    print(label, rep.kp_rank, rep.even_label, rep.consistent)

# %%
rng = np.random.default_rng(2)
Phi = rng.standard_normal((2, 2, 2)) + 1j * rng.standard_normal((2, 2, 2))
print(q_invariants(embed_three_qubit_even(Phi), 2)[1] / 6, cayley_hyperdeterminant(Phi))
