# %% [markdown]
# # Spin action on the Fock space
# A generator (A, B, beta) acts on the vector space through its block matrix and
# on states through the lifted quadratic operator.

# %%
import numpy as np

from fockspin.fock import EVEN, random_state
from fockspin.invariants import moment_map, mukai_pairing
from fockspin.spin import apply_exp, exp_spinor, exp_vector, is_unitary_generator, random_generator

rng = np.random.default_rng(1)
d = 6
g = random_generator(d, rng, 0.4)
phi, psi = random_state(d, EVEN, rng), random_state(d, EVEN, rng)

# %% [markdown]
# The pairing is invariant and the moment map is equivariant.

# %%
R = exp_vector(g)
print(abs(mukai_pairing(apply_exp(g, phi), apply_exp(g, psi)) - mukai_pairing(phi, psi)))
lhs = moment_map(apply_exp(g, phi)).matrix
rhs = np.linalg.inv(R) @ moment_map(phi).matrix @ R
print(np.max(np.abs(lhs - rhs)))

# %% [markdown]
# Generators satisfying the compact-form condition exponentiate to unitaries.

# %%
u = random_generator(4, rng, unitary=True)
U = exp_spinor(u)
print(is_unitary_generator(u), np.max(np.abs(U @ U.conj().T - np.eye(16))))
