# %% [markdown]
# # Fock space and canonical anticommutation relations
# States are dense amplitude vectors over the 2^d occupation patterns.
# Modes are 0-based in the API.

# %%
import numpy as np

from fockspin.fock import EVEN, FockState, annihilate, create, random_state, slater

# %%
vac = FockState.vacuum(3)
e02 = create(0, create(2, vac))
print(e02)

# %% [markdown]
# Check {c_i, c_j^+} = delta_ij on every basis state of d = 3.

# %%
worst = 0.0
for s in range(8):
    e = FockState.basis(3, [m for m in range(3) if s >> m & 1])
    for i in range(3):
        for j in range(3):
            ac = annihilate(i, create(j, e)) + create(j, annihilate(i, e))
            worst = max(worst, np.max(np.abs((ac - (e if i == j else 0 * e)).amp)))
print("CAR residual", worst)

# %% [markdown]
# Slater determinants and random states in a fixed parity sector.

# %%
rng = np.random.default_rng(0)
print(slater(4, rng.standard_normal((2, 4))).norm())
print(random_state(4, EVEN, rng).support()[:5])
