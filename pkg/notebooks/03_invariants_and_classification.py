# %% [markdown]
# # Invariants and orbit classification at d = 6
# The quartic invariant is q2 = Tr(M^2)/2; the rank of M separates the orbits.

# %%
from fockspin.classify import TABLE_D6_EVEN, canonical_state, classify, even_d6_family
from fockspin.fock import EVEN
from fockspin.invariants import q_invariants

for label, params in TABLE_D6_EVEN.items():
    rep = classify(even_d6_family(*params))
    print(label, params, rep.moment_rank, rep.orbit_label)

# %% [markdown]
# On the four-parameter family q2/6 = 4abcd.

# %%
a, b, c, d = 1.0, 2.0, 0.5, -1.5
print(q_invariants(even_d6_family(a, b, c, d), 2)[1] / 6, 4 * a * b * c * d)

# %%
ghz = canonical_state(6, EVEN, "ghz_like").state
print(classify(ghz))
