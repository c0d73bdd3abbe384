# %% [markdown]
# # Integer 2x2 matrices
#
# In M2(Z) a left ideal is determined by the row lattice of a generator, so it
# has a canonical Hermite normal form.  The ideals of index p are the p+1
# sublattices of Z^2 of index p.

# %%
from factorlab import matorder as mo
from factorlab.factor_core import rigid_factorizations

for I in mo.maximal_left_ideals_over(3):
    print(I)

# %% [markdown]
# Meets and joins are lattice intersection and lattice sum.  Two different
# maximal ideals over p meet in pZ^2 and join to the whole order.

# %%
a, b = mo.maximal_left_ideals_over(5)[:2]
print(mo.ideal_meet(a, b), mo.ideal_join(a, b))

# %% [markdown]
# A matrix with squarefree determinant p1...pk has factorizations realizing
# every ordering of its primes.

# %%
A = mo.parse_matrix("[[6,1],[0,7]]")
zs = rigid_factorizations(A, mo.oracle())
print("det", A.det(), sorted(mo.det_sequences(zs)))

# %% [markdown]
# Transposition swaps two adjacent steps of coprime norm.  The new right step
# generates a+pR, which pins the pair down uniquely.

# %%
t = mo.transpose(mo.IntMatrix2.diag(2, 1), mo.IntMatrix2.diag(1, 3))
print(t.v_prime, t.u_prime, all(t.checks.values()))

# %% [markdown]
# The abstract norm multiplies the primes along a maximal chain from the
# order down to the ideal.  Any chain gives the determinant.

# %%
I = mo.hnf(mo.parse_matrix("[[4,1],[2,5]]"))
print(mo.maximal_chain(I)[1], mo.maximal_chain(I, True, True)[1], mo.abstract_norm(I))
