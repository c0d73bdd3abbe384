# %% [markdown]
# # Zero-sum sequences
#
# A sequence over a finite abelian group G is a multiset of group elements.
# It is *zero-sum* when its elements add up to 0, and an *atom* when no proper
# nonempty subsequence is zero-sum.  Every zero-sum sequence splits into atoms,
# usually in more than one way.

# %%
from factorlab.abelian import parse_group
from factorlab.zerosum import (
    classify_lengths,
    davenport_constant,
    enumerate_atoms,
    factorizations_zs,
    lengths_zs,
    monoid_delta,
    parse_sequence,
    union_k,
)

C3 = parse_group("3")
atoms = enumerate_atoms(C3, davenport_constant(C3))
for a in atoms.atoms:
    print(a)

# %% [markdown]
# The Davenport constant D(G) is the length of the longest atom.  For cyclic
# groups it equals the order; for C3+C3 it is 5.

# %%
for lit in ["2", "4", "2,2", "3,3", "2,4"]:
    G = parse_group(lit)
    print(f"D({G}) = {davenport_constant(G)}")

# %% [markdown]
# Over C3 the sequence 1^3 2^3 has two kinds of factorization: three copies
# of the atom (1)(2), or the two long atoms 1^3 and 2^3.  Its set of lengths is
# therefore {2, 3}.

# %%
S = parse_sequence(C3, "(1)^3*(2)^3")
for z in factorizations_zs(S, atoms):
    print(" * ".join(f"[{a}]" for a in z))
L = lengths_zs(S, atoms)
print("L(S) =", L, classify_lengths(L))

# %% [markdown]
# Distances between consecutive lengths are collected over every zero-sum
# sequence up to a length bound.  The result is a lower approximation of the
# true set of distances; the bound travels with it.

# %%
delta = monoid_delta(parse_group("5"), 10)
print(delta)
print(union_k(C3, 2, 12))
