# %% [markdown]
# # Hurwitz quaternions
#
# The Hurwitz order contains the integer quaternions a+bi+cj+dk together with
# the points whose four coordinates are all halves of odd integers.  It has 24
# units and is norm-Euclidean on both sides, so all its one-sided ideals are
# principal.  As a result every element x factors into exactly
# Omega(nr x) atoms, even though the factorizations themselves are far from
# unique.

# %%
from factorlab import hurwitz as hq
from factorlab.factor_core import lengths, rigid_factorizations

print(len(hq.units()), "units")
x = hq.parse_quaternion("1+i") * hq.parse_quaternion("1-i")
print("(1+i)(1-i) =", hq.format_quaternion(x))

# %% [markdown]
# Atoms are the elements of prime norm.  Up to units there are p+1 of them
# above an odd prime p and just one above 2.

# %%
for p in [2, 3, 5, 7, 11]:
    print(p, len(hq.right_classes_of_norm(p)))

# %%
o = hq.oracle()
y = hq.parse_quaternion("1+i") * hq.parse_quaternion("1+i+j") * hq.parse_quaternion("2+i")
print("nr =", hq.norm(y), "L =", lengths(y, o))
for z in rigid_factorizations(y, o):
    print("  ", " * ".join(f"({hq.format_quaternion(u)})" for u in z.atoms))

# %% [markdown]
# Metacommutation: two atoms of different prime norms can be swapped, and the
# swapped pair is unique up to units.

# %%
u, v = hq.parse_quaternion("1+i"), hq.parse_quaternion("1+i+j")
(v2, u2), = hq.metacommute(u, v)
print(hq.format_quaternion(v2), hq.format_quaternion(u2), v2 * u2 == u * v)
