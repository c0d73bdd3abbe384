# %% [markdown]
# # Checking a transfer map
#
# Both concrete orders have trivial class group, so the expected transfer map
# sends x to the sequence 0^Omega(nr x) over the trivial group.  The verifier
# samples elements and checks that the map is multiplicative and detects
# units.  It also checks that factorizations lift and that sets of lengths
# are preserved.

# %%
import random

from factorlab import hurwitz as hq
from factorlab import matorder as mo
from factorlab.abelian import FiniteAbelianGroup
from factorlab.factor_core import verify_transfer
from factorlab.zerosum import ZsSequence

rng = random.Random(0)
trivial = FiniteAbelianGroup(())
samples = [hq.random_element(rng, 2000) for _ in range(30)]
report = verify_transfer(hq.transfer_map, samples, hq.oracle(), trivial)
print(report.summary()["checks"], report.passed)

# %%
mats = [mo.random_matrix(rng, 2000) for _ in range(30)]
print(verify_transfer(mo.transfer_map, mats, mo.oracle(), trivial).passed)

# %% [markdown]
# A map that adds one spurious atom is caught by every check.

# %%
def off_by_one(x):
    s = hq.transfer_map(x)
    return ZsSequence(s.group, (((), s.length + 1),))


bad = verify_transfer(off_by_one, samples[:5], hq.oracle(), trivial)
print(bad.summary()["checks"])
