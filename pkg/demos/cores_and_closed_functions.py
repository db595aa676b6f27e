"""
Cores, Bruhat order and closed functions
========================================

k-bounded partitions correspond to (k+1)-cores; Bruhat order is core
containment.  Summing g over a lower set recovers the closed function.
"""
from katalan.cores import bruhat_lower_set, c_map, closed_sum, free_indices, hook_lengths, lowering_sum
from katalan.katalan import closed_gkk
from katalan.symfunc import one_minus_G1_perp

#%%
# The core of (2,2,1) for k = 2, and its hooks
core = c_map((2, 2, 1), 2)
print("core:", core)
print("hooks:", sorted(hook_lengths(core).items()))

#%%
# The lower set of (2,1,1) in three rows, k = 2; zero padding is allowed
lower = bruhat_lower_set((2, 1, 1), 2)
for mu in lower:
    print(" ", mu, c_map(mu, 2))

#%%
# Lowering by every multiset on the free rows sums to the same thing
lam, k = (2, 1, 1), 2
print("free rows:", free_indices(lam, k))
total = closed_sum(lam, k)
print("lowering sum matches:", lowering_sum(lam, k) == total)

#%%
# and (1 - G1 perp) takes that sum to the closed function
print("closed function matches:", closed_gkk(lam, k) == one_minus_G1_perp(total))
