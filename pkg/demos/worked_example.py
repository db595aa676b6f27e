"""
Straightening a lowered K-k-Schur function
==========================================

lam = (5,4,4,3,3,2,2,2,2,1) with k = 6.  Row 8 lies past the bottom of the
root ideal, row 4 above it, so the two lowerings straighten differently.
"""
from katalan.combinatorics import Multiset
from katalan.rootideal import delta_k
from katalan.straighten import evaluate_gterms, g_lowered, lowering_power_terms, omega

lam, k = (5, 4, 4, 3, 3, 2, 2, 2, 2, 1), 6
psi = delta_k(lam, k)
print("bottom row:", psi.bottom(), " down(4) =", psi.down(4))

#%%
# Past the bottom, L_8 g is a plain sum over Omega
om = omega(lam, k, 8)
for nu in sorted(om):
    print("  g", nu)
rhs = evaluate_gterms([(m, nu, Multiset()) for nu, m in om.items()], k)
print("L_8 g equals the sum:", g_lowered(lam, k, [8]) == rhs)

#%%
# Above the bottom the Omega terms carry a (1 - L_10) factor and L_8 g
# appears as a remainder
terms = lowering_power_terms(lam, k, 4, 1)
for c, nu, S in terms:
    print(f"  {c:+d} L{dict(S.items())} g{nu}")

#%%
# Expanding both pieces leaves six K-k-Schur functions
six = [(1, (5, 5, 4, 2, 2, 2, 2, 2, 2, 1)), (1, (5, 4, 4, 2, 2, 2, 2, 2, 2, 1)),
       (-1, (5, 5, 4, 2, 2, 2, 2, 2, 2, 0)), (-1, (5, 4, 4, 2, 2, 2, 2, 2, 2, 0)),
       (1, (5, 5, 4, 3, 3, 2, 2, 1, 1, 1)), (1, (5, 4, 4, 3, 3, 2, 2, 1, 1, 1))]
lhs = g_lowered(lam, k, [4])
print("L_4 g equals the six-term sum:", lhs == evaluate_gterms([(c, nu, Multiset()) for c, nu in six], k))
