"""
Katalan functions and their two evaluations
===========================================

A Katalan function is drawn as a grid: '#' marks the root ideal, the
diagonal carries gamma and the stars above count the lowering multiset.
"""
from katalan.combinatorics import Multiset
from katalan.katalan import (KatalanTerm, evaluate, evaluate_combination, evaluate_series_oracle,
                             gkk, recurrence_removable, render_grid)
from katalan.rootideal import RootIdeal

#%%
# A term with three roots, lowering indices 2, 3, 4, 4 and gamma (3, 2, 1, 3)
psi = RootIdeal.from_roots(4, {(1, 3), (1, 4), (2, 4)})
t = KatalanTerm(psi, Multiset([2, 3, 4, 4]), (3, 2, 1, 3))
print(render_grid(t))

#%%
# The finite product over the complement and the geometric series over the
# ideal are computed independently and give the same h-expansion
f = evaluate(t)
print("degree", f.degree(), "with", len(f.terms), "h-monomials")
print("series route agrees:", f == evaluate_series_oracle(t))

#%%
# Removing a removable root splits the function into two
beta = sorted(psi.removable_roots())[0]
parts = recurrence_removable(t, beta)
for c, s in parts:
    print(c, s.gamma, sorted(s.ideal.roots()))
print("sum matches:", evaluate_combination(parts) == f)

#%%
# K-k-Schur functions are a special case; small ones are easy to read off
for lam, k in [((1,), 1), ((1, 1), 1), ((2, 1), 2)]:
    print(lam, k, gkk(lam, k))
