"""
Lowering acts on presentations
==============================

A lowering operator shifts the gamma of a Katalan function.  Two gammas can
give the same function and still lower to different ones, so rewriting
L_z g by an identity and then lowering again is not safe.
"""
from katalan.straighten import g_lowered, lowering_power

#%%
# g_(0,1) and g_(0,0) are both 1 when k = 2
print(g_lowered((0, 1), 2), "|", g_lowered((0, 0), 2))

#%%
# yet lowering the first row separates them
print(g_lowered((0, 1), 2, [1]), "|", g_lowered((0, 0), 2, [1]))

#%%
# The one-step formula holds, the squared one built from it does not
print("n = 1:", lowering_power((1, 1), 2, 1, 1)["equal"])
rec = lowering_power((1, 1), 2, 1, 2)
print("n = 2:", rec["equal"], " direct", rec["lhs"], " formula", rec["rhs"])
