"""Independent reference computations used by the tests.

Nothing here calls into the library's algorithms; h_1, h_2, ... become
algebraically independent sympy symbols, and determinants are taken by sympy.
"""
from itertools import combinations
from math import comb

import sympy

H = sympy.symbols("h1:30")


def h_sym(n):
    if n < 0:
        return sympy.Integer(0)
    if n == 0:
        return sympy.Integer(1)
    return H[n - 1]


def to_sympy(f):
    """Map an HExpansion (anything with a .terms dict) to a sympy polynomial."""
    out = sympy.Integer(0)
    for lam, c in f.terms.items():
        term = sympy.Integer(c)
        for p in lam:
            term *= h_sym(p)
        out += term
    return sympy.expand(out)


def k_sym(m, r):
    if m < 0:
        return sympy.Integer(0)
    if r == 0:
        return h_sym(m)
    return sum(comb(r + i - 1, i) * h_sym(m - i) for i in range(m + 1))


def g_sym(gamma):
    ell = len(gamma)
    if ell == 0:
        return sympy.Integer(1)
    M = sympy.Matrix(ell, ell, lambda i, j: k_sym(gamma[i] + j - i, i))
    return sympy.expand(M.det(method="berkowitz"))


def jt_sym(gamma):
    ell = len(gamma)
    if ell == 0:
        return sympy.Integer(1)
    M = sympy.Matrix(ell, ell, lambda i, j: h_sym(gamma[i] + j - i))
    return sympy.expand(M.det(method="berkowitz"))


def hooks_by_count(p):
    """Hook lengths by literally counting arm and leg cells."""
    cells = {(i, j) for i, row in enumerate(p, 1) for j in range(1, row + 1)}
    out = {}
    for (i, j) in cells:
        arm = sum(1 for (a, b) in cells if a == i and b > j)
        leg = sum(1 for (a, b) in cells if b == j and a > i)
        out[(i, j)] = arm + leg + 1
    return out


def partitions_of(n, cap=None):
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def cores_by_search(max_cells, r):
    return [p for n in range(max_cells + 1) for p in partitions_of(n)
            if r not in hooks_by_count(p).values()]


def hook_count_rows(core, k):
    hooks = hooks_by_count(core)
    rows = [sum(1 for j in range(1, core[i - 1] + 1) if hooks[(i, j)] <= k)
            for i in range(1, len(core) + 1)]
    return tuple(x for x in rows if x)


def is_root_ideal(roots, ell):
    """Upper order ideal: closed under moving up a row or right a column."""
    for (i, j) in roots:
        if i > 1 and (i - 1, j) not in roots:
            return False
        if j < ell and (i, j + 1) not in roots:
            return False
    return True


def all_ideals_bruteforce(ell):
    pos = [(i, j) for i in range(1, ell + 1) for j in range(i + 1, ell + 1)]
    for r in range(len(pos) + 1):
        for sub in combinations(pos, r):
            if is_root_ideal(set(sub), ell):
                yield frozenset(sub)


def e_perp_h_sym(d, parts):
    """e_d perp on a product of h's: sum over d-subsets of factors, each lowered once."""
    out = sympy.Integer(0)
    for S in combinations(range(len(parts)), d):
        term = sympy.Integer(1)
        for idx, p in enumerate(parts):
            term *= h_sym(p - 1 if idx in S else p)
        out += term
    return sympy.expand(out)
