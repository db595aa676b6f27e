"""Symmetric functions in the complete homogeneous basis.

An :class:`HExpansion` is a sparse integer combination of monomials
h_lam = h_{lam_1} h_{lam_2} ..., keyed by weakly decreasing tuples of positive
ints; the empty tuple is the constant 1.  A "k-sum" is a plain dict from
integer vectors gamma to coefficients, standing for the combination of the
products k_gamma = k_{gamma_1}^(0) k_{gamma_2}^(1) ... k_{gamma_ell}^(ell-1).
"""
from __future__ import annotations

import os
from collections import Counter, defaultdict
from functools import lru_cache
from itertools import combinations, product
from math import comb, prod
from typing import Iterable, Mapping

from .combinatorics import ResourceError

DEFAULT_DEGREE_CAP = 40


def degree_cap() -> int:
    return int(os.environ.get("KATALAN_DEGREE_CAP", DEFAULT_DEGREE_CAP))


def check_degree(deg: int) -> None:
    cap = degree_cap()
    if deg > cap:
        raise ResourceError(f"degree {deg} exceeds cap {cap} (set KATALAN_DEGREE_CAP to raise it)")


def _insert(key: tuple[int, ...], part: int) -> tuple[int, ...]:
    """Insert a positive part into a decreasing tuple."""
    i = 0
    while i < len(key) and key[i] >= part:
        i += 1
    return key[:i] + (part,) + key[i:]


class HExpansion:
    """Immutable sparse combination of h-monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None):
        clean = {}
        for lam, c in (terms or {}).items():
            if c:
                key = tuple(sorted((p for p in lam if p), reverse=True))
                if key and key[-1] < 0:
                    raise ValueError(f"negative h index in {lam}")
                clean[key] = clean.get(key, 0) + c
        self.terms = {lam: c for lam, c in clean.items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "HExpansion":
        # trusted constructor: keys already canonical, values nonzero
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def one(cls) -> "HExpansion":
        return cls._raw({(): 1})

    @classmethod
    def zero(cls) -> "HExpansion":
        return cls._raw({})

    @classmethod
    def h(cls, *parts: int) -> "HExpansion":
        if any(p < 0 for p in parts):
            return cls.zero()
        return cls({tuple(parts): 1})

    # ring operations
    def __add__(self, other: "HExpansion") -> "HExpansion":
        out = dict(self.terms)
        for lam, c in other.terms.items():
            v = out.get(lam, 0) + c
            if v:
                out[lam] = v
            else:
                out.pop(lam, None)
        return HExpansion._raw(out)

    def __neg__(self) -> "HExpansion":
        return HExpansion._raw({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other: "HExpansion") -> "HExpansion":
        return self + (-other)

    def scale(self, n: int) -> "HExpansion":
        if n == 0:
            return HExpansion.zero()
        return HExpansion._raw({lam: n * c for lam, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out: dict = defaultdict(int)
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                out[tuple(sorted(a + b, reverse=True))] += ca * cb
        return HExpansion._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = HExpansion.one().scale(other)
        return isinstance(other, HExpansion) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Largest degree present; -1 for zero."""
        return max((sum(lam) for lam in self.terms), default=-1)

    def homogeneous_component(self, d: int) -> "HExpansion":
        return HExpansion._raw({lam: c for lam, c in self.terms.items() if sum(lam) == d})

    def top_degree_component(self) -> "HExpansion":
        return self.homogeneous_component(self.degree())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def to_json(self) -> list[dict]:
        return [{"partition": list(lam), "coeff": c} for lam, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "HExpansion":
        return cls({tuple(d["partition"]): int(d["coeff"]) for d in data})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for lam, c in self.sorted_terms():
            mono = "h" + ",".join(map(str, lam)) if lam else "1"
            if lam and c == 1:
                bits.append(f"+ {mono}")
            elif lam and c == -1:
                bits.append(f"- {mono}")
            else:
                bits.append(f"{'+' if c > 0 else '-'} {abs(c)}" + (f"*{mono}" if lam else ""))
        s = " ".join(bits)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __str__(self) -> str:
        return self.__repr__()


# --- inhomogeneous k ------------------------------------------------------

def _coef(r: int, i: int) -> int:
    """Binomial C(r+i-1, i), with C(-1, 0) = 1 so that r = 0 gives h_m alone."""
    if r == 0:
        return 1 if i == 0 else 0
    return comb(r + i - 1, i)


@lru_cache(maxsize=None)
def _k_parts(m: int, r: int) -> tuple[tuple[int, int], ...]:
    """Pairs (part, coefficient) with k_m^(r) = sum coefficient * h_part."""
    if m < 0:
        return ()
    return tuple((m - i, _coef(r, i)) for i in range(m + 1) if _coef(r, i))


def k_inhom(m: int, r: int) -> HExpansion:
    return HExpansion({(p,): c for p, c in _k_parts(m, r)})


def _times_k(f: dict, m: int, r: int) -> dict:
    """Multiply a raw term dict by k_m^(r)."""
    out: dict = defaultdict(int)
    parts = _k_parts(m, r)
    for lam, c in f.items():
        for p, a in parts:
            out[_insert(lam, p) if p else lam] += c * a
    return {k: v for k, v in out.items() if v}


def k_monomial(gamma: Iterable[int]) -> HExpansion:
    gamma = tuple(gamma)
    if any(g < 0 for g in gamma):
        return HExpansion.zero()
    check_degree(sum(gamma))
    f = {(): 1}
    for r, m in enumerate(gamma):
        f = _times_k(f, m, r)
    return HExpansion._raw(f)


def ksum_to_h(ksum: Mapping[tuple[int, ...], int]) -> HExpansion:
    """Convert a k-sum to the h-basis, sharing work between keys with common prefixes."""
    ksum = {g: c for g, c in ksum.items() if c and min(g, default=0) >= 0}
    if not ksum:
        return HExpansion.zero()
    check_degree(max(sum(g) for g in ksum))

    def rec(items: list, pos: int) -> dict:
        # items: (gamma, coeff) all sharing gamma[:pos]; returns sum of coeff * prod_{i>=pos} k
        if pos == len(items[0][0]):
            return {(): sum(c for _, c in items)}
        groups: dict = defaultdict(list)
        for g, c in items:
            groups[g[pos]].append((g, c))
        out: dict = defaultdict(int)
        for m, sub in groups.items():
            tail = rec(sub, pos + 1)
            for lam, c in _times_k(tail, m, pos).items():
                out[lam] += c
        return {k: v for k, v in out.items() if v}

    return HExpansion._raw(rec(list(ksum.items()), 0))


# --- dual stable Grothendieck g_gamma -------------------------------------

def g_gamma_det(gamma: Iterable[int]) -> HExpansion:
    """det(k^{(i-1)}_{gamma_i + j - i}) by row cofactor expansion with memoized minors."""
    gamma = tuple(gamma)
    ell = len(gamma)
    check_degree(max(sum(gamma), 0))

    def entry(i: int, j: int) -> HExpansion:
        return k_inhom(gamma[i] + j - i, i)

    memo: dict = {}

    def minor(row: int, cols: tuple[int, ...]) -> HExpansion:
        if row == ell:
            return HExpansion.one()
        if cols in memo:
            return memo[cols]
        total = HExpansion.zero()
        for pos, j in enumerate(cols):
            e = entry(row, j)
            if not e:
                continue
            rest = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if not rest:
                continue
            term = e * rest
            total = total + (term if pos % 2 == 0 else -term)
        memo[cols] = total
        return total

    return minor(0, tuple(range(ell)))


def raise_all_ksum(gamma: tuple[int, ...]) -> dict:
    """prod over all i<j of (1 - R_ij) applied to k_gamma, as a k-sum."""
    from .katalan import apply_operators  # shared expansion engine
    ell = len(gamma)
    roots = [(i, j) for i in range(1, ell + 1) for j in range(i + 1, ell + 1)]
    return apply_operators({gamma: 1}, roots, {})


def g_gamma_raising(gamma: Iterable[int]) -> HExpansion:
    return ksum_to_h(raise_all_ksum(tuple(gamma)))


def jacobi_trudi(gamma: Iterable[int]) -> HExpansion:
    """Classical det(h_{gamma_i + j - i}): the Schur function s_gamma in the h-basis."""
    gamma = tuple(gamma)
    ell = len(gamma)
    memo: dict = {}

    def minor(row: int, cols: tuple[int, ...]) -> HExpansion:
        if row == ell:
            return HExpansion.one()
        if cols in memo:
            return memo[cols]
        total = HExpansion.zero()
        for pos, j in enumerate(cols):
            e = HExpansion.h(gamma[row] + j - row)
            if not e:
                continue
            term = e * minor(row + 1, cols[:pos] + cols[pos + 1:])
            total = total + (term if pos % 2 == 0 else -term)
        memo[cols] = total
        return total

    return minor(0, tuple(range(ell)))


def schur_expand(f: HExpansion) -> dict[tuple[int, ...], int] | None:
    """Write a homogeneous f as an integer combination of Schur functions.

    s_lam is h_lam plus h-monomials that dominate lam, so the lexicographically
    smallest monomial left always carries the coefficient of its Schur function.  Returns None when f is not
    homogeneous.
    """
    if len({sum(lam) for lam in f.terms}) > 1:
        return None
    out: dict = {}
    rest = f
    while rest:
        lam = min(rest.terms)
        c = rest.terms[lam]
        out[lam] = c
        rest = rest - jacobi_trudi(lam).scale(c)
    return out


# --- skewing operators ----------------------------------------------------

def _e_perp_monomial(d: int, lam: tuple[int, ...]) -> dict:
    """Sum over size-d subsets of factors, each chosen factor lowered by one."""
    groups = sorted(Counter(lam).items(), reverse=True)
    out: dict = defaultdict(int)
    ranges = [range(0, min(n, d) + 1) for _, n in groups]
    for pick in product(*ranges):
        if sum(pick) != d:
            continue
        coeff = prod(comb(n, t) for (_, n), t in zip(groups, pick))
        parts: list[int] = []
        for (v, n), t in zip(groups, pick):
            parts += [v] * (n - t) + [v - 1] * t
        key = tuple(sorted((p for p in parts if p), reverse=True))
        out[key] += coeff
    return out


def e_perp(d: int, f: HExpansion) -> HExpansion:
    if d < 0:
        raise ValueError("d must be nonnegative")
    if d == 0:
        return f
    out: dict = defaultdict(int)
    for lam, c in f.terms.items():
        if len(lam) < d:
            continue
        for key, a in _e_perp_monomial(d, lam).items():
            out[key] += c * a
    return HExpansion._raw({k: v for k, v in out.items() if v})


def one_minus_G1_perp(f: HExpansion) -> HExpansion:
    """(1 - G_1^perp) f = sum_d (-1)^d e_d^perp f, where G_1 = e_1 - e_2 + e_3 - ..."""
    n = max((len(lam) for lam in f.terms), default=0)
    total = HExpansion.zero()
    for d in range(n + 1):
        term = e_perp(d, f)
        total = total + (term if d % 2 == 0 else -term)
    return total


def e_perp_subset_brute(d: int, lam: tuple[int, ...]) -> HExpansion:
    """Literal subset rule on one monomial, used as an independent check."""
    total = HExpansion.zero()
    for S in combinations(range(len(lam)), d):
        parts = [p - (i in S) for i, p in enumerate(lam)]
        total = total + HExpansion.h(*parts)
    return total
