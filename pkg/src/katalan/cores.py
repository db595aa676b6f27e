"""(k+1)-cores, the bounded-partition bijections, and Bruhat lower sets.

Bruhat order on k-bounded partitions is realized as containment of the
corresponding (k+1)-cores.  Partitions here may carry trailing zeros; they
are ignored when building diagrams.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Sequence

from .combinatorics import (DomainError, Multiset, ResourceError, as_partition,
                            bounded_partitions, is_bounded_partition)
from .katalan import evaluate_ksum, gkk, gkk_term, lowered_gkk
from .rootideal import delta_k
from .symfunc import HExpansion, ksum_to_h

ENUMERATION_CAP = 200_000


def conjugate(p: Sequence[int]) -> tuple[int, ...]:
    p = as_partition(p)
    return tuple(sum(1 for x in p if x > j) for j in range(p[0] if p else 0))


def hook_lengths(p: Sequence[int]) -> dict[tuple[int, int], int]:
    """Hook length of each cell (i, j), 1-indexed."""
    p = as_partition(p)
    pc = conjugate(p)
    return {(i, j): p[i - 1] - j + pc[j - 1] - i + 1
            for i in range(1, len(p) + 1) for j in range(1, p[i - 1] + 1)}


def is_r_core(p: Sequence[int], r: int) -> bool:
    return r not in hook_lengths(p).values()


def p_map(core: Sequence[int], k: int) -> tuple[int, ...]:
    """Row i counts the cells of row i whose hook is at most k."""
    core = as_partition(core)
    if not is_r_core(core, k + 1):
        raise DomainError(f"{core} is not a {k + 1}-core")
    hooks = hook_lengths(core)
    rows = [sum(1 for j in range(1, core[i - 1] + 1) if hooks[(i, j)] <= k)
            for i in range(1, len(core) + 1)]
    return as_partition(rows)


def c_map(lam: Sequence[int], k: int) -> tuple[int, ...]:
    """The (k+1)-core whose hook count is lam, built from the bottom row up."""
    lam = as_partition(lam)
    if lam and lam[0] > k:
        raise DomainError(f"{lam} is not {k}-bounded")
    rows: list[int] = []  # rows below the current one, bottom first
    for part in reversed(lam):
        s = 0
        while part + sum(1 for r in rows if r > s) > k:
            s += 1
        rows.append(part + s)
    core = tuple(reversed(rows))
    if p_map(core, k) != lam:  # internal certification
        raise AssertionError(f"core construction failed for {lam}, k={k}")
    return core


def core_to_json(core: Sequence[int], k: int) -> dict:
    core = as_partition(core)
    if not is_r_core(core, k + 1):
        raise DomainError(f"{core} is not a {k + 1}-core")
    return {"shape": list(core), "r": k + 1}


def core_from_json(data: dict) -> tuple[tuple[int, ...], int]:
    """Inverse of :func:`core_to_json`: (shape, k)."""
    core, r = as_partition(data["shape"]), int(data["r"])
    if r < 2 or not is_r_core(core, r):
        raise DomainError(f"{core} is not a {r}-core")
    return core, r - 1


def contains(small: Sequence[int], big: Sequence[int]) -> bool:
    small, big = as_partition(small), as_partition(big)
    return len(small) <= len(big) and all(a <= b for a, b in zip(small, big))


def bruhat_leq(mu: Sequence[int], lam: Sequence[int], k: int) -> bool:
    return contains(c_map(mu, k), c_map(lam, k))


def bruhat_lt(mu: Sequence[int], lam: Sequence[int], k: int) -> bool:
    return bruhat_leq(mu, lam, k) and c_map(mu, k) != c_map(lam, k)


def strong_cover(tau: Sequence[int], kappa: Sequence[int], k: int) -> bool:
    """tau => kappa: the hook counts differ by exactly one cell and tau sits inside kappa."""
    return sum(p_map(tau, k)) + 1 == sum(p_map(kappa, k)) and contains(tau, kappa)


def cores_up_to(size: int, r: int) -> Iterator[tuple[int, ...]]:
    """All r-cores with at most ``size`` cells."""
    def parts(n: int, cap: int):
        if n == 0:
            yield ()
            return
        for first in range(min(n, cap), 0, -1):
            for rest in parts(n - first, first):
                yield (first,) + rest

    for n in range(size + 1):
        for p in parts(n, n):
            if is_r_core(p, r):
                yield p


def bruhat_lower_set(lam: Sequence[int], k: int, ell: int | None = None,
                     strict_length: bool = False) -> list[tuple[int, ...]]:
    """Zero-padded k-bounded mu of length ell with c(mu) inside c(lam), sorted.

    With ``strict_length`` only mu with exactly ell positive parts are kept.
    """
    lam = tuple(lam)
    ell = len(lam) if ell is None else ell
    if not is_bounded_partition(lam, k):
        raise DomainError(f"{lam} is not a {k}-bounded partition")
    big = c_map(lam, k)
    out = []
    for count, mu in enumerate(bounded_partitions(ell, k, sum(lam))):
        if count > ENUMERATION_CAP:
            raise ResourceError("Bruhat lower-set enumeration cap exceeded")
        if strict_length and 0 in mu:
            continue
        if contains(c_map(mu, k), big):
            out.append(mu)
    return sorted(out)


def closed_sum(lam: Sequence[int], k: int, strict_length: bool = False) -> HExpansion:
    """Sum of g_mu over the Bruhat lower set of lam."""
    total = HExpansion.zero()
    for mu in bruhat_lower_set(lam, k, len(lam), strict_length):
        total = total + gkk(mu, k)
    return total


def free_indices(lam: Sequence[int], k: int) -> tuple[int, ...]:
    """[ell] minus the down-images of the rows up to the bottom."""
    psi = delta_k(lam, k)
    D = {psi.down(z) for z in range(1, psi.bottom() + 1)}
    return tuple(x for x in range(1, len(lam) + 1) if x not in D)


def lowering_sum(lam: Sequence[int], k: int) -> HExpansion:
    """Sum of L_S g_lam over all multisets S supported on the free indices.

    L_x^n kills a Katalan function whose x-entry plus ell - x is below n, so
    each index contributes finitely many terms.  Lowering commutes with the
    operator expansion, so every L_S acts as a shift on the k-sum of g_lam.
    """
    lam = tuple(lam)
    ell = len(lam)
    free = free_indices(lam, k)
    base = evaluate_ksum(gkk_term(lam, k))
    bounds = [lam[x - 1] + ell - x for x in free]
    acc: dict = {}
    for ns in product(*[range(b + 1) for b in bounds]):
        for v, c in base.items():
            w = list(v)
            for x, n in zip(free, ns):
                w[x - 1] -= n
            if min(w) < 0:
                continue
            w = tuple(w)
            acc[w] = acc.get(w, 0) + c
    return ksum_to_h(acc)


def lowering_sum_direct(lam: Sequence[int], k: int) -> HExpansion:
    """Same sum, evaluating each lowered Katalan function separately (slow oracle)."""
    lam = tuple(lam)
    ell = len(lam)
    free = free_indices(lam, k)
    total = HExpansion.zero()
    for ns in product(*[range(lam[x - 1] + ell - x + 1) for x in free]):
        total = total + lowered_gkk(lam, k, Multiset(dict(zip(free, ns))), generalized=False)
    return total
