"""Katalan functions K(Psi; M; gamma) and their evaluation.

    K(Psi; M; gamma) = prod_{z in M} (1 - L_z) prod_{(i,j) in Psi} (1 - R_ij)^{-1} g_gamma

Two independent evaluation routes are provided.  :func:`evaluate` expands
the finite product over the complement of Psi applied to k_gamma;
:func:`evaluate_series_oracle` expands the geometric series over Psi applied
to determinants g_mu.  Both return an :class:`HExpansion`.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Mapping, Sequence

from .combinatorics import DomainError, Multiset, is_bounded_partition, is_extended_member
from .rootideal import RootIdeal, delta_k, second_components
from .symfunc import HExpansion, check_degree, g_gamma_det, ksum_to_h


@dataclass(frozen=True)
class KatalanTerm:
    ideal: RootIdeal
    multiset: Multiset
    gamma: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(self.gamma))
        if len(self.gamma) != self.ideal.ell:
            raise DomainError("gamma length differs from the ideal's ell")
        if any(not 1 <= a <= self.ell for a in self.multiset.support()):
            raise DomainError(f"multiset support outside [1, {self.ell}]")

    @property
    def ell(self) -> int:
        return self.ideal.ell

    def with_gamma(self, gamma) -> "KatalanTerm":
        return KatalanTerm(self.ideal, self.multiset, tuple(gamma))

    def to_json(self) -> dict:
        return {"ideal": self.ideal.to_json(), "multiset": self.multiset.to_json(),
                "gamma": list(self.gamma)}

    @classmethod
    def from_json(cls, data: Mapping) -> "KatalanTerm":
        return cls(RootIdeal.from_json(data["ideal"]), Multiset.from_json(data["multiset"]),
                   tuple(data["gamma"]))


# a formal sum of Katalan terms, kept unsimplified
KCombination = list  # list[tuple[int, KatalanTerm]]


def lower(t: KatalanTerm, z: int) -> KCombination:
    return lower_power(t, z, 1)


def lower_power(t: KatalanTerm, z: int, n: int) -> KCombination:
    """L_z^n t.  Indices beyond ell give the zero combination."""
    if n == 0:
        return [(1, t)]
    if z > t.ell:
        return []
    if z < 1:
        raise IndexError(f"index {z} below 1")
    g = list(t.gamma)
    g[z - 1] -= n
    return [(1, t.with_gamma(g))]


# --- product route --------------------------------------------------------

def apply_operators(ksum: Mapping[tuple[int, ...], int], roots: Iterable[tuple[int, int]],
                    lowers: Mapping[int, int]) -> dict:
    """Apply prod (1 - R_ij) over ``roots`` and prod (1 - L_z)^{lowers[z]} to a k-sum.

    Columns are handled from the right.  Once column j and its lowering are
    applied nothing can raise entry j again, so vectors whose entry j is
    negative are dropped; before that, a vector is dropped as soon as an
    entry is too negative for the remaining raises in its row to repair.
    """
    ksum = {g: c for g, c in ksum.items() if c}
    if not ksum:
        return {}
    ell = len(next(iter(ksum)))
    roots = sorted(set(roots), key=lambda r: (-r[1], -r[0]))
    by_col = defaultdict(list)
    for r in roots:
        by_col[r[1]].append(r)
    # raises still available to each row
    headroom = [0] * (ell + 1)
    for i, _ in roots:
        headroom[i] += 1

    def alive(g) -> bool:
        return all(g[i - 1] + headroom[i] >= 0 for i in range(1, ell + 1))

    cur = {g: c for g, c in ksum.items() if alive(g)}
    for j in range(ell, 0, -1):
        for (i, jj) in by_col[j]:
            headroom[i] -= 1
            out = defaultdict(int, cur)
            for g, c in cur.items():
                h = list(g)
                h[i - 1] += 1
                h[j - 1] -= 1
                out[tuple(h)] -= c
            cur = {g: c for g, c in out.items() if c and alive(g)}
        for _ in range(lowers.get(j, 0)):
            out = defaultdict(int, cur)
            for g, c in cur.items():
                if g[j - 1] > 0:
                    h = list(g)
                    h[j - 1] -= 1
                    out[tuple(h)] -= c
            cur = {g: c for g, c in out.items() if c}
        cur = {g: c for g, c in cur.items() if g[j - 1] >= 0}
    return cur


def evaluate_ksum(t: KatalanTerm) -> dict:
    """The expansion of t as a k-sum (vectors with nonnegative entries only)."""
    check_degree(max(sum(t.gamma), 0))
    lowers = {z: n for z, n in t.multiset.items() if z <= t.ell}
    return apply_operators({t.gamma: 1}, t.ideal.complement(), lowers)


def evaluate(t: KatalanTerm) -> HExpansion:
    return ksum_to_h(evaluate_ksum(t))


def evaluate_combination(terms: KCombination) -> HExpansion:
    total = HExpansion.zero()
    for c, t in terms:
        total = total + evaluate(t).scale(c)
    return total


# --- series route ---------------------------------------------------------

class OracleGuardError(RuntimeError):
    """The series oracle exceeded its iteration bound."""


@lru_cache(maxsize=200_000)
def _g(mu: tuple[int, ...]) -> HExpansion:
    return g_gamma_det(mu)


def evaluate_series_oracle(t: KatalanTerm) -> HExpansion:
    """Expand prod (1 - L_z) prod_{Psi} sum_n R_ij^n over determinants g_mu.

    Raising terms are enumerated column by column from the right; a term is
    cut off once row j of the determinant is identically zero (entry_j + ell
    - j < 0), which is exactly where the series stops contributing.
    """
    ell = t.ell
    psi_roots = sorted(t.ideal.roots())
    col_rows = {j: [i for (i, jj) in psi_roots if jj == j] for j in range(1, ell + 1)}
    guard = sum(abs(g) for g in t.gamma) + sum(t.multiset.count(z) for z in range(1, ell + 1)) + ell * ell
    total: dict = defaultdict(int)

    # lowering by binomial expansion
    lowers = [(z, n) for z, n in t.multiset.items() if z <= ell]
    for picks in product(*[range(n + 1) for _, n in lowers]):
        sign = 1
        gamma = list(t.gamma)
        for (z, n), s in zip(lowers, picks):
            sign *= (-1) ** s * comb(n, s)
            gamma[z - 1] -= s
        size = sum(gamma)
        for mu in _raisings(tuple(gamma), col_rows, ell, size, guard):
            for lam, c in _g(mu).terms.items():
                total[lam] += sign * c
    return HExpansion({k: v for k, v in total.items() if v})


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for a in range(total + 1):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def _raisings(gamma: tuple[int, ...], col_rows: dict, ell: int, size: int, guard: int):
    """Yield every vector gamma + sum n_ij (e_i - e_j), (i,j) in Psi, with a nonvanishing chance."""
    # slack: the rows above j must still be able to end >= -(ell - i)
    floor_above = [0] * (ell + 2)
    for j in range(1, ell + 1):
        floor_above[j + 1] = floor_above[j] + (ell - j)

    def rec(j: int, vec: list, fixed_sum: int):
        if j == 0:
            yield tuple(vec)
            return
        rows = col_rows[j]
        cap = vec[j - 1] + ell - j
        if cap < 0:
            return
        if cap > guard:
            raise OracleGuardError(f"raising bound {cap} above guard {guard}")
        for total in range(cap + 1):
            final_j = vec[j - 1] - total
            if fixed_sum + final_j > size + floor_above[j]:
                continue
            for split in _compositions(total, len(rows)):
                nv = list(vec)
                nv[j - 1] = final_j
                for i, n in zip(rows, split):
                    nv[i - 1] += n
                yield from rec(j - 1, nv, fixed_sum + final_j)

    yield from rec(ell, list(gamma), 0)


# --- rewrites --------------------------------------------------------------

def recurrence_removable(t: KatalanTerm, beta: tuple[int, int]) -> KCombination:
    """K(Psi) = K(Psi minus beta) + K(Psi; gamma + e_beta) for removable beta."""
    if beta not in t.ideal.removable_roots():
        raise DomainError(f"{beta} is not a removable root")
    i, j = beta
    g = list(t.gamma)
    g[i - 1] += 1
    g[j - 1] -= 1
    return [(1, KatalanTerm(t.ideal.remove(beta), t.multiset, t.gamma)), (1, t.with_gamma(g))]


def recurrence_addable(t: KatalanTerm, alpha: tuple[int, int]) -> KCombination:
    """K(Psi) = K(Psi + alpha) - K(Psi + alpha; gamma + e_alpha) for addable alpha."""
    if alpha not in t.ideal.addable_roots():
        raise DomainError(f"{alpha} is not an addable root")
    i, j = alpha
    bigger = t.ideal.add(alpha)
    g = list(t.gamma)
    g[i - 1] += 1
    g[j - 1] -= 1
    return [(1, KatalanTerm(bigger, t.multiset, t.gamma)), (-1, KatalanTerm(bigger, t.multiset, tuple(g)))]


def recurrence_multiset_remove(t: KatalanTerm, m: int) -> KCombination:
    """K(M) = K(M minus m) - K(M minus m; gamma - e_m) for m in M."""
    if t.multiset.count(m) < 1:
        raise DomainError(f"{m} is not in the multiset")
    smaller = t.multiset.remove(m)
    g = list(t.gamma)
    g[m - 1] -= 1
    return [(1, KatalanTerm(t.ideal, smaller, t.gamma)), (-1, KatalanTerm(t.ideal, smaller, tuple(g)))]


def recurrence_multiset_add(t: KatalanTerm, m: int) -> KCombination:
    """K(M) = K(M plus m) + K(M; gamma - e_m) for m in [ell]."""
    if not 1 <= m <= t.ell:
        raise DomainError(f"{m} outside [1, {t.ell}]")
    g = list(t.gamma)
    g[m - 1] -= 1
    return [(1, KatalanTerm(t.ideal, t.multiset.add(m), t.gamma)), (1, t.with_gamma(g))]


# --- mirror lemmas --------------------------------------------------------

def _shared_mirror_hypotheses(t: KatalanTerm, y: int, z: int) -> dict | None:
    """Conditions common to both mirror lemmas; None if the indices are unusable."""
    psi, ell = t.ideal, t.ell
    if not (1 <= y <= z < ell):
        return None
    if psi.top(y) != psi.top(z):
        return None
    upz = psi.up(z)
    if y == z:
        upper = ()
        lower_path = ()
    else:
        upper = psi.path(y, upz)
        lower_path = psi.path(psi.down(y), z)
    g, M = t.gamma, t.multiset
    return {
        "mirrors": all(psi.has_mirror(x) for x in upper),
        "wall": psi.has_wall(z),
        "gamma_flat": all(g[x - 1] == g[x] for x in upper),
        "gamma_step": g[z - 1] + 1 == g[z],
        "m_steps": all(M.count(x) + 1 == M.count(x + 1) for x in lower_path),
    }


def mirror_case(t: KatalanTerm, y: int, z: int) -> tuple[str | None, dict]:
    """Which branch of the mirror lemma applies: 'zero', 'shift' or None."""
    hyp = _shared_mirror_hypotheses(t, y, z)
    if hyp is None:
        return None, {}
    hyp["ceiling"] = t.ideal.has_ceiling(y)
    if not all(hyp.values()):
        return None, hyp
    my, my1 = t.multiset.count(y), t.multiset.count(y + 1)
    if my + 1 == my1:
        return "zero", hyp
    if my == my1:
        return "shift", hyp
    return None, hyp


def mirror_rhs(t: KatalanTerm, y: int, z: int) -> KCombination | None:
    """The right-hand side promised by :func:`mirror_case` (None if no branch fires)."""
    case, _ = mirror_case(t, y, z)
    if case == "zero":
        return []
    if case == "shift":
        g = list(t.gamma)
        g[z] -= 1
        return [(1, t.with_gamma(g))]
    return None


def mirror_straighten(t: KatalanTerm, y: int, z: int) -> KCombination | None:
    """Two-term mirror straightening, or None when a hypothesis fails."""
    hyp = _shared_mirror_hypotheses(t, y, z)
    if hyp is None:
        return None
    psi = t.ideal
    u = psi.up(y + 1)
    if u is None:
        return None
    alpha, beta = (u, y), (u, y + 1)
    if alpha not in psi.addable_roots() or beta not in psi.removable_roots():
        return None
    if t.multiset.count(y) != t.multiset.count(y + 1) or not all(hyp.values()):
        return None
    g1 = list(t.gamma)
    g1[u - 1] += 1
    g1[z] -= 1
    g2 = list(t.gamma)
    g2[z] -= 1
    return [(1, KatalanTerm(psi.add(alpha), t.multiset.add(y + 1), tuple(g1))),
            (1, t.with_gamma(g2))]


# --- K-k-Schur functions ---------------------------------------------------

def _check_member(lam: Sequence[int], k: int, generalized: bool) -> tuple[int, ...]:
    lam = tuple(lam)
    if generalized:
        if not is_extended_member(lam, k):
            raise DomainError(f"{lam} violates entries <= {k} or the chain v_i + ell - i decreasing")
    elif not is_bounded_partition(lam, k):
        raise DomainError(f"{lam} is not a {k}-bounded partition")
    return lam


def gkk_term(lam: Sequence[int], k: int, generalized: bool = False) -> KatalanTerm:
    lam = _check_member(lam, k, generalized)
    return KatalanTerm(delta_k(lam, k), second_components(delta_k(lam, k + 1).roots()), lam)


def gkk(lam: Sequence[int], k: int, generalized: bool = False) -> HExpansion:
    """K-k-Schur function K(Delta^k(lam); Delta^{k+1}(lam); lam)."""
    return evaluate(gkk_term(lam, k, generalized))


def closed_gkk_term(lam: Sequence[int], k: int) -> KatalanTerm:
    lam = _check_member(lam, k, False)
    psi = delta_k(lam, k)
    return KatalanTerm(psi, second_components(psi.roots()), lam)


def closed_gkk(lam: Sequence[int], k: int) -> HExpansion:
    """Closed k-Schur Katalan function K(Delta^k(lam); Delta^k(lam); lam)."""
    return evaluate(closed_gkk_term(lam, k))


def lowered_gkk(lam: Sequence[int], k: int, S: Multiset | Iterable[int], generalized: bool = True) -> HExpansion:
    """L_S g_lam: the K-k-Schur term of lam with gamma lowered by S (indices past ell give 0)."""
    t = gkk_term(lam, k, generalized)
    S = S if isinstance(S, Multiset) else Multiset(S)
    g = list(t.gamma)
    for z, n in S.items():
        if z > t.ell:
            return HExpansion.zero()
        g[z - 1] -= n
    return evaluate(t.with_gamma(g))


# --- grid ------------------------------------------------------------------

def render_grid(t: KatalanTerm) -> str:
    """ASCII picture: '*' bullet rows above, '#' for ideal cells, gamma on the diagonal."""
    ell = t.ell
    if ell > 30:
        raise DomainError("grid rendering supports ell <= 30")
    width = max(2, max(len(str(g)) for g in t.gamma))
    top = max((t.multiset.count(a) for a in range(1, ell + 1)), default=0)
    lines = []
    # bullet rows, each star right-aligned over its column's cell
    for r in range(top):
        cells = ["*".rjust(width) if t.multiset.count(a) > r else " " * width for a in range(1, ell + 1)]
        lines.append((" " + " ".join(cells)).rstrip())
    sep = "+".join(["-" * width] * ell)
    lines.append("+" + sep + "+")
    for i in range(1, ell + 1):
        cells = []
        for j in range(1, ell + 1):
            if i == j:
                cells.append(str(t.gamma[i - 1]).rjust(width))
            elif (i, j) in t.ideal:
                cells.append("#" * width)
            else:
                cells.append(" " * width)
        lines.append("|" + "|".join(cells) + "|")
        lines.append("+" + sep + "+")
    return "\n".join(lines) + "\n"
