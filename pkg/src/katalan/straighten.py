"""Straightening K-k-Schur functions after a lowering operator.

Throughout, a "g-term" is a triple (coeff, nu, S) standing for
coeff * L_S g_nu, where g_nu is the (generalized) K-k-Schur function of nu and
S is a :class:`Multiset` of lowering indices.  Lists of g-terms are the
right-hand sides of every identity here; :func:`evaluate_gterms` turns them
into h-expansions.

Identity records are dicts {"lhs", "rhs", "equal", "instance"}.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .combinatorics import (DomainError, Multiset, add_epsilon, add_epsilon_interval,
                            is_bounded_partition, is_extended_member)
from .katalan import lowered_gkk
from .rootideal import delta_k
from .symfunc import HExpansion

Vec = tuple[int, ...]


# --- evaluation helpers ---------------------------------------------------

@lru_cache(maxsize=100_000)
def _lowered(nu: Vec, k: int, s_items: tuple) -> HExpansion:
    return lowered_gkk(nu, k, Multiset(dict(s_items)))


def g_lowered(nu: Sequence[int], k: int, S: Multiset | Iterable[int] = ()) -> HExpansion:
    """L_S g_nu for nu in the extended bounded set (cached)."""
    S = S if isinstance(S, Multiset) else Multiset(S)
    nu = tuple(nu)
    if any(z > len(nu) for z in S.support()):
        return HExpansion.zero()
    return _lowered(nu, k, tuple(S.items()))


def evaluate_gterms(terms: Iterable[tuple[int, Vec, Multiset]], k: int) -> HExpansion:
    total = HExpansion.zero()
    for c, nu, S in terms:
        total = total + g_lowered(nu, k, S).scale(c)
    return total


def _record(lhs: HExpansion, rhs: HExpansion, **instance) -> dict:
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs, "instance": instance}


def _L(*indices: int) -> Multiset:
    return Multiset(indices)


def _one_minus_L(z: int, ell: int, c: int, nu: Vec, S: Multiset = Multiset()) -> list:
    """Expand c * L_S (1 - L_z) g_nu, with L_z = 0 past ell."""
    out = [(c, nu, S)]
    if z <= ell:
        out.append((-c, nu, S.add(z)))
    return out


# --- h-values and covers --------------------------------------------------

@dataclass(frozen=True)
class CoverData:
    h: int
    y: Optional[int]
    intervals: tuple  # the row intervals (lo, hi) of the equality chain
    uppath_targets: tuple  # up(y+1), ..., up(y+h)


def h_prime(v: Sequence[int], z: int) -> int:
    """How many entries after row z repeat v_z.

    For a partition lam: lam_z = ... = lam_{z+h'} > lam_{z+h'+1} (lam_{ell+1} = -inf).
    """
    v = tuple(v)
    h = 0
    while z + h < len(v) and v[z + h] == v[z - 1]:
        h += 1
    return h


def h_value(mu: Sequence[int], k: int, z: int) -> Optional[CoverData]:
    """The h of the cover construction, or None where it is undefined."""
    mu = tuple(mu)
    ell = len(mu)
    if z == ell or mu[z - 1] >= mu[z]:
        return CoverData(0, None, ((z, z),), ())
    psi = delta_k(mu, k)
    y = psi.top(z)
    if y <= psi.top(z + 1):
        return None
    chain = psi.uppath(z)  # y, ..., up(z), z
    c = len(chain) - 1

    def ok(h: int) -> bool:
        if z + h > ell:
            return False
        if any(mu[z + i - 1] != mu[z - 1] + 1 for i in range(1, h + 1)):
            return False
        for t in range(1, c + 1):
            rows = [psi.up_power(z + i, t) for i in range(h + 1)]
            if None in rows or len({mu[r - 1] for r in rows}) != 1:
                return False
        if y + h > ell:
            return False
        tops = [psi.up(y + i) for i in range(1, h + 1)]
        if None in tops or len({mu[r - 1] for r in tops}) > 1:
            return False
        return True

    h = 0
    while h < ell - z and ok(h + 1):
        h += 1
    intervals = [(z, z + h)]
    for t in range(1, c + 1):
        intervals.append((psi.up_power(z, t), psi.up_power(z + h, t)))
    if h:
        intervals.append((psi.up(y + 1), psi.up(y + h)))
    targets = tuple(psi.up(y + i) for i in range(1, h + 1))
    return CoverData(h, y, tuple(intervals), targets)


def cover(mu: Sequence[int], k: int, z: int, i: Optional[int] = None) -> Vec:
    """cover_{z,i}(mu); i defaults to h (the full cover)."""
    mu = tuple(mu)
    data = h_value(mu, k, z)
    if data is None:
        raise DomainError(f"h is undefined for {mu} at {z}")
    if i is None:
        i = data.h
    if not 0 <= i <= data.h:
        raise DomainError(f"i={i} outside [0, {data.h}]")
    if i == 0:
        return mu
    psi = delta_k(mu, k)
    out = add_epsilon_interval(mu, psi.up(data.y + 1), psi.up(data.y + i), +1)
    return add_epsilon_interval(out, z + 1, z + i, -1)


# --- Omega sets -------------------------------------------------------------

class StraighteningAnomaly(RuntimeError):
    """The top comparison hit a configuration the three cases do not cover."""


def top_case(nu: Vec, k: int, p: int) -> tuple[int, Optional[int]]:
    """Classify by comparing top(p) and top(p+1) in Delta^k(nu).

    Returns (case, y): case 1 when top(p) > top(p+1) (y = top(p)), case 2
    when top(p) = top(p+1) - 1, case 3 when top(p+1) - 1 > top(p).
    """
    psi = delta_k(nu, k)
    t1, t2 = psi.top(p), psi.top(p + 1)
    if t1 > t2:
        return 1, t1
    if t1 == t2 - 1:
        return 2, t1
    if t2 - 1 > t1:
        return 3, t2 - 1
    raise StraighteningAnomaly(f"equal tops at {p}, {p + 1} for {nu}")


def omega_d(lam: Sequence[int], k: int, z: int, d: int) -> Counter:
    """Omega_{lam,z,d} by the three-case recursion, as a multiset of vectors."""
    lam = tuple(lam)
    cur = Counter({add_epsilon(lam, z, -1): 1})
    for step in range(1, d + 1):
        p = z + step - 1
        nxt: Counter = Counter()
        for nu, mult in cur.items():
            case, y = top_case(nu, k, p)
            if case == 1:
                u = delta_k(nu, k).up(y + 1)
                if u is None:
                    raise StraighteningAnomaly(f"up({y + 1}) undefined for {nu}")
                nxt[add_epsilon(add_epsilon(nu, u, +1), p + 1, -1)] += mult
                nxt[add_epsilon(nu, p + 1, -1)] += mult
            elif case == 2:
                nxt[add_epsilon(nu, p + 1, -1)] += mult
        cur = nxt
    return cur


def omega(lam: Sequence[int], k: int, z: int) -> Counter:
    """Omega_{lam,z} = Omega_{lam,z,h'}."""
    lam = tuple(lam)
    if not 1 <= z <= len(lam):
        raise IndexError(f"index {z} outside [1, {len(lam)}]")
    return omega_d(lam, k, z, h_prime(lam, z))


def omega_multiset(lam: Sequence[int], k: int, M: Multiset | Iterable[int],
                   order: Optional[Sequence[int]] = None) -> Counter:
    """Iterated Omega over the elements of M (in ``order`` if given)."""
    M = M if isinstance(M, Multiset) else Multiset(M)
    seq = list(order) if order is not None else list(M.elements())
    if Multiset(seq) != M:
        raise DomainError("order is not an arrangement of M")
    cur = Counter({tuple(lam): 1})
    for z in seq:
        nxt: Counter = Counter()
        for nu, mult in cur.items():
            for w, m2 in omega(nu, k, z).items():
                nxt[w] += mult * m2
        cur = nxt
    return cur


def omega_quadruples(lam: Sequence[int], k: int, z: int, d: int, restart_gap: int = 0):
    """Omega_{lam,z,d} from its declarative description by quadruple sequences.

    A sequence picks z_1 < z_2 < ... in [z, z+d-1]; after step j the next
    z_{j+1} starts at z_j + i_j + restart_gap.  Each step raises the interval
    up(y_j+1) .. up(y_j+i_j) of the current ideal.  Returns a dict from each
    resulting vector to one witnessing trace [(z_j, y_j, i_j), ...].
    """
    lam = tuple(lam)
    mu = add_epsilon(lam, z, -1)
    top_z = delta_k(mu, k).top(z)
    last = z + d - 1
    found: dict = {}

    def finish(raised: Vec, trace):
        nu = add_epsilon_interval(raised, z + 1, z + d, -1)
        found.setdefault(nu, list(trace))

    def rec(raised: Vec, start: int, trace):
        finish(raised, trace)
        for zj in range(start, last + 1):
            base = add_epsilon_interval(raised, z + 1, zj, -1)
            if not is_extended_member(base, k):
                continue
            psi = delta_k(base, k)
            if zj + 1 > len(lam) or psi.top(zj) <= psi.top(zj + 1):
                continue
            data = h_value(base, k, zj)
            if data is None:
                continue
            yj = data.y
            for ij in range(1, min(data.h, z + d - zj) + 1):
                if psi.up(yj + ij) >= top_z:
                    continue
                new = add_epsilon_interval(raised, psi.up(yj + 1), psi.up(yj + ij), +1)
                rec(new, zj + ij + restart_gap, trace + [(zj, yj, ij)])

    rec(mu, z, [])
    return found


# --- single straightening steps -------------------------------------------

def _single_ascent(mu: Vec, z: int) -> bool:
    ell = len(mu)
    if not 1 <= z < ell or mu[z - 1] + 1 != mu[z]:
        return False
    return all(mu[x - 1] >= mu[x] for x in range(1, ell) if x != z)


def straighten_step(mu: Sequence[int], k: int, z: int) -> tuple[str, int, list]:
    """One straightening step at an ascent mu_z + 1 = mu_{z+1}.

    Returns (which, case, gterms) with which in {"above-bottom", "below-bottom"}
    selecting the two regimes z > b_mu and z < b_mu, and case in {1, 2, 3}.
    The g-terms sum to g_mu.
    """
    mu = tuple(mu)
    ell = len(mu)
    if not is_extended_member(mu, k):
        raise DomainError(f"{mu} is not in the extended bounded set for k={k}")
    if not _single_ascent(mu, z):
        raise DomainError(f"{mu} needs a single ascent mu_z + 1 = mu_(z+1) at z={z}")
    psi = delta_k(mu, k)
    b = psi.bottom()
    case, y = top_case(mu, k, z)
    lowered = add_epsilon(mu, z + 1, -1)
    if b + 1 <= z <= ell - 1:
        if case == 1:
            raised = add_epsilon(lowered, psi.up(y + 1), +1)
            return "above-bottom", 1, [(1, raised, Multiset()), (1, lowered, Multiset())]
        if case == 2:
            return "above-bottom", 2, [(1, lowered, Multiset())]
        return "above-bottom", 3, []
    if 1 <= z <= b - 1:
        d = psi.down(z + 1)
        if case == 1:
            raised = add_epsilon(lowered, psi.up(y + 1), +1)
            terms = _one_minus_L(d + 1, ell, 1, raised) + _one_minus_L(d + 1, ell, 1, lowered)
            return "below-bottom", 1, terms + [(1, mu, _L(d))]
        if case == 2:
            return "below-bottom", 2, _one_minus_L(d + 1, ell, 1, lowered) + [(1, mu, _L(d))]
        return "below-bottom", 3, []
    raise DomainError(f"z={z} equals the bottom {b}, which a wall rules out")


def check_straighten_step(mu, k, z) -> dict:
    which, case, terms = straighten_step(mu, k, z)
    return _record(g_lowered(mu, k), evaluate_gterms(terms, k), mu=tuple(mu), k=k, z=z,
                   regime=which, case=case)


# --- lowering identities --------------------------------------------------

def lower_step_bottom(lam: Sequence[int], k: int, z: int) -> dict:
    """L_z g_lam = (1 - L_{d+1}) g_{lam - e_z} + L_d g_lam with d = down(z), for z <= bottom."""
    lam = tuple(lam)
    psi = delta_k(lam, k)
    if not 1 <= z <= psi.bottom():
        raise DomainError(f"z={z} outside [1, bottom={psi.bottom()}]")
    d = psi.down(z)
    mu = add_epsilon(lam, z, -1)
    terms = _one_minus_L(d + 1, len(lam), 1, mu) + [(1, lam, _L(d))]
    return _record(g_lowered(lam, k, [z]), evaluate_gterms(terms, k), lam=lam, k=k, z=z)


def lowering_above_bottom(lam: Sequence[int], k: int, z: int) -> dict:
    """L_z g_lam = sum over Omega_{lam,z} of g_nu, for z past the bottom."""
    lam = tuple(lam)
    b = delta_k(lam, k).bottom()
    if not b + 1 <= z <= len(lam):
        raise DomainError(f"z={z} outside [bottom+1, ell] = [{b + 1}, {len(lam)}]")
    terms = [(m, nu, Multiset()) for nu, m in omega(lam, k, z).items()]
    return _record(g_lowered(lam, k, [z]), evaluate_gterms(terms, k), lam=lam, k=k, z=z)


def lowering_below_bottom(lam: Sequence[int], k: int, z: int) -> dict:
    """L_z g_lam = sum_nu (1 - L_{d+h'+1}) g_nu + L_d g_lam, for z up to the bottom."""
    lam = tuple(lam)
    psi = delta_k(lam, k)
    if not 1 <= z <= psi.bottom():
        raise DomainError(f"z={z} outside [1, bottom={psi.bottom()}]")
    d = psi.down(z)
    zp = d + h_prime(lam, z) + 1
    terms = []
    for nu, m in omega(lam, k, z).items():
        terms += _one_minus_L(zp, len(lam), m, nu)
    terms.append((1, lam, _L(d)))
    return _record(g_lowered(lam, k, [z]), evaluate_gterms(terms, k), lam=lam, k=k, z=z)


def lowering_power_terms(lam: Sequence[int], k: int, z: int, n: int) -> list:
    """Right-hand side of the power formula for L_z^n g_lam as g-terms.

    Past the bottom: sum over Omega_{lam,{z}^n}.  Up to the bottom:
    sum_nu sum_{i+j=n-1} L_z^i L_d^j (1 - L_{d+h'+1}) g_nu + L_d^n g_lam.
    """
    lam = tuple(lam)
    ell = len(lam)
    psi = delta_k(lam, k)
    if z > psi.bottom():
        return [(m, nu, Multiset()) for nu, m in omega_multiset(lam, k, Multiset.power(z, n)).items()]
    d = psi.down(z)
    zp = d + h_prime(lam, z) + 1
    terms = []
    for nu, m in omega(lam, k, z).items():
        for i in range(n):
            S = Multiset({z: i}).union(Multiset({d: n - 1 - i}))
            terms += _one_minus_L(zp, ell, m, nu, S)
    terms.append((1, lam, Multiset.power(d, n)))
    return terms


def lowering_power(lam: Sequence[int], k: int, z: int, n: int) -> dict:
    lam = tuple(lam)
    terms = lowering_power_terms(lam, k, z, n)
    return _record(g_lowered(lam, k, Multiset.power(z, n)), evaluate_gterms(terms, k),
                   lam=lam, k=k, z=z, n=n)


def vanishing_bound(v: Sequence[int], x: int) -> int:
    """L_x^i kills any Katalan function with gamma = v once i exceeds this."""
    return v[x - 1] + len(v) - x


def telescoped_lowering(lam: Sequence[int], k: int, z: int, n: int) -> dict:
    """sum_i L_{z'}^i L_z^n g_lam = sum_nu sum_{i+j=n-1} L_z^i L_d^j g_nu + sum_i L_{z'}^i L_d^n g_lam.

    Here d = down(z) and z' = d + h' + 1; the geometric sums stop at the
    vanishing bound m (they are a single term when z' > ell).
    """
    lam = tuple(lam)
    ell = len(lam)
    psi = delta_k(lam, k)
    if not 1 <= z <= psi.bottom():
        raise DomainError(f"z={z} outside [1, bottom={psi.bottom()}]")
    d = psi.down(z)
    zp = d + h_prime(lam, z) + 1
    om = omega(lam, k, z)
    if zp <= ell:
        m = max([vanishing_bound(lam, zp)] + [vanishing_bound(nu, zp) for nu in om])
    else:
        m = 0
    lhs = HExpansion.zero()
    for i in range(m + 1):
        lhs = lhs + g_lowered(lam, k, Multiset({zp: i}).add(z, n))
    terms = []
    for nu, mult in om.items():
        for i in range(n):
            terms.append((mult, nu, Multiset({z: i}).union(Multiset({d: n - 1 - i}))))
    for i in range(m + 1):
        terms.append((1, lam, Multiset({zp: i}).add(d, n)))
    rec = _record(lhs, evaluate_gterms(terms, k), lam=lam, k=k, z=z, n=n, z_prime=zp, m=m)
    # the truncation itself: one more lowering kills every involved function
    if zp <= ell:
        rec["vanishing"] = all(not g_lowered(v, k, [zp] * (m + 1)) for v in [lam, *om])
    else:
        rec["vanishing"] = True
    return rec


# --- lemmas on covers -----------------------------------------------------

def _cover_hypotheses(mu: Vec, k: int, z: int) -> Optional[CoverData]:
    ell = len(mu)
    if not 1 <= z < ell:
        return None
    if not all(mu[x - 1] >= mu[x] for x in range(1, ell) if x != z):
        return None
    psi = delta_k(mu, k)
    if psi.top(z) <= psi.top(z + 1):
        return None
    return h_value(mu, k, z)


def cover_sum_above(mu: Sequence[int], k: int, z: int) -> Optional[dict]:
    """g_mu = g_{cover_z(mu)} + sum_{i<h} g_{cover_{z,i}(mu) - e_{z+i+1}} (z past the bottom)."""
    mu = tuple(mu)
    if z <= delta_k(mu, k).bottom():
        return None
    data = _cover_hypotheses(mu, k, z)
    if data is None:
        return None
    h = data.h
    terms = [(1, cover(mu, k, z, h), Multiset())]
    terms += [(1, add_epsilon(cover(mu, k, z, i), z + i + 1, -1), Multiset()) for i in range(h)]
    return _record(g_lowered(mu, k), evaluate_gterms(terms, k), mu=mu, k=k, z=z, h=h)


def cover_sum_below(mu: Sequence[int], k: int, z: int) -> Optional[dict]:
    """g_mu = (1 - L_{d+h}) g_cover + sum_{i<h} (1 - L_{d+i+1}) g_{cover_{z,i} - e_{z+i+1}} + L_d g_mu.

    d = down(z+1) in Delta^k(mu); z must be at most the bottom.
    """
    mu = tuple(mu)
    psi = delta_k(mu, k)
    if not 1 <= z <= psi.bottom():
        return None
    data = _cover_hypotheses(mu, k, z)
    if data is None:
        return None
    d = psi.down(z + 1)
    if d is None:
        return None
    h, ell = data.h, len(mu)
    terms = _one_minus_L(d + h, ell, 1, cover(mu, k, z, h))
    for i in range(h):
        terms += _one_minus_L(d + i + 1, ell, 1, add_epsilon(cover(mu, k, z, i), z + i + 1, -1))
    terms.append((1, mu, _L(d)))
    return _record(g_lowered(mu, k), evaluate_gterms(terms, k), mu=mu, k=k, z=z, h=h)


def cover_tail(mu: Sequence[int], k: int, z: int) -> Optional[dict]:
    """The extra step when cover_z(mu) has a new ascent at z+h.

    Above the bottom: g_cover = g_{cover - e_{z+h+1}} or g_cover = 0.
    At or below it: g_cover = 0 or
    g_cover = (1 - L_{d+h+1}) g_{cover - e_{z+h+1}} + L_{d+h} g_cover.
    When mu_{up(y+h)} = mu_{up(y+h+1)} the vanishing branch is forced.
    Reports which branch holds.
    """
    mu = tuple(mu)
    data = _cover_hypotheses(mu, k, z)
    if data is None:
        return None
    h, ell = data.h, len(mu)
    cov = cover(mu, k, z, h)
    if z + h + 1 > ell or cov[z + h - 1] + 1 != cov[z + h]:
        return None
    psi = delta_k(mu, k)
    below = z <= psi.bottom()
    g_cov = g_lowered(cov, k)
    nxt = add_epsilon(cov, z + h + 1, -1)
    if below:
        d = psi.down(z + 1)
        if d is None:
            return None
        alt = evaluate_gterms(_one_minus_L(d + h + 1, ell, 1, nxt) + [(1, cov, _L(d + h))], k)
    else:
        alt = g_lowered(nxt, k)
    u1 = psi.up(data.y + h) if h else None
    u2 = psi.up(data.y + h + 1) if data.y + h + 1 <= ell else None
    forced = h > 0 and u1 is not None and u2 is not None and mu[u1 - 1] == mu[u2 - 1]
    branch = "zero" if not g_cov else ("shift" if g_cov == alt else None)
    ok = branch is not None and (not forced or branch == "zero")
    return {"lhs": g_cov, "rhs": HExpansion.zero() if branch == "zero" else alt, "equal": ok,
            "instance": {"mu": mu, "k": k, "z": z, "h": h, "branch": branch, "forced_zero": forced,
                         "below_bottom": below}}


def down_shift(lam: Sequence[int], mu: Sequence[int], k: int, z: int, i: int) -> Optional[dict]:
    """down_lam(z) + i = down_mu(z+i) under the run/ascent hypotheses; None if they fail."""
    lam, mu = tuple(lam), tuple(mu)
    ell = len(lam)
    pl = delta_k(lam, k)
    bl = pl.bottom()
    if not (1 <= z <= bl - 1 and 1 <= i <= ell - z - 1 and z + i <= bl):
        return None
    if not (all(lam[z + t - 1] == lam[z - 1] for t in range(i + 1)) and lam[z + i - 1] >= lam[z + i]):
        return None
    if not (mu[z + i - 2] + 1 == mu[z + i - 1] >= mu[z + i]):
        return None
    if mu[z + i - 2] + 1 != lam[z + i - 2]:
        return None
    left = pl.down(z) + i
    right = delta_k(mu, k).down(z + i)
    return {"lhs": left, "rhs": right, "equal": left == right,
            "instance": {"lam": lam, "mu": mu, "k": k, "z": z, "i": i}}


def is_omega_subset_of_partitions(lam: Sequence[int], k: int, z: int) -> bool:
    return all(is_bounded_partition(nu, k) for nu in omega(lam, k, z))
